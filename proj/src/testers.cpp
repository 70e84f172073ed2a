// SPDX-License-Identifier: Apache-2.0
#include "setfam/testers.hpp"

#include <cmath>

namespace setfam {

const char* to_string(Verdict verdict) noexcept {
  return verdict == Verdict::accept ? "accept" : "reject";
}

namespace {

void validate(const BooleanFunction& f, const TesterConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw InvalidArgument("eps must lie in (0, 1), got " + std::to_string(cfg.eps));
  if (f.arity() < 1 || f.arity() > kMaxPointArity)
    throw InvalidArgument("tester arity must lie in [1, 63]");
  if (!(cfg.tau_constant >= 0.0)) throw InvalidArgument("tau constant must be non-negative");
}

std::uint64_t saturating_ceil(double v) {
  constexpr double kMax = 9223372036854775808.0;  // 2^63
  if (!(v < kMax)) return std::uint64_t{1} << 63;
  // Absorb the rounding error of 100 / eps for eps like 0.1.
  return static_cast<std::uint64_t>(std::ceil(v * (1.0 - 1e-12)));
}

/// Shared driver: `round(rng, counter)` returns a certificate or nothing.
template <class Round>
TesterReport drive(const BooleanFunction& f, const TesterConfig& cfg, std::uint64_t planned,
                   Round&& round) {
  QueryCounter counter(f);
  TesterReport report;
  report.seed = cfg.seed;
  report.iterations_planned = cfg.max_iterations.value_or(planned);
  for (std::uint64_t i = 0; i < report.iterations_planned; ++i) {
    CounterRng rng(cfg.seed, i);
    std::optional<Certificate> found = round(rng, counter);
    ++report.iterations_run;
    if (!found) continue;
    ++report.successes;
    if (!report.certificate) {
      report.verdict = Verdict::reject;
      report.certificate = std::move(found);
    }
    if (!cfg.run_all_rounds) break;
  }
  report.queries = counter.count();
  return report;
}

}  // namespace

std::uint64_t default_iterations(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InvalidArgument("eps must lie in (0, 1), got " + std::to_string(eps));
  return saturating_ceil(100.0 / eps);
}

double triple_tau(int n, double eps, double tau_constant) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InvalidArgument("eps must lie in (0, 1), got " + std::to_string(eps));
  if (n < 1) throw InvalidArgument("arity must be positive");
  const double exponent = tau_constant * std::sqrt(n * std::log(n / eps)) * std::log2(n);
  return eps * std::exp2(-exponent);
}

std::uint64_t default_rounds(int n, double eps, double tau_constant) {
  return saturating_ceil(100.0 / triple_tau(n, eps, tau_constant));
}

TesterReport uc_tester(const BooleanFunction& f, const TesterConfig& cfg) {
  validate(f, cfg);
  const int n = f.arity();
  const Band band = mid_band(n, cfg.eps);
  return drive(f, cfg, default_iterations(cfg.eps),
               [&](CounterRng& rng, const BooleanFunction& g) -> std::optional<Certificate> {
                 const Point x = sample_band_uniform(n, band, rng);
                 if (auto t = witness_check_uc(g, x, band, cfg.enumeration_cap)) return *t;
                 return std::nullopt;
               });
}

TesterReport int_tester(const BooleanFunction& f, const TesterConfig& cfg) {
  validate(f, cfg);
  const int n = f.arity();
  const Band band = mid_band(n, cfg.eps);
  return drive(f, cfg, default_iterations(cfg.eps),
               [&](CounterRng& rng, const BooleanFunction& g) -> std::optional<Certificate> {
                 const Point x = sample_band_uniform(n, band, rng);
                 if (auto p = witness_check_int(g, x, band, cfg.enumeration_cap)) return *p;
                 return std::nullopt;
               });
}

TesterReport uc_triple_tester(const BooleanFunction& f, const TesterConfig& cfg) {
  validate(f, cfg);
  const int n = f.arity();
  const Band band = mid_band(n, cfg.eps, BandWidth::widened);
  const std::uint64_t planned = cfg.max_iterations ? 0 : default_rounds(n, cfg.eps, cfg.tau_constant);
  return drive(f, cfg, planned,
               [&](CounterRng& rng, const BooleanFunction& g) -> std::optional<Certificate> {
                 const Point x = sample_band_uniform(n, band, rng);
                 const Point y1 = sample_down_band_uniform(x, band, rng);
                 const Point y2 = sample_down_band_uniform(x, band, rng);
                 const bool fx = g.eval(x);
                 const bool f1 = g.eval(y1);
                 const bool f2 = g.eval(y2);
                 if (!fx && f1 && f2 && (y1 | y2) == x) return TripleCertificate{y1, y2, x};
                 return std::nullopt;
               });
}

TesterReport int_pair_tester(const BooleanFunction& f, const TesterConfig& cfg) {
  validate(f, cfg);
  const int n = f.arity();
  const Band band = mid_band(n, cfg.eps, BandWidth::widened);
  const std::uint64_t planned = cfg.max_iterations ? 0 : default_rounds(n, cfg.eps, cfg.tau_constant);
  return drive(f, cfg, planned,
               [&](CounterRng& rng, const BooleanFunction& g) -> std::optional<Certificate> {
                 const Point x = sample_band_uniform(n, band, rng);
                 const Point y = sample_down_band_uniform(x.complement(), band, rng);
                 const bool fx = g.eval(x);
                 const bool fy = g.eval(y);
                 if (fx && fy) return IViolatingPair{y, x};
                 return std::nullopt;
               });
}

}  // namespace setfam
