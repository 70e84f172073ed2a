// SPDX-License-Identifier: Apache-2.0
#include "setfam/hardness.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "setfam/violations.hpp"

namespace setfam {

// TalagrandDnf

TalagrandDnf::TalagrandDnf(int arity, int term_size, std::vector<std::uint64_t> terms)
    : arity_(arity), term_size_(term_size), terms_(std::move(terms)) {
  if (arity < 0 || arity > kMaxPointArity) throw InvalidArgument("DNF arity outside [0, 63]");
  for (std::uint64_t t : terms_)
    if ((t & ~arity_mask(arity)) != 0) throw InvalidArgument("DNF term uses a coordinate beyond the arity");
}

TalagrandDnf TalagrandDnf::sample(int arity, std::span<const int> coordinates, int term_size,
                                  std::uint64_t count, CounterRng& rng) {
  if (coordinates.empty()) throw InvalidArgument("Talagrand DNF needs at least one coordinate");
  if (count > kMaxTalagrandTerms) throw ResourceLimit("Talagrand DNF term count exceeds cap");
  std::vector<std::uint64_t> terms;
  terms.reserve(count);
  for (std::uint64_t l = 0; l < count; ++l) {
    std::uint64_t mask = 0;
    for (int k = 0; k < term_size; ++k)
      mask |= std::uint64_t{1} << coordinates[rng.below(coordinates.size())];
    terms.push_back(mask);
  }
  return TalagrandDnf(arity, term_size, std::move(terms));
}

bool TalagrandDnf::eval(std::uint64_t x) const noexcept {
  for (std::uint64_t t : terms_)
    if ((t & ~x) == 0) return true;
  return false;
}

int TalagrandDnf::count_satisfied(std::uint64_t x, int cap) const noexcept {
  int count = 0;
  for (std::uint64_t t : terms_)
    if ((t & ~x) == 0 && ++count >= cap) break;
  return count;
}

int TalagrandDnf::unique_term(std::uint64_t x) const noexcept {
  int found = -1;
  for (std::size_t l = 0; l < terms_.size(); ++l) {
    if ((terms_[l] & ~x) != 0) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(l);
  }
  return found;
}

std::vector<int> TalagrandDnf::satisfied(std::uint64_t x) const {
  std::vector<int> out;
  for (std::size_t l = 0; l < terms_.size(); ++l)
    if ((terms_[l] & ~x) == 0) out.push_back(static_cast<int>(l));
  return out;
}

int talagrand_term_size(int m, double eps) {
  if (m < 1) throw InvalidArgument("Talagrand DNF needs m >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("Talagrand eps must lie in (0, 1]");
  const long size = std::lround(std::sqrt(static_cast<double>(m)) / eps);
  if (size < 1) throw InvalidArgument("Talagrand term size rounds to 0");
  if (size > 4096) throw InvalidArgument("Talagrand term size is unreasonably large");
  return static_cast<int>(size);
}

std::uint64_t talagrand_term_count(int m, double eps) {
  if (m < 1) throw InvalidArgument("Talagrand DNF needs m >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("Talagrand eps must lie in (0, 1]");
  const double exponent = std::sqrt(static_cast<double>(m)) / eps;
  if (exponent > 40.0)
    throw ResourceLimit("Talagrand DNF would have 0.1 * 2^" + std::to_string(exponent) + " terms");
  const double count = std::floor(0.1 * std::exp2(exponent));
  if (count < 1.0)
    throw InvalidArgument("Talagrand term count 0.1 * 2^(sqrt(" + std::to_string(m) + ")/eps) rounds to 0");
  if (count > static_cast<double>(kMaxTalagrandTerms))
    throw ResourceLimit("Talagrand DNF term count exceeds cap");
  return static_cast<std::uint64_t>(count);
}

TalagrandDnf sample_talagrand(int n, double eps, CounterRng& rng) {
  if (n < 1 || n > kMaxPointArity) throw InvalidArgument("Talagrand arity must lie in [1, 63]");
  const int size = talagrand_term_size(n, eps);
  const std::uint64_t count = talagrand_term_count(n, eps);
  std::vector<int> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i)] = i;
  return TalagrandDnf::sample(n, coords, size, count, rng);
}

// Instance kinds

const char* to_string(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::talagrand: return "talagrand";
    case InstanceKind::int_yes: return "int-yes";
    case InstanceKind::int_no: return "int-no";
    case InstanceKind::int_one_sided_no: return "int-one-sided-no";
    case InstanceKind::uc_yes: return "uc-yes";
    case InstanceKind::uc_no: return "uc-no";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(const std::string& text) {
  for (InstanceKind k : {InstanceKind::talagrand, InstanceKind::int_yes, InstanceKind::int_no,
                         InstanceKind::int_one_sided_no, InstanceKind::uc_yes, InstanceKind::uc_no})
    if (text == to_string(k)) return k;
  throw InvalidArgument("unknown instance kind '" + text + "'");
}

namespace {

std::vector<int> positions(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

// IntersectInstance

IntersectInstance::IntersectInstance(InstanceKind kind, int n, double eps, int a,
                                     std::uint64_t action, TalagrandDnf dnf,
                                     std::vector<std::uint8_t> b)
    : kind_(kind), n_(n), eps_(eps), a_(a), action_(action),
      control_(arity_mask(n) & ~action), dnf_(std::move(dnf)), b_(std::move(b)) {
  if (kind == InstanceKind::int_one_sided_no) k_squared_ = n * std::log(1.0 / eps);
}

IntersectInstance IntersectInstance::sample(InstanceKind kind, int n, double eps, CounterRng& rng) {
  if (kind != InstanceKind::int_yes && kind != InstanceKind::int_no &&
      kind != InstanceKind::int_one_sided_no)
    throw InvalidArgument("not an intersectingness instance kind");
  if (n < 2 || n > kMaxPointArity - 2)
    throw InvalidArgument("intersect instances need 2 <= n <= 61, got " + std::to_string(n));
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");

  if (kind == InstanceKind::int_one_sided_no) {
    const long a = std::lround(n / 100.0);
    if (a < 1) throw InvalidArgument("one-sided instance: a = round(n/100) is 0 for n = " + std::to_string(n));
    const std::uint64_t action = random_subset_mask(n, static_cast<int>(a), rng);
    return IntersectInstance(kind, n, eps, static_cast<int>(a), action, TalagrandDnf(n, 0, {}), {});
  }

  const long a = std::lround(std::sqrt(static_cast<double>(n)) / eps);
  if (a < 1) throw InvalidArgument("action size round(sqrt(n)/eps) is 0");
  if (a >= n)
    throw InvalidArgument("action size round(sqrt(n)/eps) = " + std::to_string(a) +
                          " leaves no control variables for n = " + std::to_string(n));
  const int m = n - static_cast<int>(a);
  const int size = talagrand_term_size(m, eps);
  const std::uint64_t count = talagrand_term_count(m, eps);
  const std::uint64_t action = random_subset_mask(n, static_cast<int>(a), rng);
  const std::vector<int> control = positions(arity_mask(n) & ~action);
  TalagrandDnf dnf = TalagrandDnf::sample(n, control, size, count, rng);
  std::vector<std::uint8_t> b(count);
  for (auto& bit : b) bit = rng.coin() ? 1 : 0;
  return IntersectInstance(kind, n, eps, static_cast<int>(a), action, std::move(dnf), std::move(b));
}

IntersectInstance IntersectInstance::build(const InstanceSpec& spec) {
  CounterRng rng(spec.seed);
  return sample(spec.kind, spec.n, spec.eps, rng);
}

bool IntersectInstance::top(int w) const noexcept {
  const long d = 2L * w - a_;
  return d > 0 && d * d > 4L * a_;
}

bool IntersectInstance::bottom(int w) const noexcept {
  const long d = static_cast<long>(a_) - 2L * w;
  return d > 0 && d * d > 4L * a_;
}

bool IntersectInstance::action_value(char sign, int bit, int w) const noexcept {
  if (sign == '+') return bit != 0 && (top(w) || bottom(w));
  return bit == 0 ? top(w) : bottom(w);
}

bool IntersectInstance::one_sided_value(std::uint64_t x) const noexcept {
  const double d = 2.0 * std::popcount(x) - n_;
  if (d * d > 400.0 * k_squared_) return false;
  const double e = static_cast<double>(n_) - 200.0 * std::popcount(x & action_);
  return e > 0 && e * e > 40000.0 * k_squared_;
}

std::uint64_t IntersectInstance::one_sided_half_ones() const {
  if (kind_ != InstanceKind::int_one_sided_no) throw InvalidArgument("not a one-sided instance");
  const int c = n_ - a_;
  std::uint64_t total = 0;
  for (int i = 0; i <= a_; ++i) {
    const double e = static_cast<double>(n_) - 200.0 * i;
    if (!(e > 0 && e * e > 40000.0 * k_squared_)) continue;
    for (int j = 0; j <= c; ++j) {
      const double d = 2.0 * (i + j) - n_;
      if (d * d <= 400.0 * k_squared_) total += binomial(a_, i) * binomial(c, j);
    }
  }
  return total;
}

bool IntersectInstance::evaluate(std::uint64_t bits) const {
  const bool y1 = (bits >> n_) & 1U;
  const bool y2 = (bits >> (n_ + 1)) & 1U;
  if (y1 == y2) return false;
  const std::uint64_t x = bits & arity_mask(n_);
  if (kind_ == InstanceKind::int_one_sided_no) return one_sided_value(x);

  // (x, 0, 1) reads S_T(x_C); (x, 1, 0) reads S_T of the complemented controls.
  const std::uint64_t controls = y2 ? x : (~x & control_);
  const int l = dnf_.unique_term(controls);
  if (l < 0) return false;
  const int b = b_[static_cast<std::size_t>(l)];
  const int w = std::popcount(x & action_);
  if (kind_ == InstanceKind::int_no) return action_value('-', b, w);
  return action_value('+', y2 ? b : 1 - b, w);
}

// UcInstance

int uc_action_size(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const long a = std::lround(std::log2(1.0 / eps));
  if (a < 1 || std::fabs(std::exp2(-static_cast<double>(a)) - eps) > 1e-12 * eps)
    throw InvalidArgument("union-closed instances need eps = 2^-a for an integer a >= 1");
  return static_cast<int>(a);
}

UcInstance::UcInstance(InstanceKind kind, int n, double eps, int a, std::uint64_t action,
                       TalagrandDnf dnf, std::vector<std::uint64_t> strings,
                       std::vector<std::uint8_t> b)
    : kind_(kind), n_(n), eps_(eps), a_(a), action_(action), control_(arity_mask(n) & ~action),
      dnf_(std::move(dnf)), strings_(std::move(strings)), b_(std::move(b)) {}

UcInstance UcInstance::sample(InstanceKind kind, int n, double eps, CounterRng& rng) {
  if (kind != InstanceKind::uc_yes && kind != InstanceKind::uc_no)
    throw InvalidArgument("not a union-closedness instance kind");
  if (n < 1 || n > kMaxPointArity) throw InvalidArgument("instance arity must lie in [1, 63]");
  const int a = uc_action_size(eps);
  if (n - a < 4) throw InvalidArgument("union-closed instances need n - a >= 4");
  const int c = n - a;
  const int size = talagrand_term_size(c, 1.0);
  const std::uint64_t count = talagrand_term_count(c, 1.0);
  const std::uint64_t action = random_subset_mask(n, a, rng);
  const std::vector<int> control = positions(arity_mask(n) & ~action);
  TalagrandDnf dnf = TalagrandDnf::sample(n, control, size, count, rng);
  std::vector<std::uint64_t> strings(count);
  std::vector<std::uint8_t> b(count, 1);
  for (std::uint64_t l = 0; l < count; ++l) {
    strings[l] = scatter_bits(rng.below(std::uint64_t{1} << a), action);
    if (kind == InstanceKind::uc_no) b[l] = rng.coin() ? 1 : 0;
  }
  return UcInstance(kind, n, eps, a, action, std::move(dnf), std::move(strings), std::move(b));
}

UcInstance UcInstance::build(const InstanceSpec& spec) {
  CounterRng rng(spec.seed);
  return sample(spec.kind, spec.n, spec.eps, rng);
}

bool UcInstance::evaluate(std::uint64_t x) const {
  const int hits = dnf_.count_satisfied(x, 2);
  if (hits >= 2) return true;
  if (hits == 0) return false;
  const auto l = static_cast<std::size_t>(dnf_.unique_term(x));
  const std::uint64_t xa = x & action_;
  if (kind_ == InstanceKind::uc_yes) return xa == strings_[l];
  return b_[l] != 0 && (xa == strings_[l] || xa == (action_ ^ strings_[l]));
}

// Violation counting

namespace {

const std::vector<std::pair<Point, Point>>& cached_level_matching(int a, int w) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::pair<Point, Point>>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({a, w});
  if (it == cache.end()) it = cache.emplace(std::make_pair(a, w), level_matching(a, w)).first;
  return it->second;
}

template <class Visit>
void for_each_submask(std::uint64_t mask, Visit&& visit) {
  std::uint64_t s = 0;
  do {
    visit(s);
    s = (s - mask) & mask;
  } while (s != 0);
}

}  // namespace

IntViolationCount count_int_no_violations(const IntersectInstance& inst) {
  if (inst.arity() > 20) throw ResourceLimit("count_int_no_violations requires arity <= 20");
  IntViolationCount out;
  if (inst.kind() == InstanceKind::int_one_sided_no) return out;
  const int n = inst.base_arity();
  const int a = inst.action_size();
  const std::uint64_t action = inst.action_mask();
  const std::uint64_t control = inst.control_mask();
  const std::uint64_t tag01 = std::uint64_t{1} << (n + 1);
  const std::uint64_t tag10 = std::uint64_t{1} << n;
  for_each_submask(control, [&](std::uint64_t xc) {
    const int l = inst.dnf().unique_term(xc);
    if (l < 0 || inst.bits()[static_cast<std::size_t>(l)] != 1) return;
    ++out.active_controls;
    const std::uint64_t xc_bar = control & ~xc;
    for (int w = 0; 2 * w < a; ++w) {
      if (!inst.bottom(w)) continue;
      for (const auto& [p, q] : cached_level_matching(a, w)) {
        const std::uint64_t pa = scatter_bits(p.bits(), action);
        const std::uint64_t ya = action & ~scatter_bits(q.bits(), action);
        const Point u(xc | pa | tag01, n + 2);
        const Point v(xc_bar | ya | tag10, n + 2);
        if (is_i_violation(inst, u, v)) ++out.pairs;
      }
    }
  });
  return out;
}

UcViolationCount count_uc_no_violations(const UcInstance& inst) {
  if (inst.arity() > 20) throw ResourceLimit("count_uc_no_violations requires arity <= 20");
  UcViolationCount out;
  const std::uint64_t action = inst.action_mask();
  for (std::uint64_t r : inst.strings()) {
    if (r == 0 || r == action)
      ++out.bad_strings;
    else
      ++out.good_strings;
  }
  if (inst.kind() != InstanceKind::uc_no) return out;
  const int n = inst.arity();
  for_each_submask(inst.control_mask(), [&](std::uint64_t xc) {
    const int l = inst.dnf().unique_term(xc);
    if (l < 0) return;
    const auto idx = static_cast<std::size_t>(l);
    const std::uint64_t r = inst.strings()[idx];
    if (inst.bits()[idx] != 1 || r == 0 || r == action) return;
    if (find_uc_violation(inst, Point(xc | r, n), Point(xc | (action ^ r), n))) ++out.triples;
  });
  return out;
}

// Monte Carlo estimators

std::pair<int, int> unique_sat_window(int n, double eps) {
  if (n < 1) throw InvalidArgument("arity must be positive");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
  const int lo = (n + 1) / 2;
  const int hi = static_cast<int>(std::floor(n / 2.0 + 0.05 * eps * std::sqrt(static_cast<double>(n))));
  return {lo, hi < lo ? lo : hi};
}

UniqueSatReport unique_sat_probability(int n, double eps, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("unique_sat_probability needs trials >= 1");
  if (n > kMaxPointArity) throw InvalidArgument("arity must lie in [1, 63]");
  const auto [lo, hi] = unique_sat_window(n, eps);
  // Validate parameters before the loop.
  (void)talagrand_term_count(n, eps);
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    const TalagrandDnf dnf = sample_talagrand(n, eps, rng);
    for (int w = lo; w <= hi; ++w)
      if (dnf.unique_term(arity_mask(w)) >= 0) ++hits[static_cast<std::size_t>(w - lo)];
  }
  UniqueSatReport report;
  std::uint64_t pooled_hits = 0;
  for (int w = lo; w <= hi; ++w) {
    const std::uint64_t h = hits[static_cast<std::size_t>(w - lo)];
    pooled_hits += h;
    report.per_weight.push_back(WeightEstimate{w, h, trials, static_cast<double>(h) / trials,
                                               stats::wilson(h, trials, stats::kZ99)});
  }
  const std::uint64_t pooled_trials = trials * report.per_weight.size();
  report.pooled = WeightEstimate{0, pooled_hits, pooled_trials,
                                 static_cast<double>(pooled_hits) / pooled_trials,
                                 stats::wilson(pooled_hits, pooled_trials, stats::kZ99)};
  return report;
}

BadEventReport estimate_bad_probability(BadEventKind kind, std::span<const Point> queries, int n,
                                        double eps, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("estimate_bad_probability needs trials >= 1");
  if (queries.empty()) throw InvalidArgument("the query set must be nonempty");
  for (const Point& q : queries)
    if (q.arity() != n) throw InvalidArgument("query points must have arity n");

  const std::size_t q = queries.size();
  std::vector<int> unique(q);
  std::vector<std::uint64_t> xa(q);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    bool bad = false;
    if (kind == BadEventKind::intersect) {
      const IntersectInstance inst = IntersectInstance::sample(InstanceKind::int_yes, n, eps, rng);
      for (std::size_t i = 0; i < q; ++i) {
        unique[i] = inst.dnf().unique_term(queries[i].bits() & inst.control_mask());
        xa[i] = static_cast<std::uint64_t>(std::popcount(queries[i].bits() & inst.action_mask()));
      }
      for (std::size_t i = 0; i < q && !bad; ++i) {
        if (unique[i] < 0 || !inst.bottom(static_cast<int>(xa[i]))) continue;
        for (std::size_t j = 0; j < q; ++j)
          if (j != i && unique[j] == unique[i] && inst.top(static_cast<int>(xa[j]))) {
            bad = true;
            break;
          }
      }
    } else {
      const UcInstance inst = UcInstance::sample(InstanceKind::uc_yes, n, eps, rng);
      const std::uint64_t action = inst.action_mask();
      for (std::size_t i = 0; i < q; ++i) {
        unique[i] = inst.dnf().unique_term(queries[i].bits() & inst.control_mask());
        xa[i] = queries[i].bits() & action;
      }
      for (std::size_t i = 0; i < q && !bad; ++i) {
        if (unique[i] < 0) continue;
        for (std::size_t j = i + 1; j < q; ++j)
          if (unique[j] == unique[i] && xa[j] == (action ^ xa[i])) {
            bad = true;
            break;
          }
      }
    }
    if (bad) ++hits;
  }
  BadEventReport report;
  report.hits = hits;
  report.trials = trials;
  report.estimate = static_cast<double>(hits) / trials;
  report.ci = stats::wilson(hits, trials, stats::kZ99);
  report.sigma = std::sqrt(report.estimate * (1.0 - report.estimate) / trials);
  return report;
}

double bad_event_bound(int n, double eps, std::uint64_t q) {
  const double qd = static_cast<double>(q);
  return qd * qd * std::exp2(-0.25 * std::pow(n, 0.25) / std::sqrt(eps));
}

}  // namespace setfam
