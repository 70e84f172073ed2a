// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "setfam/boolfn.hpp"
#include "setfam/stats.hpp"

namespace setfam {

/// Talagrand random DNF: L monotone terms, each the set of term_size
/// coordinates drawn with replacement. Terms are stored as bit masks over the
/// host arity, so a DNF over a coordinate subset C is evaluated on full points.
class TalagrandDnf {
 public:
  TalagrandDnf(int arity, int term_size, std::vector<std::uint64_t> terms);

  /// Draws a DNF with `count` terms over the given coordinates (0-based bit
  /// positions of a host of arity `arity`).
  static TalagrandDnf sample(int arity, std::span<const int> coordinates, int term_size,
                             std::uint64_t count, CounterRng& rng);

  int arity() const noexcept { return arity_; }
  int term_size() const noexcept { return term_size_; }
  std::uint64_t size() const noexcept { return terms_.size(); }
  const std::vector<std::uint64_t>& terms() const noexcept { return terms_; }

  bool eval(std::uint64_t x) const noexcept;
  /// |S_T(x)| capped at `cap`.
  int count_satisfied(std::uint64_t x, int cap = 2) const noexcept;
  /// The index l if S_T(x) = {l}, otherwise -1.
  int unique_term(std::uint64_t x) const noexcept;
  std::vector<int> satisfied(std::uint64_t x) const;

 private:
  int arity_;
  int term_size_;
  std::vector<std::uint64_t> terms_;
};

/// Largest accepted number of DNF terms.
inline constexpr std::uint64_t kMaxTalagrandTerms = std::uint64_t{1} << 24;

/// round(sqrt(m) / eps); throws if it rounds to 0.
int talagrand_term_size(int m, double eps);
/// floor(0.1 * 2^(sqrt(m) / eps)); throws if it rounds to 0 or exceeds
/// kMaxTalagrandTerms.
std::uint64_t talagrand_term_count(int m, double eps);

/// Talagrand(n, eps) on all n coordinates.
TalagrandDnf sample_talagrand(int n, double eps, CounterRng& rng);

enum class InstanceKind { talagrand, int_yes, int_no, int_one_sided_no, uc_yes, uc_no };

const char* to_string(InstanceKind kind) noexcept;
InstanceKind parse_instance_kind(const std::string& text);

/// Everything needed to regenerate an instance bit for bit.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::int_yes;
  int n = 0;
  double eps = 0.5;
  std::uint64_t seed = 0;
};

/// Hard instances for intersectingness over n + 2 variables. Bit n is the
/// (n+1)-th coordinate and bit n+1 the (n+2)-th; f(x, 0, 0) = f(x, 1, 1) = 0.
class IntersectInstance final : public BooleanFunction {
 public:
  /// kind is int_yes, int_no or int_one_sided_no.
  static IntersectInstance build(const InstanceSpec& spec);
  /// Same randomness as build(), drawn from an explicit generator.
  static IntersectInstance sample(InstanceKind kind, int n, double eps, CounterRng& rng);

  int arity() const noexcept override { return n_ + 2; }
  InstanceKind kind() const noexcept { return kind_; }
  int base_arity() const noexcept { return n_; }
  double eps() const noexcept { return eps_; }
  int action_size() const noexcept { return a_; }
  std::uint64_t action_mask() const noexcept { return action_; }
  std::uint64_t control_mask() const noexcept { return control_; }
  /// Empty for the one-sided kind.
  const TalagrandDnf& dnf() const noexcept { return dnf_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return b_; }

  /// |x_A| > a/2 + sqrt(a), |x_A| < a/2 - sqrt(a); exact integer comparisons.
  bool top(int action_weight) const noexcept;
  bool bottom(int action_weight) const noexcept;

  /// g^(sign, bit) on an action weight; sign is '+' or '-'.
  bool action_value(char sign, int bit, int action_weight) const noexcept;

  /// Number of 1-inputs (x, 0, 1) of the one-sided kind; the (x, 1, 0) half
  /// has the same count.
  std::uint64_t one_sided_half_ones() const;

 protected:
  bool evaluate(std::uint64_t bits) const override;

 private:
  IntersectInstance(InstanceKind kind, int n, double eps, int a, std::uint64_t action,
                    TalagrandDnf dnf, std::vector<std::uint8_t> b);
  bool one_sided_value(std::uint64_t x) const noexcept;

  InstanceKind kind_;
  int n_;
  double eps_;
  int a_;
  std::uint64_t action_;
  std::uint64_t control_;
  TalagrandDnf dnf_;
  std::vector<std::uint8_t> b_;
  double k_squared_ = 0.0;  // one-sided: K^2 = n ln(1/eps)
};

/// Hard instances for union-closedness over n variables, eps = 2^-a.
class UcInstance final : public BooleanFunction {
 public:
  /// kind is uc_yes or uc_no.
  static UcInstance build(const InstanceSpec& spec);
  static UcInstance sample(InstanceKind kind, int n, double eps, CounterRng& rng);

  int arity() const noexcept override { return n_; }
  InstanceKind kind() const noexcept { return kind_; }
  double eps() const noexcept { return eps_; }
  int action_size() const noexcept { return a_; }
  std::uint64_t action_mask() const noexcept { return action_; }
  std::uint64_t control_mask() const noexcept { return control_; }
  const TalagrandDnf& dnf() const noexcept { return dnf_; }
  /// s_l (yes) or r_l (no) as masks inside action_mask().
  const std::vector<std::uint64_t>& strings() const noexcept { return strings_; }
  /// b_l; all ones for the yes kind.
  const std::vector<std::uint8_t>& bits() const noexcept { return b_; }

 protected:
  bool evaluate(std::uint64_t bits) const override;

 private:
  UcInstance(InstanceKind kind, int n, double eps, int a, std::uint64_t action, TalagrandDnf dnf,
             std::vector<std::uint64_t> strings, std::vector<std::uint8_t> b);

  InstanceKind kind_;
  int n_;
  double eps_;
  int a_;
  std::uint64_t action_;
  std::uint64_t control_;
  TalagrandDnf dnf_;
  std::vector<std::uint64_t> strings_;
  std::vector<std::uint8_t> b_;
};

/// a with eps = 2^-a; throws unless eps is a power of 1/2 with a >= 1.
int uc_action_size(double eps);

struct IntViolationCount {
  /// Point-disjoint I-violating pairs of the level-matching form.
  std::uint64_t pairs = 0;
  /// Control settings with a unique term l and b_l = 1.
  std::uint64_t active_controls = 0;
};

/// Enumerates control settings of an intersect instance (arity <= 20) and
/// counts the pairs (x_C, p, 0, 1), (complement(x_C), A \ q, 1, 0) over
/// level-matched p <= q with bottom weight |p|. Each pair is re-verified.
IntViolationCount count_int_no_violations(const IntersectInstance& inst);

struct UcViolationCount {
  /// Point-disjoint violating triples ((x_C, r), (x_C, r̄), (x_C, 1^a)).
  std::uint64_t triples = 0;
  /// Terms whose r_l is not 0^a or 1^a, and those whose r_l is.
  std::uint64_t good_strings = 0;
  std::uint64_t bad_strings = 0;
};

/// Requires arity <= 20. Each triple is re-verified; zero for the yes kind.
UcViolationCount count_uc_no_violations(const UcInstance& inst);

struct WeightEstimate {
  int weight = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  stats::Interval ci;
};

struct UniqueSatReport {
  std::vector<WeightEstimate> per_weight;
  WeightEstimate pooled;  // weight field unused
};

/// Weights ceil(n/2) .. max(ceil(n/2), floor(n/2 + 0.05 eps sqrt(n))).
std::pair<int, int> unique_sat_window(int n, double eps);

/// For each weight w in the window, x = 1^w 0^(n-w) and trial t draws
/// T ~ Talagrand(n, eps) from CounterRng(seed, t). Wilson 99% intervals.
UniqueSatReport unique_sat_probability(int n, double eps, std::uint64_t trials,
                                       std::uint64_t seed);

enum class BadEventKind { intersect, union_closed };

struct BadEventReport {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  stats::Interval ci;  // Wilson 99%
  double sigma = 0.0;  // binomial standard error of the estimate
};

/// Trial t draws (A, T) from CounterRng(seed, t) with the instance
/// parameters of the kind and checks the Bad predicate on the base points Q
/// (each of arity n).
BadEventReport estimate_bad_probability(BadEventKind kind, std::span<const Point> queries, int n,
                                        double eps, std::uint64_t trials, std::uint64_t seed);

/// q^2 * 2^(-0.25 n^(1/4) / sqrt(eps)).
double bad_event_bound(int n, double eps, std::uint64_t q);

}  // namespace setfam
