// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setfam/errors.hpp"
#include "setfam/rng.hpp"

namespace setfam {

inline constexpr int kMaxPointArity = 63;
inline constexpr int kMaxTableArity = 24;
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 28;

/// A point of {0,1}^n. Coordinate i of [n] is bit i-1 of bits().
class Point {
 public:
  Point() = default;
  Point(std::uint64_t bits, int arity);

  static Point zeros(int arity) { return Point(0, arity); }
  static Point ones(int arity);
  /// Parses "x_1 x_2 ... x_n" written without separators, e.g. "0110".
  static Point parse(std::string_view text);

  std::uint64_t bits() const noexcept { return bits_; }
  int arity() const noexcept { return arity_; }
  int weight() const noexcept { return weight_; }
  bool coordinate(int i) const noexcept { return (bits_ >> (i - 1)) & 1U; }

  Point complement() const;
  /// Coordinatewise x <= y.
  bool below(const Point& other) const;
  bool disjoint(const Point& other) const;

  std::string to_string() const;

  friend Point operator|(const Point& a, const Point& b);
  friend Point operator&(const Point& a, const Point& b);
  friend bool operator==(const Point& a, const Point& b) noexcept {
    return a.bits_ == b.bits_ && a.arity_ == b.arity_;
  }

 private:
  std::uint64_t bits_ = 0;
  int arity_ = 0;
  int weight_ = 0;
};

constexpr std::uint64_t arity_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// f : {0,1}^n -> {0,1}. Evaluation is pure and safe to call concurrently.
class BooleanFunction {
 public:
  virtual ~BooleanFunction() = default;

  virtual int arity() const noexcept = 0;

  /// Throws InvalidArgument if x.arity() != arity().
  bool eval(const Point& x) const {
    if (x.arity() != arity()) throw_arity_mismatch(x.arity());
    return evaluate(x.bits());
  }
  bool operator()(const Point& x) const { return eval(x); }

 protected:
  /// bits has no set bit at or above arity().
  virtual bool evaluate(std::uint64_t bits) const = 0;

 private:
  [[noreturn]] void throw_arity_mismatch(int got) const;
};

using FunctionPtr = std::shared_ptr<const BooleanFunction>;

/// Dense bit-packed table of 2^n values, n <= 24. Index of x is x.bits().
class TruthTable final : public BooleanFunction {
 public:
  explicit TruthTable(int arity);

  static TruthTable from_function(const BooleanFunction& f);
  static TruthTable from_ones(int arity, std::span<const std::uint64_t> ones);
  template <class Pred>
  static TruthTable from_predicate(int arity, Pred&& pred) {
    TruthTable t(arity);
    for (std::uint64_t i = 0; i < t.size(); ++i)
      if (pred(i)) t.set(i, true);
    return t;
  }

  int arity() const noexcept override { return arity_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << arity_; }

  bool get(std::uint64_t index) const noexcept {
    return (words_[index >> 6] >> (index & 63)) & 1U;
  }
  void set(std::uint64_t index, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    if (value)
      words_[index >> 6] |= bit;
    else
      words_[index >> 6] &= ~bit;
  }

  std::uint64_t count_ones() const noexcept;
  std::vector<std::uint64_t> ones() const;
  std::uint64_t hamming(const TruthTable& other) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.arity_ == b.arity_ && a.words_ == b.words_;
  }

 protected:
  bool evaluate(std::uint64_t bits) const override { return get(bits); }

 private:
  int arity_;
  std::vector<std::uint64_t> words_;
};

/// Function given by a callable on the raw bit encoding.
class LambdaFunction final : public BooleanFunction {
 public:
  LambdaFunction(int arity, std::function<bool(std::uint64_t)> fn);
  int arity() const noexcept override { return arity_; }

 protected:
  bool evaluate(std::uint64_t bits) const override { return fn_(bits); }

 private:
  int arity_;
  std::function<bool(std::uint64_t)> fn_;
};

FunctionPtr make_constant(int arity, bool value);
/// x |-> x_k, 1 <= k <= arity.
FunctionPtr make_dictator(int arity, int k);
/// x |-> [2|x| > n].
FunctionPtr make_majority(int arity);

/// Counts eval calls on the wrapped function. The tally is atomic.
class QueryCounter final : public BooleanFunction {
 public:
  explicit QueryCounter(const BooleanFunction& inner) : inner_(&inner) {}
  QueryCounter(const QueryCounter&) = delete;
  QueryCounter& operator=(const QueryCounter&) = delete;

  int arity() const noexcept override { return inner_->arity(); }
  std::uint64_t count() const noexcept {
    return count_.load(std::memory_order_relaxed);
  }

 protected:
  bool evaluate(std::uint64_t bits) const override {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner_->eval(Point(bits, inner_->arity()));
  }

 private:
  const BooleanFunction* inner_;
  mutable std::atomic<std::uint64_t> count_{0};
};

/// Hamming-weight interval [lo, hi].
struct Band {
  int lo = 0;
  int hi = 0;

  bool contains(int weight) const noexcept { return lo <= weight && weight <= hi; }
  bool contains(const Point& x) const noexcept { return contains(x.weight()); }
  friend bool operator==(const Band&, const Band&) = default;
};

enum class BandWidth { plain, widened };

/// T = sqrt(2 n ln(4/eps)) (plain) or sqrt(2 n ln(4n/eps)) (widened).
double band_radius(int n, double eps, BandWidth width);

/// [ceil(n/2 - T), floor(n/2 + T)] clamped to [0, n].
Band mid_band(int n, double eps, BandWidth width = BandWidth::plain);

/// 0 strictly below the plain band, 1 strictly above it, f inside.
FunctionPtr truncate_uc(FunctionPtr f, double eps);
/// 0 outside the plain band, f inside.
FunctionPtr truncate_int(FunctionPtr f, double eps);

/// C(n, k) for 0 <= n <= 64; 0 when k is out of range.
std::uint64_t binomial(int n, int k) noexcept;

/// |{y <= x : |y| in band}| = sum_{j=lo}^{min(|x|,hi)} C(|x|, j).
std::uint64_t down_band_size(const Point& x, const Band& band) noexcept;

/// Maps the low bits of `compact` onto the set positions of `support`,
/// lowest first.
std::uint64_t scatter_bits(std::uint64_t compact, std::uint64_t support) noexcept;

/// Calls visit(y) for every y <= x with |y| in band, by increasing weight and
/// then lexicographically in the positions of x. Throws ResourceLimit before
/// visiting anything if the count would exceed cap.
template <class Visit>
void for_each_down_band(const Point& x, const Band& band, std::uint64_t cap,
                        Visit&& visit) {
  const std::uint64_t total = down_band_size(x, band);
  if (total > cap)
    throw ResourceLimit("down-set enumeration of " + std::to_string(total) +
                        " points exceeds cap " + std::to_string(cap));
  const int k = x.weight();
  const int top = band.hi < k ? band.hi : k;
  for (int j = band.lo < 0 ? 0 : band.lo; j <= top; ++j) {
    if (j == 0) {
      visit(Point(0, x.arity()));
      continue;
    }
    // Gosper's hack over j-subsets of the k support positions.
    std::uint64_t c = (std::uint64_t{1} << j) - 1;
    const std::uint64_t limit = arity_mask(k);
    while (c <= limit) {
      visit(Point(scatter_bits(c, x.bits()), x.arity()));
      const std::uint64_t lowest = c & (0 - c);
      const std::uint64_t ripple = c + lowest;
      if (ripple == 0 || ripple > limit) break;
      c = (((ripple ^ c) >> 2) / lowest) | ripple;
    }
  }
}

std::vector<Point> enumerate_down_band(const Point& x, const Band& band,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Uniform k-subset of {0, ..., n-1} as a bit mask.
std::uint64_t random_subset_mask(int n, int k, CounterRng& rng);

/// Exactly uniform over {x in {0,1}^n : |x| in band}.
Point sample_band_uniform(int n, const Band& band, CounterRng& rng);

/// Exactly uniform over {y <= x : |y| in band}; requires |x| >= band.lo.
Point sample_down_band_uniform(const Point& x, const Band& band, CounterRng& rng);

}  // namespace setfam
