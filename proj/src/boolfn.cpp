// SPDX-License-Identifier: Apache-2.0
#include "setfam/boolfn.hpp"

#include <array>
#include <cmath>

namespace setfam {

Point::Point(std::uint64_t bits, int arity) : bits_(bits), arity_(arity) {
  if (arity < 0 || arity > kMaxPointArity)
    throw InvalidArgument("point arity " + std::to_string(arity) + " outside [0, 63]");
  if ((bits & ~arity_mask(arity)) != 0)
    throw InvalidArgument("point has bits set beyond arity " + std::to_string(arity));
  weight_ = std::popcount(bits);
}

Point Point::ones(int arity) {
  if (arity < 0 || arity > kMaxPointArity)
    throw InvalidArgument("point arity " + std::to_string(arity) + " outside [0, 63]");
  return Point(arity_mask(arity), arity);
}

Point Point::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxPointArity))
    throw ParseError("point string longer than 63 coordinates");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (text[i] != '0')
      throw ParseError("point string may only contain 0 and 1: '" + std::string(text) + "'");
  }
  return Point(bits, static_cast<int>(text.size()));
}

Point Point::complement() const { return Point(~bits_ & arity_mask(arity_), arity_); }

namespace {
void require_same_arity(const Point& a, const Point& b) {
  if (a.arity() != b.arity())
    throw InvalidArgument("arity mismatch: " + std::to_string(a.arity()) + " vs " +
                          std::to_string(b.arity()));
}
}  // namespace

bool Point::below(const Point& other) const {
  require_same_arity(*this, other);
  return (bits_ & ~other.bits_) == 0;
}

bool Point::disjoint(const Point& other) const {
  require_same_arity(*this, other);
  return (bits_ & other.bits_) == 0;
}

std::string Point::to_string() const {
  std::string s(static_cast<std::size_t>(arity_), '0');
  for (int i = 0; i < arity_; ++i)
    if ((bits_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

Point operator|(const Point& a, const Point& b) {
  require_same_arity(a, b);
  return Point(a.bits_ | b.bits_, a.arity_);
}

Point operator&(const Point& a, const Point& b) {
  require_same_arity(a, b);
  return Point(a.bits_ & b.bits_, a.arity_);
}

void BooleanFunction::throw_arity_mismatch(int got) const {
  throw InvalidArgument("function of arity " + std::to_string(arity()) +
                        " evaluated at a point of arity " + std::to_string(got));
}

// TruthTable

TruthTable::TruthTable(int arity) : arity_(arity) {
  if (arity < 0 || arity > kMaxTableArity)
    throw InvalidArgument("truth tables support arity 0..24, got " + std::to_string(arity));
  words_.assign(((std::uint64_t{1} << arity) + 63) / 64, 0);
}

TruthTable TruthTable::from_function(const BooleanFunction& f) {
  TruthTable t(f.arity());
  for (std::uint64_t i = 0; i < t.size(); ++i)
    if (f.eval(Point(i, t.arity_))) t.set(i, true);
  return t;
}

TruthTable TruthTable::from_ones(int arity, std::span<const std::uint64_t> ones) {
  TruthTable t(arity);
  for (std::uint64_t i : ones) {
    if (i >= t.size())
      throw InvalidArgument("point index " + std::to_string(i) + " out of range for arity " +
                            std::to_string(arity));
    t.set(i, true);
  }
  return t;
}

std::uint64_t TruthTable::count_ones() const noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> TruthTable::ones() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_ones());
  for (std::uint64_t i = 0; i < size(); ++i)
    if (get(i)) out.push_back(i);
  return out;
}

std::uint64_t TruthTable::hamming(const TruthTable& other) const {
  if (other.arity_ != arity_) throw InvalidArgument("hamming: arity mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    total += static_cast<std::uint64_t>(std::popcount(words_[i] ^ other.words_[i]));
  return total;
}

LambdaFunction::LambdaFunction(int arity, std::function<bool(std::uint64_t)> fn)
    : arity_(arity), fn_(std::move(fn)) {
  if (arity < 1 || arity > kMaxPointArity)
    throw InvalidArgument("function arity must lie in [1, 63], got " + std::to_string(arity));
}

FunctionPtr make_constant(int arity, bool value) {
  return std::make_shared<LambdaFunction>(arity, [value](std::uint64_t) { return value; });
}

FunctionPtr make_dictator(int arity, int k) {
  if (k < 1 || k > arity)
    throw InvalidArgument("dictator coordinate " + std::to_string(k) + " outside [1, " +
                          std::to_string(arity) + "]");
  return std::make_shared<LambdaFunction>(
      arity, [k](std::uint64_t x) { return ((x >> (k - 1)) & 1U) != 0; });
}

FunctionPtr make_majority(int arity) {
  return std::make_shared<LambdaFunction>(
      arity, [arity](std::uint64_t x) { return 2 * std::popcount(x) > arity; });
}

// Bands and truncation

double band_radius(int n, double eps, BandWidth width) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InvalidArgument("eps must lie in (0, 1), got " + std::to_string(eps));
  if (n < 1) throw InvalidArgument("arity must be positive");
  const double inner = width == BandWidth::plain ? 4.0 / eps : 4.0 * n / eps;
  return std::sqrt(2.0 * n * std::log(inner));
}

Band mid_band(int n, double eps, BandWidth width) {
  const double t = band_radius(n, eps, width);
  const double half = n / 2.0;
  const double lo = std::ceil(half - t);
  const double hi = std::floor(half + t);
  return Band{lo < 0 ? 0 : static_cast<int>(lo), hi > n ? n : static_cast<int>(hi)};
}

namespace {

class Truncated final : public BooleanFunction {
 public:
  Truncated(FunctionPtr inner, Band band, bool above_value)
      : inner_(std::move(inner)), band_(band), above_(above_value) {}

  int arity() const noexcept override { return inner_->arity(); }

 protected:
  bool evaluate(std::uint64_t bits) const override {
    const int w = std::popcount(bits);
    if (w < band_.lo) return false;
    if (w > band_.hi) return above_;
    return inner_->eval(Point(bits, inner_->arity()));
  }

 private:
  FunctionPtr inner_;
  Band band_;
  bool above_;
};

}  // namespace

FunctionPtr truncate_uc(FunctionPtr f, double eps) {
  const Band band = mid_band(f->arity(), eps);
  return std::make_shared<Truncated>(std::move(f), band, true);
}

FunctionPtr truncate_int(FunctionPtr f, double eps) {
  const Band band = mid_band(f->arity(), eps);
  return std::make_shared<Truncated>(std::move(f), band, false);
}

// Enumeration and sampling

namespace {

constexpr auto kPascal = [] {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  for (int n = 0; n <= 64; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
  }
  return c;
}();

}  // namespace

std::uint64_t binomial(int n, int k) noexcept {
  if (n < 0 || n > 64 || k < 0 || k > n) return 0;
  return kPascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::uint64_t down_band_size(const Point& x, const Band& band) noexcept {
  const int k = x.weight();
  std::uint64_t total = 0;
  for (int j = band.lo < 0 ? 0 : band.lo; j <= band.hi && j <= k; ++j) total += binomial(k, j);
  return total;
}

std::uint64_t scatter_bits(std::uint64_t compact, std::uint64_t support) noexcept {
  std::uint64_t out = 0;
  while (compact != 0 && support != 0) {
    const std::uint64_t lowest = support & (0 - support);
    if (compact & 1U) out |= lowest;
    compact >>= 1;
    support ^= lowest;
  }
  return out;
}

std::vector<Point> enumerate_down_band(const Point& x, const Band& band, std::uint64_t cap) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(down_band_size(x, band) < cap ? down_band_size(x, band) : 0));
  for_each_down_band(x, band, cap, [&](const Point& y) { out.push_back(y); });
  return out;
}

namespace {

/// Uniform k-subset of the low `n` positions as a bit mask (partial Fisher-Yates).
std::uint64_t uniform_subset(int n, int k, CounterRng& rng) {
  std::array<int, 64> slots{};
  for (int i = 0; i < n; ++i) slots[static_cast<std::size_t>(i)] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(j)]);
    mask |= std::uint64_t{1} << slots[static_cast<std::size_t>(i)];
  }
  return mask;
}

/// Weight j in band ∩ [0, n] with probability C(n, j) / sum.
int sample_weight(int n, const Band& band, CounterRng& rng) {
  const int lo = band.lo < 0 ? 0 : band.lo;
  const int hi = band.hi > n ? n : band.hi;
  if (lo > hi) throw InvalidArgument("band has no weight in [0, n]");
  std::uint64_t total = 0;
  for (int j = lo; j <= hi; ++j) total += binomial(n, j);
  std::uint64_t r = rng.below(total);
  for (int j = lo; j < hi; ++j) {
    const std::uint64_t c = binomial(n, j);
    if (r < c) return j;
    r -= c;
  }
  return hi;
}

}  // namespace

std::uint64_t random_subset_mask(int n, int k, CounterRng& rng) {
  if (n < 0 || n > 64 || k < 0 || k > n) throw InvalidArgument("random_subset_mask: need 0 <= k <= n <= 64");
  return uniform_subset(n, k, rng);
}

Point sample_band_uniform(int n, const Band& band, CounterRng& rng) {
  if (n < 1 || n > kMaxPointArity) throw InvalidArgument("arity must lie in [1, 63]");
  const int j = sample_weight(n, band, rng);
  return Point(uniform_subset(n, j, rng), n);
}

Point sample_down_band_uniform(const Point& x, const Band& band, CounterRng& rng) {
  const int k = x.weight();
  if (k < band.lo) throw InvalidArgument("point lies below the band; its down-set misses it");
  const int j = sample_weight(k, band, rng);
  return Point(scatter_bits(uniform_subset(k, j, rng), x.bits()), x.arity());
}

}  // namespace setfam
