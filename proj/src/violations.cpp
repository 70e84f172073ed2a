// SPDX-License-Identifier: Apache-2.0
#include "setfam/violations.hpp"

#include <algorithm>
#include <unordered_map>

#include "setfam/graph.hpp"

namespace setfam {

namespace {

void require_same_arity(const BooleanFunction& f, const Point& x, const Point& y) {
  if (x.arity() != f.arity() || y.arity() != f.arity())
    throw InvalidArgument("arity mismatch between points and function");
}

void require_in_band(const Point& x, const Band& band) {
  if (!band.contains(x))
    throw InvalidArgument("point of weight " + std::to_string(x.weight()) + " lies outside band [" +
                          std::to_string(band.lo) + ", " + std::to_string(band.hi) + "]");
}

}  // namespace

bool is_monotone_violation(const BooleanFunction& f, const Point& x, const Point& y) {
  require_same_arity(f, x, y);
  return x.below(y) && f.eval(x) && !f.eval(y);
}

bool is_i_violation(const BooleanFunction& f, const Point& x, const Point& y) {
  require_same_arity(f, x, y);
  return x.disjoint(y) && f.eval(x) && f.eval(y);
}

std::optional<TripleCertificate> find_uc_violation(const BooleanFunction& f, const Point& y1,
                                                   const Point& y2) {
  require_same_arity(f, y1, y2);
  const Point z = y1 | y2;
  if (f.eval(y1) && f.eval(y2) && !f.eval(z)) return TripleCertificate{y1, y2, z};
  return std::nullopt;
}

bool verify_certificate(const BooleanFunction& f, const Certificate& cert) {
  struct Visitor {
    const BooleanFunction& f;
    bool operator()(const IViolatingPair& p) const { return is_i_violation(f, p.x, p.y); }
    bool operator()(const TripleCertificate& t) const {
      if (t.z != (t.y1 | t.y2)) return false;
      return find_uc_violation(f, t.y1, t.y2).has_value();
    }
    bool operator()(const UcViolatingTuple& t) const {
      if (t.members.empty() || t.end.arity() != f.arity()) return false;
      std::uint64_t uni = 0;
      for (const Point& m : t.members) {
        if (m.arity() != f.arity() || !f.eval(m)) return false;
        uni |= m.bits();
      }
      return uni == t.end.bits() && !f.eval(t.end);
    }
  };
  return std::visit(Visitor{f}, cert);
}

bool is_minimal(const UcViolatingTuple& tuple) {
  const std::size_t k = tuple.members.size();
  for (std::size_t j = 0; j < k; ++j) {
    std::uint64_t others = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (i != j) others |= tuple.members[i].bits();
    if (others == tuple.end.bits()) return false;
  }
  return true;
}

std::optional<UcViolatingTuple> witness_check_uc(const BooleanFunction& f, const Point& x,
                                                 const Band& band, std::uint64_t cap) {
  if (x.arity() != f.arity()) throw InvalidArgument("arity mismatch between point and function");
  require_in_band(x, band);
  // Fail on the cap before the first query.
  if (down_band_size(x, band) > cap)
    throw ResourceLimit("down-set of size " + std::to_string(down_band_size(x, band)) +
                        " exceeds enumeration cap " + std::to_string(cap));
  const bool fx = f.eval(x);
  std::uint64_t covered = 0;
  std::vector<Point> members;
  for_each_down_band(x, band, cap, [&](const Point& y) {
    if (f.eval(y) && (y.bits() & ~covered) != 0) {
      members.push_back(y);
      covered |= y.bits();
    }
  });
  if (fx || members.empty() || covered != x.bits()) return std::nullopt;
  return UcViolatingTuple{std::move(members), x};
}

std::optional<IViolatingPair> witness_check_int(const BooleanFunction& f, const Point& x,
                                                const Band& band, std::uint64_t cap) {
  if (x.arity() != f.arity()) throw InvalidArgument("arity mismatch between point and function");
  require_in_band(x, band);
  const Point xc = x.complement();
  if (down_band_size(xc, band) > cap)
    throw ResourceLimit("down-set of size " + std::to_string(down_band_size(xc, band)) +
                        " exceeds enumeration cap " + std::to_string(cap));
  const bool fx = f.eval(x);
  std::optional<Point> partner;
  for_each_down_band(xc, band, cap, [&](const Point& y) {
    if (f.eval(y) && !partner) partner = y;
  });
  if (!fx || !partner) return std::nullopt;
  return IViolatingPair{*partner, x};
}

PairMatching max_disjoint_i_pairs(const TruthTable& f, std::uint64_t max_ones) {
  const int n = f.arity();
  std::vector<std::uint64_t> ones = f.ones();
  if (ones.size() > max_ones)
    throw ResourceLimit("matching over " + std::to_string(ones.size()) +
                        " one-inputs exceeds cap " + std::to_string(max_ones));
  PairMatching result;
  if (!ones.empty() && ones.front() == 0) {
    result.pairs.push_back({Point::zeros(n), Point::zeros(n)});
    ones.erase(ones.begin());
  }
  const std::size_t v = ones.size();
  graph::Adjacency adj(v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i + 1; j < v; ++j)
      if ((ones[i] & ones[j]) == 0) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  const std::vector<int> mate = graph::max_matching(adj);
  for (std::size_t i = 0; i < v; ++i)
    if (mate[i] > static_cast<int>(i))
      result.pairs.push_back({Point(ones[i], n), Point(ones[static_cast<std::size_t>(mate[i])], n)});
  return result;
}

namespace {

std::vector<std::uint64_t> level(int a, int w) {
  std::vector<std::uint64_t> out;
  if (w == 0) return {0};
  std::uint64_t c = (std::uint64_t{1} << w) - 1;
  const std::uint64_t limit = arity_mask(a);
  while (c <= limit) {
    out.push_back(c);
    const std::uint64_t lowest = c & (0 - c);
    const std::uint64_t ripple = c + lowest;
    if (ripple > limit) break;
    c = (((ripple ^ c) >> 2) / lowest) | ripple;
  }
  return out;
}

}  // namespace

std::vector<std::pair<Point, Point>> level_matching(int a, int w) {
  if (a < 1 || a > 20) throw InvalidArgument("level_matching supports 1 <= a <= 20");
  if (w < 0 || 2 * w >= a) throw InvalidArgument("level_matching needs 0 <= w < a/2");
  const std::vector<std::uint64_t> low = level(a, w);
  const std::vector<std::uint64_t> high = level(a, a - w);
  std::unordered_map<std::uint64_t, int> high_index;
  high_index.reserve(high.size());
  for (std::size_t i = 0; i < high.size(); ++i) high_index.emplace(high[i], static_cast<int>(i));

  // q >= p of weight a - w: p plus an (a - 2w)-subset of its complement.
  const int extra = a - 2 * w;
  const std::vector<std::uint64_t> pads = level(a - w, extra);
  graph::Adjacency adj(low.size());
  for (std::size_t i = 0; i < low.size(); ++i) {
    const std::uint64_t rest = ~low[i] & arity_mask(a);
    for (std::uint64_t pad : pads)
      adj[i].push_back(high_index.at(low[i] | scatter_bits(pad, rest)));
  }
  const std::vector<int> mate = graph::bipartite_matching(adj, static_cast<int>(high.size()));
  std::vector<std::pair<Point, Point>> out;
  out.reserve(low.size());
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (mate[i] < 0) throw Error("level matching is not perfect");
    out.emplace_back(Point(low[i], a), Point(high[static_cast<std::size_t>(mate[i])], a));
  }
  return out;
}

Augmentation augment_tuple(const BooleanFunction& f, const UcViolatingTuple& tuple) {
  if (!verify_certificate(f, Certificate{tuple}))
    throw InvalidArgument("tuple is not a UC-violating tuple for this function");
  const auto& xs = tuple.members;
  Augmentation out;
  out.points = xs;
  std::vector<Point> prefix{xs.front()};
  for (std::size_t j = 1; j < xs.size(); ++j) {
    prefix.push_back(prefix.back() | xs[j]);
    out.points.push_back(prefix.back());
  }
  // f(prefix_1) = 1 and f(prefix_k) = 0, so the first drop to 0 is the triple.
  for (std::size_t j = 1; j < xs.size(); ++j) {
    if (!f.eval(prefix[j])) {
      out.triple = TripleCertificate{prefix[j - 1], xs[j], prefix[j]};
      out.prefix = j;
      return out;
    }
  }
  throw Error("augment_tuple: no violating prefix found");
}

int locality(const TripleCertificate& triple) {
  return std::popcount(triple.y1.bits() ^ triple.y2.bits());
}

std::optional<int> min_violation_locality(const TruthTable& f, std::uint64_t max_pairs) {
  if (f.arity() > 20) throw InvalidArgument("min_violation_locality requires n <= 20");
  const std::vector<std::uint64_t> ones = f.ones();
  const std::uint64_t m = ones.size();
  if (m * (m - (m > 0 ? 1 : 0)) / 2 > max_pairs)
    throw ResourceLimit("locality scan over " + std::to_string(m) + " one-inputs exceeds cap");
  std::optional<int> best;
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i + 1; j < ones.size(); ++j) {
      const int loc = std::popcount(ones[i] ^ ones[j]);
      if (best && loc >= *best) continue;
      if (!f.get(ones[i] | ones[j])) best = loc;
    }
  return best;
}

}  // namespace setfam
