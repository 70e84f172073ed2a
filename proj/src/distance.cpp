// SPDX-License-Identifier: Apache-2.0
#include "setfam/distance.hpp"

#include <array>
#include <bit>
#include <mutex>

#include "setfam/rng.hpp"
#include "setfam/violations.hpp"

namespace setfam {

bool fraction_le(const ExactFraction& lhs, const ExactFraction& rhs) noexcept {
  return static_cast<uint128_t>(lhs.numerator) * rhs.denominator <=
         static_cast<uint128_t>(rhs.numerator) * lhs.denominator;
}

const char* to_string(DistanceMethod method) noexcept {
  switch (method) {
    case DistanceMethod::exhaustive: return "exhaustive";
    case DistanceMethod::vertex_cover: return "vertex-cover";
    case DistanceMethod::matching_bounds: return "matching-bounds";
    case DistanceMethod::repair_bounds: return "repair-bounds";
  }
  return "unknown";
}

namespace {

void require_arity_at_most(const TruthTable& f, int cap, const char* what) {
  if (f.arity() > cap)
    throw InvalidArgument(std::string(what) + " requires n <= " + std::to_string(cap) +
                          ", got " + std::to_string(f.arity()));
}

/// u[z] = OR of the 1-inputs below z (restricted to `band` when given).
std::vector<std::uint32_t> union_below(const TruthTable& f, const std::optional<Band>& band) {
  const std::uint64_t size = f.size();
  std::vector<std::uint32_t> u(size, 0);
  for (std::uint64_t z = 0; z < size; ++z)
    if (f.get(z) && (!band || band->contains(std::popcount(z)))) u[z] = static_cast<std::uint32_t>(z);
  for (int i = 0; i < f.arity(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t z = 0; z < size; ++z)
      if (z & bit) u[z] |= u[z ^ bit];
  }
  return u;
}

ExactFraction over_cube(std::uint64_t count, int n) {
  return ExactFraction{count, std::uint64_t{1} << n};
}

}  // namespace

bool is_union_closed(const TruthTable& f) {
  const std::vector<std::uint32_t> u = union_below(f, std::nullopt);
  for (std::uint64_t z = 1; z < f.size(); ++z)
    if (!f.get(z) && u[z] == z) return false;
  return true;
}

bool is_intersecting(const TruthTable& f) {
  if (f.get(0)) return false;
  const std::uint64_t size = f.size();
  const std::uint64_t mask = size - 1;
  // below[z]: some 1-input lies under z.
  std::vector<char> below(size, 0);
  for (std::uint64_t z = 0; z < size; ++z) below[z] = f.get(z) ? 1 : 0;
  for (int i = 0; i < f.arity(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t z = 0; z < size; ++z)
      if ((z & bit) && below[z ^ bit]) below[z] = 1;
  }
  for (std::uint64_t x = 0; x < size; ++x)
    if (f.get(x) && below[~x & mask]) return false;
  return true;
}

DistanceResult dist_int_exact(const TruthTable& f, const graph::CoverLimits& limits) {
  require_arity_at_most(f, 16, "dist_int_exact");
  std::vector<std::uint64_t> ones = f.ones();
  TruthTable repaired = f;
  std::uint64_t cover = 0;
  if (!ones.empty() && ones.front() == 0) {
    repaired.set(0, false);
    ++cover;
    ones.erase(ones.begin());
  }
  if (static_cast<std::uint64_t>(ones.size()) > static_cast<std::uint64_t>(limits.max_vertices))
    throw ResourceLimit("dist_int_exact: " + std::to_string(ones.size()) +
                        " one-inputs exceed the vertex cap " + std::to_string(limits.max_vertices));
  graph::Adjacency adj(ones.size());
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i + 1; j < ones.size(); ++j)
      if ((ones[i] & ones[j]) == 0) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  for (int v : graph::min_vertex_cover(adj, limits)) {
    repaired.set(ones[static_cast<std::size_t>(v)], false);
    ++cover;
  }
  if (!is_intersecting(repaired)) throw Error("dist_int_exact: repaired function is not intersecting");
  return DistanceResult{over_cube(cover, f.arity()), std::nullopt, DistanceMethod::vertex_cover,
                        std::move(repaired)};
}

DistanceResult dist_int_bounds(const TruthTable& f, std::uint64_t max_ones) {
  const std::uint64_t m = max_disjoint_i_pairs(f, max_ones).size();
  return DistanceResult{over_cube(m, f.arity()), over_cube(2 * m, f.arity()),
                        DistanceMethod::matching_bounds, std::nullopt};
}

namespace {

bool small_union_closed(std::uint32_t table, int n) {
  const std::uint32_t size = 1U << n;
  for (std::uint32_t x = 0; x < size; ++x) {
    if (!((table >> x) & 1U)) continue;
    for (std::uint32_t y = x + 1; y < size; ++y)
      if (((table >> y) & 1U) && !((table >> (x | y)) & 1U)) return false;
  }
  return true;
}

}  // namespace

const std::vector<std::uint16_t>& union_closed_tables(int n) {
  if (n < 0 || n > 4) throw InvalidArgument("union_closed_tables requires 0 <= n <= 4");
  static std::array<std::vector<std::uint16_t>, 5> tables;
  static std::array<std::once_flag, 5> once;
  std::call_once(once[static_cast<std::size_t>(n)], [n] {
    const std::uint32_t count = 1U << (1U << n);
    auto& out = tables[static_cast<std::size_t>(n)];
    for (std::uint32_t t = 0; t < count; ++t)
      if (small_union_closed(t, n)) out.push_back(static_cast<std::uint16_t>(t));
  });
  return tables[static_cast<std::size_t>(n)];
}

DistanceResult dist_uc_exact(const TruthTable& f) {
  require_arity_at_most(f, 4, "dist_uc_exact");
  const int n = f.arity();
  const std::uint64_t bits = f.words()[0];
  int best = 1 << 30;
  std::uint16_t arg = 0;
  for (std::uint16_t g : union_closed_tables(n)) {
    const int d = std::popcount(bits ^ g);
    if (d < best) {
      best = d;
      arg = g;
    }
  }
  TruthTable certificate(n);
  for (std::uint64_t i = 0; i < certificate.size(); ++i) certificate.set(i, (arg >> i) & 1U);
  return DistanceResult{over_cube(static_cast<std::uint64_t>(best), n), std::nullopt,
                        DistanceMethod::exhaustive, std::move(certificate)};
}

DistanceResult dist_uc_bounds(const TruthTable& f) {
  require_arity_at_most(f, 16, "dist_uc_bounds");
  const std::uint64_t lower = disjoint_tuple_count_lb(f);
  UcRepair repair = repair_uc(f);
  return DistanceResult{over_cube(lower, f.arity()), over_cube(repair.flipped.size(), f.arity()),
                        DistanceMethod::repair_bounds, std::move(repair.repaired)};
}

UcRepair repair_uc(const TruthTable& f) {
  require_arity_at_most(f, 20, "repair_uc");
  const std::vector<std::uint32_t> u = union_below(f, std::nullopt);
  UcRepair out{f, {}};
  for (std::uint64_t z = 1; z < f.size(); ++z)
    if (!f.get(z) && u[z] == z) {
      out.repaired.set(z, true);
      out.flipped.push_back(z);
    }
  return out;
}

std::uint64_t end_distinct_tuple_count(const TruthTable& f, const std::optional<Band>& band) {
  require_arity_at_most(f, 20, "end_distinct_tuple_count");
  const std::vector<std::uint32_t> u = union_below(f, band);
  std::uint64_t count = 0;
  for (std::uint64_t z = 1; z < f.size(); ++z)
    if (!f.get(z) && u[z] == z && (!band || band->contains(std::popcount(z)))) ++count;
  return count;
}

std::uint64_t disjoint_tuple_count_lb(const TruthTable& f) {
  require_arity_at_most(f, 16, "disjoint_tuple_count_lb");
  const std::vector<std::uint32_t> u = union_below(f, std::nullopt);
  std::vector<char> used(f.size(), 0);
  std::vector<std::uint32_t> members;
  std::uint64_t count = 0;
  for (std::uint32_t z = 1; z < f.size(); ++z) {
    if (f.get(z) || used[z] || u[z] != z) continue;
    members.clear();
    std::uint32_t covered = 0;
    // Submasks in decreasing order; keep those that add a new coordinate.
    for (std::uint32_t s = (z - 1) & z; s != 0; s = (s - 1) & z)
      if (f.get(s) && !used[s] && (s & ~covered) != 0) {
        members.push_back(s);
        covered |= s;
      }
    if (covered != z) continue;
    for (std::size_t j = 0; j < members.size();) {
      std::uint32_t others = 0;
      for (std::size_t i = 0; i < members.size(); ++i)
        if (i != j) others |= members[i];
      if (others == z)
        members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
      else
        ++j;
    }
    for (std::uint32_t m : members) used[m] = 1;
    used[z] = 1;
    ++count;
  }
  return count;
}

}  // namespace setfam
