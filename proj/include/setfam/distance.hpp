// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setfam/boolfn.hpp"
#include "setfam/graph.hpp"

namespace setfam {

/// numerator / denominator, kept unreduced (the denominator is 2^n).
struct ExactFraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double to_double() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  std::string to_string() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
  }
  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;
};

/// a/b <= c/d, exactly.
bool fraction_le(const ExactFraction& lhs, const ExactFraction& rhs) noexcept;

enum class DistanceMethod { exhaustive, vertex_cover, matching_bounds, repair_bounds };

const char* to_string(DistanceMethod method) noexcept;

struct DistanceResult {
  /// Exact distance, or the lower bound for the *_bounds methods.
  ExactFraction value;
  /// Upper bound; set only for the *_bounds methods.
  std::optional<ExactFraction> upper;
  DistanceMethod method = DistanceMethod::exhaustive;
  /// A function with the property at distance `value` (exact methods) or
  /// `upper` (repair_bounds).
  std::optional<TruthTable> certificate;
};

bool is_union_closed(const TruthTable& f);
/// Includes the diagonal: f(0^n) = 1 makes f non-intersecting.
bool is_intersecting(const TruthTable& f);

/// Minimum vertex cover of the disjointness graph on 1-inputs. Requires n <= 16.
DistanceResult dist_int_exact(const TruthTable& f, const graph::CoverLimits& limits = {});

/// |M| / 2^n <= dist_int(f) <= 2|M| / 2^n for a maximum matching M of
/// disjoint I-violating pairs.
DistanceResult dist_int_bounds(const TruthTable& f, std::uint64_t max_ones = 4096);

/// Minimum over every union-closed g of dist(f, g). Requires n <= 4.
DistanceResult dist_uc_exact(const TruthTable& f);

/// Lower bound from point-disjoint violating tuples, upper bound from the
/// union-closure repair. Requires n <= 16.
DistanceResult dist_uc_bounds(const TruthTable& f);

/// All union-closed functions of arity n <= 4, as 2^n-bit integers in
/// increasing order.
const std::vector<std::uint16_t>& union_closed_tables(int n);

struct UcRepair {
  TruthTable repaired;
  /// Indices flipped 0 -> 1, ascending.
  std::vector<std::uint64_t> flipped;
};

/// Adds every union of 1-inputs. The flipped points are exactly the ends of
/// UC-violating tuples. Requires n <= 20.
UcRepair repair_uc(const TruthTable& f);

/// Number of distinct ends of UC-violating tuples. With a band, members and
/// end must all have weight in the band. Requires n <= 20.
std::uint64_t end_distinct_tuple_count(const TruthTable& f,
                                       const std::optional<Band>& band = std::nullopt);

/// Size of a maximal family of pairwise point-disjoint minimal UC-violating
/// tuples, built greedily by increasing end point. Requires n <= 16.
std::uint64_t disjoint_tuple_count_lb(const TruthTable& f);

}  // namespace setfam
