// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "setfam/boolfn.hpp"

namespace setfam {

/// f(x) = f(y) = 1 with x ∧ y = 0. x = y is only possible at 0^n.
struct IViolatingPair {
  Point x;
  Point y;
  friend bool operator==(const IViolatingPair&, const IViolatingPair&) = default;
};

/// f(members_j) = 1 for all j, end = OR of members, f(end) = 0.
struct UcViolatingTuple {
  std::vector<Point> members;
  Point end;
  friend bool operator==(const UcViolatingTuple&, const UcViolatingTuple&) = default;
};

/// z = y1 ∨ y2, f(y1) = f(y2) = 1, f(z) = 0.
struct TripleCertificate {
  Point y1;
  Point y2;
  Point z;
  friend bool operator==(const TripleCertificate&, const TripleCertificate&) = default;
};

using Certificate = std::variant<IViolatingPair, UcViolatingTuple, TripleCertificate>;

/// x <= y, f(x) = 1, f(y) = 0.
bool is_monotone_violation(const BooleanFunction& f, const Point& x, const Point& y);

/// f(x) = f(y) = 1 and x ∧ y = 0; includes the diagonal (0^n, 0^n).
bool is_i_violation(const BooleanFunction& f, const Point& x, const Point& y);

std::optional<TripleCertificate> find_uc_violation(const BooleanFunction& f, const Point& y1,
                                                   const Point& y2);

/// Re-reads f at every point the certificate names.
bool verify_certificate(const BooleanFunction& f, const Certificate& cert);

/// No member can be dropped without shrinking the union.
bool is_minimal(const UcViolatingTuple& tuple);

/// Queries f(x) and f(y) for every y in the banded down-set of x (always all
/// of them). Returns a tuple ending at x iff f(x) = 0 and the union of the
/// satisfying y equals x. The members are a sub-cover of the satisfying set:
/// for each coordinate of x, the first satisfying y (in enumeration order)
/// that covers it.
std::optional<UcViolatingTuple> witness_check_uc(const BooleanFunction& f, const Point& x,
                                                 const Band& band,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

/// Queries f(x) and every y in the banded down-set of complement(x). Returns
/// (y, x) for the first y with f(y) = 1, provided f(x) = 1.
std::optional<IViolatingPair> witness_check_int(const BooleanFunction& f, const Point& x,
                                                const Band& band,
                                                std::uint64_t cap = kDefaultEnumerationCap);

struct PairMatching {
  std::vector<IViolatingPair> pairs;
  std::size_t size() const noexcept { return pairs.size(); }
};

/// Maximum set of point-disjoint I-violating pairs. If f(0^n) = 1 the pair
/// (0^n, 0^n) is always taken: 0^n is adjacent to every 1-input, so using it
/// as a self-loop never lowers the maximum.
PairMatching max_disjoint_i_pairs(const TruthTable& f, std::uint64_t max_ones = 4096);

/// Perfect matching between weight-w and weight-(a-w) points of {0,1}^a with
/// p <= q in every pair. Requires 0 <= w < a/2 and a <= 20.
std::vector<std::pair<Point, Point>> level_matching(int a, int w);

struct Augmentation {
  /// x_1, ..., x_k followed by the prefix unions x_1∪x_2, ..., x_1∪...∪x_k.
  std::vector<Point> points;
  TripleCertificate triple;
  /// Prefix length j of the triple (x_1∪...∪x_j, x_{j+1}, x_1∪...∪x_{j+1}).
  std::size_t prefix = 0;
};

/// Throws InvalidArgument if the tuple does not violate f.
Augmentation augment_tuple(const BooleanFunction& f, const UcViolatingTuple& tuple);

/// |y1 Δ y2|.
int locality(const TripleCertificate& triple);

/// Smallest locality over all violating triples of f; nullopt if f is
/// union-closed. Requires n <= 20.
std::optional<int> min_violation_locality(const TruthTable& f,
                                          std::uint64_t max_pairs = std::uint64_t{1} << 34);

}  // namespace setfam
