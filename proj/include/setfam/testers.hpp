// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "setfam/boolfn.hpp"
#include "setfam/violations.hpp"

namespace setfam {

enum class Verdict { accept, reject };

const char* to_string(Verdict verdict) noexcept;

struct TesterConfig {
  double eps = 0.1;
  /// Replaces the default iteration / round count.
  std::optional<std::uint64_t> max_iterations;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;
  /// C in tau = eps * 2^(-C * sqrt(n ln(n/eps)) * log2 n).
  double tau_constant = 1.0;
  /// Keep going after the first rejection and count every successful
  /// iteration. The reported certificate is still the first one.
  bool run_all_rounds = false;
};

struct TesterReport {
  Verdict verdict = Verdict::accept;
  std::optional<Certificate> certificate;
  std::uint64_t queries = 0;
  std::uint64_t iterations_run = 0;
  std::uint64_t iterations_planned = 0;
  /// Iterations that found a violation (at most 1 unless run_all_rounds).
  std::uint64_t successes = 0;
  std::uint64_t seed = 0;
};

/// ceil(100 / eps).
std::uint64_t default_iterations(double eps);

/// Per-round success lower bound used to size the triple and pair testers.
double triple_tau(int n, double eps, double tau_constant = 1.0);

/// ceil(100 / tau), saturating at 2^63.
std::uint64_t default_rounds(int n, double eps, double tau_constant = 1.0);

/// Iteration i draws x uniformly from the plain middle band using
/// CounterRng(seed, i) and runs witness_check_uc on f.
TesterReport uc_tester(const BooleanFunction& f, const TesterConfig& cfg);

/// As uc_tester, with witness_check_int.
TesterReport int_tester(const BooleanFunction& f, const TesterConfig& cfg);

/// Each round: x uniform in the widened band, y1 and y2 uniform and
/// independent in its banded down-set; queries f(x), f(y1), f(y2) and rejects
/// when (y1, y2, x) is a violating triple.
TesterReport uc_triple_tester(const BooleanFunction& f, const TesterConfig& cfg);

/// Each round: x uniform in the widened band, y uniform in the banded
/// down-set of complement(x); queries f(x), f(y).
TesterReport int_pair_tester(const BooleanFunction& f, const TesterConfig& cfg);

}  // namespace setfam
