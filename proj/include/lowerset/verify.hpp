#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lowerset {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<CheckResult>& results);

/// Reference cardinalities #Lambda(2^{-m}, rho*(1)) for m = 0..10.
std::span<const std::uint64_t> reference_cardinalities();

/// Published-table reproduction: cardinalities and 2^{-ms} thresholds for
/// s = 1..4, m = 0..10, compared bit-exactly against the embedded values.
std::vector<CheckResult> verify_table1();

/// Cross-implementation oracles: partition formula vs tree search (dyadic,
/// m <= 12), multiplicative partitions vs tree search (poly, N <= 200),
/// enumeration vs dynamic program for q(m) and #S_m.
std::vector<CheckResult> verify_oracle();

/// Every proved bound dominates the exact quantity on its stated range.
std::vector<CheckResult> verify_domination();

/// l_q sandwich on a 12-point (family, s, q) grid with certified tails.
std::vector<CheckResult> verify_sandwich();

/// Simplex lattice-count bracket vs direct enumeration, D <= 4, sides <= 6.
std::vector<CheckResult> verify_bracket();

/// Extremal-instance sharpness and the Monte Carlo error-domination check.
std::vector<CheckResult> verify_surrogate(std::uint64_t seed);

}  // namespace lowerset
