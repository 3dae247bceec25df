#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lowerset/multiindex.hpp"
#include "lowerset/weights.hpp"

namespace lowerset {

struct BuildOptions {
  /// Construction refuses (std::length_error) when the a priori count
  /// estimate exceeds this cap.
  std::uint64_t max_indices = 100'000'000;
};

/// Run of equal values inside a DeltaSequence (0-based into values).
struct TieClass {
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Decreasing rearrangement delta_1 >= delta_2 >= ... of (rho^{-nu}),
/// certified complete up to `horizon`.
struct DeltaSequence {
  std::vector<double> values;        // delta_1..delta_horizon
  std::vector<double> log2_weights;  // delta_n = 2^{-log2_weights[n-1]}
  std::vector<TieClass> tie_classes;
  std::uint64_t horizon = 0;
  std::string generator;  // weight-sequence spec string

  /// 1-based access, n <= horizon.
  double value(std::uint64_t n) const;
};

/// Members of Lambda(eps_final) for the smallest probed threshold, sorted by
/// weight ascending with ties in tie_break_less order; at least `count`
/// entries (all enumerated members are kept).
struct WeightOrdered {
  std::vector<MultiIndex> indices;
  std::vector<double> log2_weights;
  std::vector<TieClass> tie_classes;
  /// log2(1/eps_final): every nu with rho^nu <= 2^log2_threshold is listed.
  double log2_threshold = 0.0;
};

/// Lambda(eps, rho) = {nu : rho^nu <= 1/eps} by level-by-level tree search.
/// eps > 1 returns the empty set.  Canonical member order.
LowerSet build_lambda(const WeightSequence& seq, double eps,
                      const BuildOptions& opt = {});

/// Optimal lower set of cardinality exactly n (ties cut in tie_break_less
/// order) together with the delta sequence up to horizon n.
std::pair<LowerSet, DeltaSequence> build_lambda_n(const WeightSequence& seq,
                                                  std::uint64_t n,
                                                  const BuildOptions& opt = {});

/// delta_1..delta_n_max by iterating build_lambda at decreasing thresholds.
DeltaSequence delta_sequence(const WeightSequence& seq, std::uint64_t n_max,
                             const BuildOptions& opt = {});

/// Weight-sorted enumeration covering at least `count` indices.
WeightOrdered enumerate_by_weight(const WeightSequence& seq,
                                  std::uint64_t count,
                                  const BuildOptions& opt = {});

/// Conservative upper estimate for #Lambda(eps, rho) used by the memory
/// guard (partition bound for dyadic blocks, simplex bound otherwise).
double a_priori_count_estimate(const WeightSequence& seq, double eps);

}  // namespace lowerset
