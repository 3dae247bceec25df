#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowerset/multiindex.hpp"

namespace lowerset {

enum class WeightFamily { kPolyGrowth, kDyadicBlocks, kCustom };

/// Dyadic block partition of the coordinates: I_1 = {1,2},
/// I_k = {j : 2^{k-1} < j <= 2^k} for k >= 2.
std::uint32_t block_index(std::uint64_t j);
/// #I_k as an exact integer (2 for k = 1, 2^{k-1} for k >= 2).
mpz_class block_size(std::uint32_t k);

/// Growth formula for coordinates past a custom prefix.
struct TailRule {
  WeightFamily family = WeightFamily::kPolyGrowth;  // poly or dyadic
  double s = 1.0;
};

/// rho^nu, carried as its base-2 logarithm plus exact forms when the
/// sequence admits them.
struct WeightValue {
  double log2_value = 0.0;
  /// For dyadic blocks: the integer m with rho^nu = 2^{s m}.
  std::optional<std::int64_t> dyadic_exponent;
  /// Exact integer value of rho^nu (dyadic or polynomial growth with
  /// integer s).
  std::optional<mpz_class> exact_value;
};

/// An admissible weight sequence: non-decreasing, rho_1 > 1, rho_j -> inf.
class WeightSequence {
 public:
  static WeightSequence poly_growth(double s);    // rho_j = (j+1)^s
  static WeightSequence dyadic_blocks(double s);  // rho_j = 2^{ks}, j in I_k
  static WeightSequence custom(std::vector<double> prefix,
                               std::optional<TailRule> tail);

  /// Grammar: "poly:s=<real>", "dyadic:s=<real>", "custom:file=<path>".
  static WeightSequence parse(const std::string& spec);
  /// Custom file: one rho_j per line, optionally a final line
  /// "tail poly:s=<real>" or "tail dyadic:s=<real>".
  static WeightSequence parse_custom_stream(std::istream& is,
                                            const std::string& spec_label);

  WeightFamily family() const { return family_; }
  double s() const { return s_; }
  const std::string& spec_string() const { return spec_; }
  /// Custom prefix length; 0 for the formula families.
  std::size_t prefix_length() const { return prefix_.size(); }
  const std::optional<TailRule>& tail_rule() const { return tail_; }
  /// True when weight comparisons can be resolved in exact integer
  /// arithmetic (dyadic blocks, or polynomial growth with integer s).
  bool has_exact_backend() const;
  bool integer_s() const { return integer_s_; }

  /// Throws std::domain_error "sequence undefined at j" for a custom
  /// sequence queried past its prefix without a tail rule.
  double rho(std::uint64_t j) const;
  double log2_rho(std::uint64_t j) const;

  WeightValue weight(const MultiIndex& nu) const;
  double log2_weight(const MultiIndex& nu) const;
  /// Integer exponent m with rho^nu = 2^{s m} (dyadic blocks only).
  std::int64_t dyadic_weight_exponent(const MultiIndex& nu) const;
  /// Exact integer rho^nu; requires has_exact_backend().
  mpz_class exact_weight(const MultiIndex& nu) const;

  /// rho^nu <= inv_eps, resolved exactly when the backend allows; ties in
  /// the floating backend are admitted within 1e-12 in log2 units.
  bool weight_within(const MultiIndex& nu, double inv_eps) const;
  /// rho_j <= bound with the same comparison policy.
  bool rho_within(std::uint64_t j, double bound) const;

  /// Largest j with rho_j <= 1/eps (0 when rho_1 already exceeds it).
  /// Custom sequences certify divergence by probing the tail rule up to
  /// coordinate 10^7; past that throws "cannot certify divergence".
  std::uint64_t truncation_dimension(double eps) const;

 private:
  WeightSequence() = default;
  void init_log_cache();

  WeightFamily family_ = WeightFamily::kPolyGrowth;
  double s_ = 1.0;
  bool integer_s_ = true;
  std::vector<double> prefix_;       // custom only
  std::vector<double> prefix_log2_;  // custom only
  std::optional<TailRule> tail_;     // custom only
  std::string spec_;
  std::vector<double> log_cache_;  // log2 rho_j for small j, filled at build
};

}  // namespace lowerset
