#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lowerset/construct.hpp"
#include "lowerset/multiindex.hpp"
#include "lowerset/weights.hpp"

namespace lowerset {

/// A model-class member represented through its Taylor coefficient norms:
/// a finite assignment nu -> ||t_nu|| >= 0, canonical order.
class SurrogateFunction {
 public:
  SurrogateFunction() = default;
  /// Canonicalizes; throws on negative coefficients or duplicate indices.
  static SurrogateFunction from_pairs(
      std::vector<std::pair<MultiIndex, double>> coeffs);

  const std::vector<std::pair<MultiIndex, double>>& coefficients() const {
    return coeffs_;
  }
  double coefficient(const MultiIndex& nu) const;
  std::size_t support_size() const { return coeffs_.size(); }

 private:
  std::vector<std::pair<MultiIndex, double>> coeffs_;
};

/// ||u||_{B_{rho,p}}: the l_p norm of (rho^nu ||t_nu||); max for p = inf.
double class_norm(const SurrogateFunction& u, const WeightSequence& seq,
                  double p);

/// E*_Lambda(u) = sum of coefficient norms outside lambda.
double surrogate_error(const SurrogateFunction& u, const LowerSet& lambda);

/// ||u||* (the surrogate norm; equals surrogate_error against the empty set).
double surrogate_norm(const SurrogateFunction& u);

/// A unit-ball member of B_{rho,p} realizing the worst-case surrogate error
/// against Lambda_{n,rho}: mass on the first support_budget indices outside
/// Lambda_n in weight order, Hoelder-extremal coefficients.  Requires p >= 1
/// and a summable tail for the conjugate q.
SurrogateFunction extremal_instance(const WeightSequence& seq, double p,
                                    std::uint64_t n,
                                    std::uint64_t support_budget,
                                    const BuildOptions& opt = {});

/// Scalar Taylor evaluation sum t_nu y^nu; coordinates past y.size() read
/// as 0.  Throws std::domain_error when |y_j| > 1.
double evaluate_taylor(const SurrogateFunction& u, std::span<const double> y);

}  // namespace lowerset
