#include "lowerset/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lowerset/bounds.hpp"

namespace lowerset {

SurrogateFunction SurrogateFunction::from_pairs(
    std::vector<std::pair<MultiIndex, double>> coeffs) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) {
              return canonical_less(a.first, b.first);
            });
  SurrogateFunction u;
  u.coeffs_.reserve(coeffs.size());
  for (auto& [nu, c] : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("coefficient norms must be nonnegative");
    if (!u.coeffs_.empty() && u.coeffs_.back().first == nu)
      throw std::invalid_argument("duplicate index in coefficient list");
    if (c > 0.0) u.coeffs_.emplace_back(std::move(nu), c);
  }
  return u;
}

double SurrogateFunction::coefficient(const MultiIndex& nu) const {
  for (const auto& [mu, c] : coeffs_)
    if (mu == nu) return c;
  return 0.0;
}

double class_norm(const SurrogateFunction& u, const WeightSequence& seq,
                  double p) {
  if (!(p > 0)) throw std::invalid_argument("p must be positive");
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& [nu, c] : u.coefficients())
      best = std::max(best, std::exp2(seq.log2_weight(nu)) * c);
    return best;
  }
  double acc = 0.0;
  for (const auto& [nu, c] : u.coefficients())
    acc += std::pow(std::exp2(seq.log2_weight(nu)) * c, p);
  return std::pow(acc, 1.0 / p);
}

double surrogate_error(const SurrogateFunction& u, const LowerSet& lambda) {
  double acc = 0.0;
  for (const auto& [nu, c] : u.coefficients())
    if (!lambda.contains(nu)) acc += c;
  return acc;
}

double surrogate_norm(const SurrogateFunction& u) {
  double acc = 0.0;
  for (const auto& [nu, c] : u.coefficients()) acc += c;
  return acc;
}

SurrogateFunction extremal_instance(const WeightSequence& seq, double p,
                                    std::uint64_t n,
                                    std::uint64_t support_budget,
                                    const BuildOptions& opt) {
  if (!(p >= 1.0))
    throw std::invalid_argument("extremal instances are defined for p >= 1");
  if (support_budget == 0)
    throw std::invalid_argument("support budget must be positive");
  const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0));
  if (!std::isinf(q) && !rho_inverse_in_lq(seq, q))
    throw std::domain_error("tail diverges: delta_{n,q} is not finite");

  const std::uint64_t want = n + (p == 1.0 ? 1 : support_budget);
  WeightOrdered wo = enumerate_by_weight(seq, want, opt);
  const std::size_t last =
      std::min<std::size_t>(wo.indices.size(), n + support_budget);

  std::vector<std::pair<MultiIndex, double>> coeffs;
  if (p == 1.0) {
    // all mass on the heaviest tail index
    coeffs.emplace_back(wo.indices[n], std::exp2(-wo.log2_weights[n]));
  } else if (std::isinf(p)) {
    for (std::size_t i = n; i < last; ++i)
      coeffs.emplace_back(wo.indices[i], std::exp2(-wo.log2_weights[i]));
  } else {
    // c_nu proportional to rho^{-nu q/p}, normalized in l_p, so that
    // ||t_nu|| = c_nu rho^{-nu} sums to the truncated delta_{n,q}
    double denom_q = 0.0;
    for (std::size_t i = n; i < last; ++i)
      denom_q += std::exp2(-q * wo.log2_weights[i]);
    const double scale = std::pow(denom_q, 1.0 / p);
    for (std::size_t i = n; i < last; ++i)
      coeffs.emplace_back(wo.indices[i],
                          std::exp2(-q * wo.log2_weights[i]) / scale);
  }
  return SurrogateFunction::from_pairs(std::move(coeffs));
}

double evaluate_taylor(const SurrogateFunction& u, std::span<const double> y) {
  for (double v : y)
    if (!(std::abs(v) <= 1.0))
      throw std::domain_error("evaluation point outside Y = [-1,1]^N");
  double acc = 0.0;
  for (const auto& [nu, c] : u.coefficients()) {
    double mono = 1.0;
    for (const auto& [coord, exp] : nu.entries()) {
      const double yj = coord <= y.size() ? y[coord - 1] : 0.0;
      if (yj == 0.0) {
        mono = 0.0;
        break;
      }
      mono *= std::pow(yj, static_cast<double>(exp));
    }
    acc += c * mono;
  }
  return acc;
}

}  // namespace lowerset
