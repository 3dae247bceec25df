#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowerset/weights.hpp"

namespace lowerset {

/// Partial value of an infinite sum/product together with a certified bound
/// on what was omitted: the true value lies in [value, value + remainder].
struct Certified {
  double value = 0.0;
  double remainder = 0.0;

  double upper() const { return value + remainder; }
};

/// Relative target for certified tails (see --tol on the CLI).
inline constexpr double kDefaultRelTol = 1e-10;

/// delta_{n,q} = (sum_{j>n} delta_j^q)^{1/q} for q < inf, delta_{n+1} for
/// q = inf.  Throws std::domain_error("tail diverges") when the tail is not
/// summable.
Certified tail_norm(const WeightSequence& seq, std::uint64_t n, double q,
                    double rel_tol = kDefaultRelTol);

/// E*_{Lambda_{n,rho}}(U_{rho,p}) = delta_{n,q} with 1/p + 1/q = 1.
Certified surrogate_class_error(const WeightSequence& seq, std::uint64_t n,
                                double p, double rel_tol = kDefaultRelTol);

/// The two interpolation bounds for delta_{n,q}: via the Hoelder split
/// delta_{n+1}^{1-r/q} delta_{n,r}^{r/q} and via the counting estimate
/// (n+1)^{-1/r+1/q} ||(rho^{-nu})||_{l_r}.
struct InterpolationBounds {
  double via_holder = 0.0;
  double via_counting = 0.0;
};
InterpolationBounds interpolation_bound(const WeightSequence& seq,
                                        std::uint64_t n, double p, double r);

/// ||(rho^{-nu})||_{l_q} with the sandwich
/// e^{S} <= value^q <= e^{S/(1-rho_1^{-q})}, S = sum_j rho_j^{-q}.
struct LqSandwich {
  double value = 0.0;            // the l_q norm itself
  double value_q = 0.0;          // value^q = prod_j (1 - rho_j^{-q})^{-1}
  double lower_sandwich = 0.0;   // e^{S}
  double upper_sandwich = 0.0;   // e^{S/(1-rho_1^{-q})}
  double rel_remainder = 0.0;    // certified relative truncation of value_q
  double sum_rho_inv_q = 0.0;    // S with certified remainder folded in
  double sum_remainder = 0.0;
};
LqSandwich lq_norm_product(const WeightSequence& seq, double q,
                           double rel_tol = kDefaultRelTol);

/// Sum_j rho_j^{-q} with a certified remainder; throws when divergent.
Certified sum_rho_inverse_q(const WeightSequence& seq, double q);
bool rho_inverse_in_lq(const WeightSequence& seq, double q);

/// Simplex {x >= 0 : sum x_j / a_j <= 1} with a_j >= 1.
struct SimplexSpec {
  std::vector<double> sides;
};
double simplex_volume(const SimplexSpec& spec);
/// Volume lower bound and (1+a)^D-inflated upper bound for the lattice count.
std::pair<double, double> simplex_lattice_bounds(const SimplexSpec& spec);
/// Exact lattice count by direct enumeration (small specs).
std::uint64_t simplex_lattice_count(const SimplexSpec& spec);

/// #Lambda(eps, rho) <= (M+L)^D / (D! prod ln rho_j); 1 when D = 0.
double count_upper_bound(const WeightSequence& seq, double eps);

/// The deficiency example: B(d) for rho = (j+1), eps = 1/(d+1), with the
/// proven lower bound (1/(e sqrt(d))) (e/2)^d.
struct BdExample {
  double bd = 0.0;
  double lower_bound = 0.0;
};
BdExample bd_example(std::uint32_t d);

/// Constants of the asymptotic count bound.
double lemma52_C();       // (1 - 2^{-1/4})^{-1}
double lemma52_c();       // pi sqrt(2/3) / ln 2
double cor56_C_tilde();   // C (1 - c/4)^{-3/4}

/// Bounds on #Lambda(2^{-ms}, rho*(s)): the simple 2^{m+4 sqrt m}, the
/// refined C m^{-3/4} 2^{m+c sqrt m}, and their superimposed min rule
/// (exact values 1 and 3 at m = 0, 1).
struct AsymptoticCountBound {
  double superimposed = 0.0;
  double simple = 0.0;
  double refined = 0.0;
};
AsymptoticCountBound asymptotic_count_bound(std::uint32_t m);

/// delta_n(rho*(s)) <= 2^{-6s} n^{-s} n^{4s sqrt(4+log2 n)/log2 n}, n >= 2.
double cor53_bound(double s, std::uint64_t n);

/// delta_{n,q}(rho*(s)) <= C(q,s) n^{-s+1/q} n^{4s sqrt(4+log2 n)/log2 n};
/// requires s q > 1 (throws "series diverges" otherwise).
double cor54_bound(double s, double p, std::uint64_t n);
/// C_0(q,s): q-th root of sum_j 2^{-j(sq-1)} 2^{4sq sqrt j}, certified.
double cor54_C0(double s, double q);

/// Largest m with log2 C - (3/4) log2 m + m + c sqrt m <= log2 n.
/// Valid for n >= 2^16 (throws "below validity threshold").
std::uint32_t cor55_m_of_n(double n);

/// Index ceil(Ctilde n / (log2 n)^{3/4}) and the bound
/// 2^s n^{-s} n^{cs/sqrt(log2 n)}, n >= 2^16.
struct Cor56Bound {
  std::uint64_t index = 0;
  double bound = 0.0;
};
Cor56Bound cor56_bound(double s, double n);

/// Finite-dimensional comparison bound
/// C_sigma n exp(-(prod ln rho_i * n d!/(1+sigma))^{1/d}).
double tran_bound(std::span<const double> rho_prefix, double sigma,
                  std::uint64_t n, std::uint32_t d);
double tran_C_sigma(double sigma);

/// One evaluated bound, for CLI reports.
struct BoundReport {
  std::string name;
  std::string params;
  double bound = 0.0;
  std::optional<double> exact;
  std::optional<bool> dominated;
  double margin_ratio = 0.0;  // bound / exact when exact is known
};

}  // namespace lowerset
