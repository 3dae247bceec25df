#include "lowerset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lowerset/construct.hpp"
#include "lowerset/partitions.hpp"

namespace lowerset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_q(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

// term of big-integer magnitude times 2^{-shift}, without overflowing
double big_times_exp2(const BigInt& v, double shift) {
  long e2 = 0;
  const double d = mpz_get_d_2exp(&e2, v.get_mpz_t());
  return d * std::exp2(static_cast<double>(e2) - shift);
}

// The growth exponent governing summability of (rho_j^{-1}).
double effective_s(const WeightSequence& seq) {
  if (seq.family() != WeightFamily::kCustom) return seq.s();
  if (!seq.tail_rule())
    throw std::runtime_error(
        "cannot certify summability: custom sequence has no tail rule");
  return seq.tail_rule()->s;
}

struct TailBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Certified bracket for sum_{j>J} (j+1)^{-a} (convex decreasing terms):
// integral-plus-half-term from below, midpoint integral from above.
TailBracket poly_coordinate_tail(double a, double J) {
  TailBracket t;
  t.lower = std::pow(J + 2.0, 1.0 - a) / (a - 1.0) +
            0.5 * std::pow(J + 2.0, -a);
  t.upper = std::pow(J + 1.5, 1.0 - a) / (a - 1.0);
  if (t.upper < t.lower) t.upper = t.lower;  // fp guard
  return t;
}

// Exact block form for sum over coordinates j > J of 2^{-k(j) a}.
TailBracket dyadic_coordinate_tail(double a, std::uint64_t J) {
  const double x = std::exp2(-a);
  double total = 0.0;
  std::uint32_t k0;
  if (J == 0) {
    total += 2.0 * x;  // block 1 in full
    k0 = 1;
  } else {
    k0 = block_index(J);  // block containing J, possibly partial
    const std::uint64_t block_end = std::uint64_t{1} << k0;
    if (J < block_end)
      total += static_cast<double>(block_end - J) * std::pow(x, k0);
  }
  // full blocks beyond k0: sum_{k>k0} 2^{k-1} x^k = (2x)^{k0+1} / (2(1-2x))
  const double r = 2.0 * x;
  total += std::pow(r, static_cast<double>(k0) + 1.0) / (2.0 * (1.0 - r));
  return {total, total * (1.0 + 1e-14) + 1e-300};
}

}  // namespace

bool rho_inverse_in_lq(const WeightSequence& seq, double q) {
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  if (std::isinf(q)) return true;
  return effective_s(seq) * q > 1.0;
}

namespace {

// Certified bracket for sum_{j>J} rho_j^{-q}; for a custom sequence J must
// cover the prefix so the declared tail rule applies.
TailBracket rho_inv_q_tail(const WeightSequence& seq, double q,
                           std::uint64_t J) {
  switch (seq.family()) {
    case WeightFamily::kPolyGrowth:
      return poly_coordinate_tail(seq.s() * q, static_cast<double>(J));
    case WeightFamily::kDyadicBlocks:
      return dyadic_coordinate_tail(seq.s() * q, J);
    case WeightFamily::kCustom: {
      const double a = effective_s(seq) * q;
      if (seq.tail_rule()->family == WeightFamily::kDyadicBlocks)
        return dyadic_coordinate_tail(a, J);
      return poly_coordinate_tail(a, static_cast<double>(J));
    }
  }
  return {};
}

}  // namespace

Certified sum_rho_inverse_q(const WeightSequence& seq, double q) {
  if (!rho_inverse_in_lq(seq, q))
    throw std::domain_error("not in ell_q: sum of rho_j^{-q} diverges");
  std::uint64_t J = std::max<std::uint64_t>(64, seq.prefix_length());
  double partial = 0.0;
  std::uint64_t lo = 1;
  TailBracket tail{};
  for (int round = 0;; ++round) {
    for (std::uint64_t j = lo; j <= J; ++j)
      partial += std::exp2(-q * seq.log2_rho(j));
    lo = J + 1;
    tail = rho_inv_q_tail(seq, q, J);
    const double width = tail.upper - tail.lower;
    if (width <= kDefaultRelTol * (partial + tail.lower) || J >= (1u << 22))
      break;
    J *= 4;
  }
  return {partial + tail.lower, tail.upper - tail.lower};
}

LqSandwich lq_norm_product(const WeightSequence& seq, double q,
                           double rel_tol) {
  if (!(q > 0) || std::isinf(q))
    throw std::invalid_argument("q must be finite and positive");
  if (!rho_inverse_in_lq(seq, q))
    throw std::domain_error("not in ell_q: the product diverges");
  const Certified S = sum_rho_inverse_q(seq, q);

  double ln_partial = 0.0;
  double ln_rem = 0.0;
  std::uint64_t J = std::max<std::uint64_t>(64, seq.prefix_length());
  std::uint64_t lo = 1;
  while (true) {
    for (std::uint64_t j = lo; j <= J; ++j)
      ln_partial += -std::log1p(-std::exp2(-q * seq.log2_rho(j)));
    lo = J + 1;
    const double x_next = std::exp2(-q * seq.log2_rho(J + 1));
    ln_rem = rho_inv_q_tail(seq, q, J).upper / (1.0 - x_next);
    if (ln_rem <= rel_tol * ln_partial || J >= (1u << 22)) break;
    J *= 4;
  }

  LqSandwich out;
  out.sum_rho_inv_q = S.value;
  out.sum_remainder = S.remainder;
  out.value_q = std::exp(ln_partial);
  out.rel_remainder = std::expm1(ln_rem);
  out.value = std::exp(ln_partial / q);
  // conservative orientations: reported lower >= true e^S, reported upper
  // <= true e^{S/(1-rho_1^{-q})}, so asserting lower <= value_q <= upper
  // through these is valid
  out.lower_sandwich = std::exp(S.value + S.remainder);
  const double rho1_inv_q = std::exp2(-q * seq.log2_rho(1));
  out.upper_sandwich = std::exp(S.value / (1.0 - rho1_inv_q));
  return out;
}

namespace {

double majorant_term(double gap, double c, double m) {
  return std::pow(m, -0.75) * std::exp2(-m * gap + c * std::sqrt(m));
}

// Certified upper bound for sum_{m>M} m^{-3/4} 2^{m(1-sq)+c sqrt(m)}.
double majorant_tail(double sq, std::uint64_t M) {
  const double c = lemma52_c();
  const double gap = sq - 1.0;
  if (gap <= 0) return kInf;
  const double m_star =
      std::max(static_cast<double>(M + 1), std::pow(c / gap, 2.0));
  if (m_star > 5e7) return kInf;
  double total = 0.0;
  double m = static_cast<double>(M + 1);
  for (; m < m_star; m += 1.0) total += majorant_term(gap, c, m);
  const double ratio = std::exp2(-gap + c / (2.0 * std::sqrt(m)));
  total += majorant_term(gap, c, m) / (1.0 - ratio);
  return total;
}

Certified dyadic_tail_norm(const WeightSequence& seq, std::uint64_t n,
                           double q, double rel_tol) {
  const double sq = seq.s() * q;
  // locate the class containing rank n+1
  std::uint32_t m_table = 16;
  std::vector<BigInt> cum = lambda_count_table(m_table);
  const BigInt rank = BigInt(static_cast<unsigned long>(n)) + 1;
  while (cum.back() < rank) {
    m_table *= 2;
    if (m_table > 4096)
      throw std::length_error("rank too deep for the class table");
    cum = lambda_count_table(m_table);
  }
  std::uint32_t m_n = 0;
  while (cum[m_n] < rank) ++m_n;

  // exact enumeration depth: extend until the majorant tail certifies
  const double partial_lb = std::exp2(-(static_cast<double>(m_n) + 1.0) * sq);
  std::uint32_t M = m_n;
  while (majorant_tail(sq, M) > rel_tol * partial_lb && M < m_n + 600) M += 8;

  std::vector<BigInt> sm = sm_table(M);
  std::vector<BigInt> cum2(M + 1);
  BigInt acc = 0;
  for (std::uint32_t m = 0; m <= M; ++m) {
    acc += sm[m];
    cum2[m] = acc;
  }

  double sum_q = 0.0;
  {
    BigInt leftover = cum2[m_n] - BigInt(static_cast<unsigned long>(n));
    sum_q += big_times_exp2(leftover, static_cast<double>(m_n) * sq);
  }
  for (std::uint32_t m = m_n + 1; m <= M; ++m)
    sum_q += big_times_exp2(sm[m], static_cast<double>(m) * sq);

  const double rem_q = majorant_tail(sq, M) + sum_q * 1e-13;
  const double value = std::pow(sum_q, 1.0 / q);
  const double upper = std::pow(sum_q + rem_q, 1.0 / q);
  return {value, upper - value};
}

Certified enumerated_tail_norm(const WeightSequence& seq, std::uint64_t n,
                               double q, double rel_tol) {
  // Hoelder split: everything outside Lambda(1/T) is bounded through a
  // smaller exponent r with (rho_j^{-1}) in ell_r.
  const double r_min = 1.0 / effective_s(seq);
  const double r = 0.5 * (r_min + q);
  const LqSandwich nr = lq_norm_product(seq, r);
  const double nr_upper = nr.value_q * (1.0 + nr.rel_remainder);

  BuildOptions opt;
  opt.max_indices = 2'000'000;
  std::uint64_t horizon = std::max<std::uint64_t>(64, 2 * (n + 1));
  for (;;) {
    WeightOrdered wo = enumerate_by_weight(seq, horizon, opt);
    double sum_q = 0.0, sum_r = 0.0;
    for (std::size_t i = 0; i < wo.indices.size(); ++i) {
      if (i >= n) sum_q += std::exp2(-q * wo.log2_weights[i]);
      sum_r += std::exp2(-r * wo.log2_weights[i]);
    }
    const double uncaptured =
        std::max(nr_upper - sum_r * (1.0 - 1e-9), 0.0);
    const double rem_q =
        std::exp2(-(q - r) * wo.log2_threshold) * uncaptured +
        sum_q * 1e-13;
    if (rem_q <= rel_tol * sum_q || wo.indices.size() >= opt.max_indices ||
        horizon >= opt.max_indices) {
      const double value = std::pow(sum_q, 1.0 / q);
      const double upper = std::pow(sum_q + rem_q, 1.0 / q);
      return {value, upper - value};
    }
    horizon *= 4;
  }
}

}  // namespace

Certified tail_norm(const WeightSequence& seq, std::uint64_t n, double q,
                    double rel_tol) {
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  if (std::isinf(q)) {
    const DeltaSequence d = delta_sequence(seq, n + 1);
    return {d.value(n + 1), 0.0};
  }
  if (!rho_inverse_in_lq(seq, q))
    throw std::domain_error("tail diverges: (rho_j^{-1}) is not in ell_q");
  if (seq.family() == WeightFamily::kDyadicBlocks)
    return dyadic_tail_norm(seq, n, q, rel_tol);
  return enumerated_tail_norm(seq, n, q, rel_tol);
}

Certified surrogate_class_error(const WeightSequence& seq, std::uint64_t n,
                                double p, double rel_tol) {
  return tail_norm(seq, n, conjugate_q(p), rel_tol);
}

InterpolationBounds interpolation_bound(const WeightSequence& seq,
                                        std::uint64_t n, double p, double r) {
  const double q = conjugate_q(p);
  if (!(r > 0) || !(r < q))
    throw std::invalid_argument("r must lie in (0, q)");
  const double delta_next = tail_norm(seq, n, kInf).value;

  InterpolationBounds out;
  if (std::isinf(q)) {
    out.via_holder = delta_next;  // r/q -> 0 limit
    const LqSandwich nr = lq_norm_product(seq, r);
    const double norm_r =
        nr.value * std::pow(1.0 + nr.rel_remainder, 1.0 / r);
    out.via_counting =
        std::pow(static_cast<double>(n) + 1.0, -1.0 / r) * norm_r;
    return out;
  }
  const Certified dnr = tail_norm(seq, n, r);
  out.via_holder = std::pow(delta_next, 1.0 - r / q) *
                   std::pow(dnr.upper(), r / q);
  const LqSandwich nr = lq_norm_product(seq, r);
  const double norm_r = nr.value * std::pow(1.0 + nr.rel_remainder, 1.0 / r);
  out.via_counting =
      std::pow(static_cast<double>(n) + 1.0, 1.0 / q - 1.0 / r) * norm_r;
  return out;
}

double simplex_volume(const SimplexSpec& spec) {
  if (spec.sides.empty())
    throw std::invalid_argument("simplex needs at least one side");
  double vol = 1.0;
  for (std::size_t j = 0; j < spec.sides.size(); ++j) {
    if (!(spec.sides[j] >= 1.0))
      throw std::invalid_argument("simplex sides must be at least 1");
    vol *= spec.sides[j] / static_cast<double>(j + 1);
  }
  return vol;
}

std::pair<double, double> simplex_lattice_bounds(const SimplexSpec& spec) {
  const double vol = simplex_volume(spec);
  double a = 0.0;
  for (double side : spec.sides) a += 1.0 / side;
  const double upper =
      std::pow(1.0 + a, static_cast<double>(spec.sides.size())) * vol;
  return {vol, upper};
}

namespace {

std::uint64_t lattice_count_rec(std::span<const double> sides, double used) {
  if (sides.empty()) return 1;
  std::uint64_t total = 0;
  const double a = sides.front();
  for (std::uint64_t x = 0;; ++x) {
    const double next = used + static_cast<double>(x) / a;
    if (next > 1.0 + 1e-9) break;
    total += lattice_count_rec(sides.subspan(1), next);
  }
  return total;
}

}  // namespace

std::uint64_t simplex_lattice_count(const SimplexSpec& spec) {
  simplex_volume(spec);  // validates
  return lattice_count_rec(spec.sides, 0.0);
}

double count_upper_bound(const WeightSequence& seq, double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0,1]");
  const std::uint64_t D = seq.truncation_dimension(eps);
  if (D == 0) return 1.0;  // only nu = 0
  const double M = std::log(1.0 / eps);
  const double ln2 = std::numbers::ln2;

  double L = 0.0, sum_lnln = 0.0;
  if (seq.family() == WeightFamily::kDyadicBlocks) {
    // block closed forms keep this cheap for D = 2^K
    const std::uint32_t K = block_index(D);
    const double s = seq.s();
    const double sum_k = (static_cast<double>(K) - 1.0) * std::exp2(K) + 2.0;
    L = s * ln2 * sum_k;
    for (std::uint32_t k = 1; k <= K; ++k) {
      const double cnt = k == 1 ? 2.0 : std::exp2(static_cast<double>(k - 1));
      sum_lnln += cnt * std::log(s * ln2 * static_cast<double>(k));
    }
  } else {
    if (D > 100'000'000)
      throw std::length_error("count_upper_bound: dimension too large");
    for (std::uint64_t j = 1; j <= D; ++j) {
      const double lnr = seq.log2_rho(j) * ln2;
      L += lnr;
      sum_lnln += std::log(lnr);
    }
  }
  const double lnB = static_cast<double>(D) * std::log(M + L) -
                     std::lgamma(static_cast<double>(D) + 1.0) - sum_lnln;
  return std::exp(lnB);
}

BdExample bd_example(std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  const double dd = d;
  double sum_lnln = 0.0;
  for (std::uint32_t j = 1; j <= d; ++j)
    sum_lnln += std::log(std::log(static_cast<double>(j) + 1.0));
  const double lnB = dd * std::log(std::log(dd + 1.0) + std::lgamma(dd + 2.0)) -
                     std::lgamma(dd + 1.0) - sum_lnln;
  BdExample out;
  out.bd = std::exp(lnB);
  out.lower_bound =
      std::exp(-1.0 - 0.5 * std::log(dd) + dd * (1.0 - std::numbers::ln2));
  return out;
}

double lemma52_C() { return 1.0 / (1.0 - std::exp2(-0.25)); }

double lemma52_c() {
  return std::numbers::pi * std::sqrt(2.0 / 3.0) / std::numbers::ln2;
}

double cor56_C_tilde() {
  return lemma52_C() * std::pow(1.0 - lemma52_c() / 4.0, -0.75);
}

AsymptoticCountBound asymptotic_count_bound(std::uint32_t m) {
  AsymptoticCountBound out;
  const double md = m;
  out.simple = std::exp2(md + 4.0 * std::sqrt(md));
  out.refined = m == 0 ? kInf
                       : lemma52_C() * std::pow(md, -0.75) *
                             std::exp2(md + lemma52_c() * std::sqrt(md));
  if (m == 0)
    out.superimposed = 1.0;  // exact
  else if (m == 1)
    out.superimposed = 3.0;  // exact
  else if (m <= 5)
    out.superimposed = out.simple;
  else
    out.superimposed = out.refined;
  return out;
}

double cor53_bound(double s, std::uint64_t n) {
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  if (n < 2) throw std::invalid_argument("bound is stated for n >= 2");
  const double k = std::log2(static_cast<double>(n));
  return std::exp2(s * (-6.0 - k + 4.0 * std::sqrt(4.0 + k)));
}

namespace {

// log2 of sum_{j>=0} 2^{-j(sq-1)+4sq sqrt j}, certified to kDefaultRelTol.
double cor54_series_log2(double s, double q) {
  const double gap = s * q - 1.0;
  if (gap <= 0) throw std::domain_error("series diverges: needs s q > 1");
  const double amp = 4.0 * s * q;
  auto term_log2 = [&](double j) { return -j * gap + amp * std::sqrt(j); };
  const double j_peak = std::pow(amp / (2.0 * gap), 2.0);
  const double shift = term_log2(j_peak);
  double sum = 0.0;
  double j = 0.0;
  for (;; j += 1.0) {
    sum += std::exp2(term_log2(j) - shift);
    if (j > j_peak) {
      // ratio bound 2^{-gap + amp/(2 sqrt j)} certifies the geometric tail
      const double ratio = std::exp2(-gap + amp / (2.0 * std::sqrt(j + 1.0)));
      if (ratio < 1.0) {
        const double rem =
            std::exp2(term_log2(j + 1.0) - shift) / (1.0 - ratio);
        if (rem <= kDefaultRelTol * sum) {
          sum += rem;
          break;
        }
      }
    }
    if (j > 1e7) break;  // unreachable for sane (s,q)
  }
  return shift + std::log2(sum);
}

}  // namespace

double cor54_C0(double s, double q) {
  return std::exp2(cor54_series_log2(s, q) / q);
}

double cor54_bound(double s, double p, std::uint64_t n) {
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("bound is stated for p > 1");
  if (n < 2) throw std::invalid_argument("bound is stated for n >= 2");
  const double q = conjugate_q(p);
  const double log2_C0 = cor54_series_log2(s, q) / q;
  // C(q,s) = 2^{s-1/q} C_1, C_1 = 2^{-5s-1/q} C_0
  const double log2_C = (s - 1.0 / q) + (-5.0 * s - 1.0 / q) + log2_C0;
  const double k = std::log2(static_cast<double>(n));
  return std::exp2(log2_C + (-s + 1.0 / q) * k +
                   4.0 * s * std::sqrt(4.0 + k));
}

std::uint32_t cor55_m_of_n(double n) {
  if (!(n >= 65536.0))
    throw std::domain_error("below validity threshold: needs n >= 2^16");
  const double k = std::log2(n);
  const double log2C = std::log2(lemma52_C());
  const double c = lemma52_c();
  auto lhs = [&](double m) {
    return log2C - 0.75 * std::log2(m) + m + c * std::sqrt(m);
  };
  std::uint32_t m = 1;
  while (lhs(static_cast<double>(m) + 1.0) <= k && m < 10'000'000) ++m;
  return m;
}

Cor56Bound cor56_bound(double s, double n) {
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  if (!(n >= 65536.0))
    throw std::domain_error("below validity threshold: needs n >= 2^16");
  const double k = std::log2(n);
  Cor56Bound out;
  out.index = static_cast<std::uint64_t>(
      std::ceil(cor56_C_tilde() * n / std::pow(k, 0.75)));
  out.bound = std::exp2(s * (1.0 - k + lemma52_c() * std::sqrt(k)));
  return out;
}

double tran_C_sigma(double sigma) {
  const double e = std::numbers::e;
  return (4.0 * e + 4.0 * sigma * e - 2.0) * e / (e - 1.0);
}

double tran_bound(std::span<const double> rho_prefix, double sigma,
                  std::uint64_t n, std::uint32_t d) {
  if (d == 0 || rho_prefix.size() != d)
    throw std::invalid_argument("rho prefix must have length d");
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  double sum_lnln = 0.0;
  for (double r : rho_prefix) {
    if (!(r > 1.0))
      throw std::invalid_argument("prefix weights must exceed 1");
    sum_lnln += std::log(std::log(r));
  }
  const double ln_arg =
      (sum_lnln + std::log(static_cast<double>(n)) +
       std::lgamma(static_cast<double>(d) + 1.0) - std::log1p(sigma)) /
      static_cast<double>(d);
  return tran_C_sigma(sigma) * static_cast<double>(n) *
         std::exp(-std::exp(ln_arg));
}

}  // namespace lowerset
