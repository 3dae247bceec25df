#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lowerset {

using BigInt = mpz_class;

/// One additive partition of m written as part multiplicities
/// (N_1,...,N_m) with sum k*N_k = m.
struct PartitionVector {
  std::vector<std::uint32_t> counts;
};

/// Streams every element of Q_m = {(N_1,...,N_m) : sum k N_k = m} exactly
/// once, largest part descending.  m = 0 yields a single empty vector.
/// The span aliases internal state; copy if kept.
void enumerate_Qm(std::uint32_t m,
                  const std::function<void(std::span<const std::uint32_t>)>& visit);

/// Materialized Q_m, for tests and small m.
std::vector<PartitionVector> list_Qm(std::uint32_t m);

/// Additive partition number q(m), exact (dynamic program over parts).
BigInt partition_count(std::uint32_t m);

/// binomial(balls - 1 + boxes, balls): placements of indistinguishable
/// balls into distinguishable boxes.
BigInt balls_in_boxes(std::uint64_t balls, const BigInt& boxes);

/// #S_m = #{nu : rho*(1)^nu = 2^m}, by the partition sum
/// sum over Q_m of prod_k binom(N_k - 1 + #I_k, N_k).
BigInt count_Sm(std::uint32_t m);

/// (#S_0,...,#S_mmax) through the generating function
/// prod_k (1 - x^k)^{-#I_k}; an independent route used for deep horizons.
std::vector<BigInt> sm_table(std::uint32_t m_max);

/// #Lambda(2^{-m}, rho*(1)) = 1 + sum_{k<=m} #S_k.
BigInt exact_lambda_count(std::uint32_t m);
/// Cumulative counts for m = 0..m_max via sm_table.
std::vector<BigInt> lambda_count_table(std::uint32_t m_max);

/// mp(n): multisets of integers >= 2 with product n; mp(1) = 1.
BigInt multiplicative_partition_count(std::uint64_t n);

/// #Lambda(1/N, rho(1)) = sum_{k<=N} mp(k).
BigInt multiplicative_lambda_count(std::uint64_t N);

}  // namespace lowerset
