#include "lowerset/partitions.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "lowerset/weights.hpp"

namespace lowerset {

namespace {

void enumerate_rec(std::uint32_t remaining, std::uint32_t max_part,
                   std::vector<std::uint32_t>& counts,
                   const std::function<void(std::span<const std::uint32_t>)>&
                       visit) {
  if (remaining == 0) {
    visit(counts);
    return;
  }
  for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[part - 1];
    enumerate_rec(remaining - part, part, counts, visit);
    --counts[part - 1];
  }
}

}  // namespace

void enumerate_Qm(
    std::uint32_t m,
    const std::function<void(std::span<const std::uint32_t>)>& visit) {
  std::vector<std::uint32_t> counts(m, 0);
  if (m == 0) {
    visit(counts);  // the empty partition
    return;
  }
  enumerate_rec(m, m, counts, visit);
}

std::vector<PartitionVector> list_Qm(std::uint32_t m) {
  std::vector<PartitionVector> out;
  enumerate_Qm(m, [&](std::span<const std::uint32_t> counts) {
    out.push_back(PartitionVector{{counts.begin(), counts.end()}});
  });
  return out;
}

BigInt partition_count(std::uint32_t m) {
  std::vector<BigInt> p(m + 1, 0);
  p[0] = 1;
  for (std::uint32_t part = 1; part <= m; ++part)
    for (std::uint32_t j = part; j <= m; ++j) p[j] += p[j - part];
  return p[m];
}

BigInt balls_in_boxes(std::uint64_t balls, const BigInt& boxes) {
  if (boxes <= 0) throw std::invalid_argument("need at least one box");
  // binomial(balls - 1 + boxes, balls), built incrementally so every
  // intermediate value is an exact binomial
  BigInt r = 1;
  for (std::uint64_t t = 1; t <= balls; ++t) {
    r *= boxes - 1 + BigInt(static_cast<unsigned long>(t));
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), t);
  }
  return r;
}

BigInt count_Sm(std::uint32_t m) {
  if (m == 0) return 1;
  BigInt total = 0;
  std::vector<mpz_class> box_sizes(m + 1);
  for (std::uint32_t k = 1; k <= m; ++k) box_sizes[k] = block_size(k);
  enumerate_Qm(m, [&](std::span<const std::uint32_t> counts) {
    BigInt prod = 1;
    for (std::uint32_t k = 1; k <= m; ++k) {
      if (counts[k - 1] == 0) continue;
      prod *= balls_in_boxes(counts[k - 1], box_sizes[k]);
    }
    total += prod;
  });
  return total;
}

std::vector<BigInt> sm_table(std::uint32_t m_max) {
  // coefficients of prod_{k>=1} (1 - x^k)^{-#I_k} up to degree m_max
  std::vector<BigInt> coeff(m_max + 1, 0);
  coeff[0] = 1;
  for (std::uint32_t k = 1; k <= m_max; ++k) {
    const BigInt boxes = block_size(k);
    // binomials C(N - 1 + #I_k, N) for N = 0..m_max/k
    std::vector<BigInt> binom{1};
    for (std::uint64_t n = 1; n * k <= m_max; ++n)
      binom.push_back(balls_in_boxes(n, boxes));
    std::vector<BigInt> next(m_max + 1, 0);
    for (std::uint32_t i = 0; i <= m_max; ++i) {
      if (coeff[i] == 0) continue;
      for (std::uint64_t n = 0; i + n * k <= m_max; ++n)
        next[i + n * k] += coeff[i] * binom[n];
    }
    coeff.swap(next);
  }
  return coeff;
}

BigInt exact_lambda_count(std::uint32_t m) {
  BigInt total = 1;
  for (std::uint32_t k = 1; k <= m; ++k) total += count_Sm(k);
  return total;
}

std::vector<BigInt> lambda_count_table(std::uint32_t m_max) {
  std::vector<BigInt> sm = sm_table(m_max);
  std::vector<BigInt> cum(m_max + 1);
  BigInt acc = 0;
  for (std::uint32_t m = 0; m <= m_max; ++m) {
    acc += sm[m];
    cum[m] = acc;
  }
  return cum;
}

namespace {

// Unordered factorizations of n into factors >= 2 bounded by `bound`.
BigInt mp_rec(std::uint64_t n, std::uint64_t bound,
              std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt>& memo) {
  if (n == 1) return 1;
  if (bound > n) bound = n;
  if (bound < 2) return 0;
  const auto key = std::make_pair(n, bound);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt total = 0;
  // choose the largest factor d <= bound, then factor n/d with factors <= d
  for (std::uint64_t i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    const std::uint64_t lo = i, hi = n / i;
    if (lo >= 2 && lo <= bound) total += mp_rec(n / lo, lo, memo);
    if (hi != lo && hi >= 2 && hi <= bound) total += mp_rec(n / hi, hi, memo);
  }
  memo[key] = total;
  return total;
}

}  // namespace

BigInt multiplicative_partition_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> memo;
  return mp_rec(n, n, memo);
}

BigInt multiplicative_lambda_count(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> memo;
  BigInt total = 0;
  for (std::uint64_t k = 1; k <= N; ++k) total += mp_rec(k, k, memo);
  return total;
}

}  // namespace lowerset
