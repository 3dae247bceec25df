#include "lowerset/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "lowerset/bounds.hpp"

namespace lowerset {

namespace {

constexpr double kTieTol = 1e-12;  // log2 units, float backend only

[[noreturn]] void refuse(std::uint64_t cap) {
  throw std::length_error("lower set would exceed the memory cap of " +
                          std::to_string(cap) +
                          " indices; raise --mem-cap to proceed");
}

}  // namespace

double DeltaSequence::value(std::uint64_t n) const {
  if (n == 0 || n > horizon)
    throw std::out_of_range("delta index outside certified horizon");
  return values[n - 1];
}

double a_priori_count_estimate(const WeightSequence& seq, double eps) {
  if (eps > 1.0) return 0.0;
  if (seq.family() == WeightFamily::kDyadicBlocks) {
    const double m = std::floor((std::log2(1.0 / eps) + 1e-9) / seq.s());
    if (m < 0) return 1.0;
    if (m > 4000) return std::numeric_limits<double>::infinity();
    return asymptotic_count_bound(static_cast<std::uint32_t>(m)).superimposed;
  }
  // The simplex bound; exponentially loose for polynomial growth.
  return count_upper_bound(seq, eps);
}

LowerSet build_lambda(const WeightSequence& seq, double eps,
                      const BuildOptions& opt) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("eps must be a positive real");
  if (eps > 1.0) return {};  // not even the zero index qualifies

  // The partition-count estimate is sharp enough to refuse up front; the
  // simplex estimate is not (see the B(d) example), so other families are
  // capped online while the levels grow.
  if (seq.family() == WeightFamily::kDyadicBlocks &&
      a_priori_count_estimate(seq, eps) >
          static_cast<double>(opt.max_indices)) {
    refuse(opt.max_indices);
  }

  const double inv_eps = 1.0 / eps;
  const std::uint64_t dim = seq.truncation_dimension(eps);

  std::vector<MultiIndex> members{MultiIndex{}};
  std::vector<MultiIndex> level{MultiIndex{}};
  std::unordered_set<MultiIndex, MultiIndexHash> seen;
  seen.insert(MultiIndex{});
  std::uint64_t total = 1;

  while (!level.empty()) {
    std::vector<MultiIndex> next;
    for (const auto& nu : level) {
      for (std::uint64_t j = 1; j <= dim; ++j) {
        MultiIndex mu = nu.plus_unit(static_cast<std::uint32_t>(j));
        // rho_j is non-decreasing, so admissible children form a prefix in j
        if (!seq.weight_within(mu, inv_eps)) break;
        if (seen.insert(mu).second) {
          if (++total > opt.max_indices) refuse(opt.max_indices);
          next.push_back(std::move(mu));
        }
      }
    }
    std::sort(next.begin(), next.end(), canonical_less);
    members.insert(members.end(), next.begin(), next.end());
    level = std::move(next);
  }

  std::sort(members.begin(), members.end(), canonical_less);
  return LowerSet::unchecked(std::move(members));
}

WeightOrdered enumerate_by_weight(const WeightSequence& seq,
                                  std::uint64_t count,
                                  const BuildOptions& opt) {
  WeightOrdered out;
  if (count == 0) return out;
  if (count > opt.max_indices) refuse(opt.max_indices);

  LowerSet lam;
  if (seq.family() == WeightFamily::kDyadicBlocks) {
    // exact class thresholds 2^{-ms}
    for (std::uint64_t m = 0;; ++m) {
      lam = build_lambda(seq, std::exp2(-static_cast<double>(m) * seq.s()),
                         opt);
      if (lam.size() >= count) {
        out.log2_threshold = static_cast<double>(m) * seq.s();
        break;
      }
    }
  } else {
    double eps = 1.0;
    lam = build_lambda(seq, eps, opt);
    while (lam.size() < count) {
      eps *= 0.5;
      lam = build_lambda(seq, eps, opt);
    }
    out.log2_threshold = -std::log2(eps);
  }

  const auto& mem = lam.members();
  const std::size_t n = mem.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  auto finish = [&](auto&& key_less, auto&& key_equal) {
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                if (key_less(a, b)) return true;
                if (key_less(b, a)) return false;
                return tie_break_less(mem[a], mem[b]);
              });
    out.indices.reserve(n);
    out.log2_weights.reserve(n);
    for (std::uint32_t i : order) {
      out.indices.push_back(mem[i]);
      out.log2_weights.push_back(seq.log2_weight(mem[i]));
    }
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == n || !key_equal(order[start], order[i])) {
        out.tie_classes.push_back({start, i - start});
        start = i;
      }
    }
  };

  if (seq.family() == WeightFamily::kDyadicBlocks) {
    std::vector<std::int64_t> key(n);
    for (std::size_t i = 0; i < n; ++i)
      key[i] = seq.dyadic_weight_exponent(mem[i]);
    finish([&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; },
           [&](std::uint32_t a, std::uint32_t b) { return key[a] == key[b]; });
  } else if (seq.has_exact_backend()) {
    std::vector<mpz_class> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = seq.exact_weight(mem[i]);
    finish([&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; },
           [&](std::uint32_t a, std::uint32_t b) { return key[a] == key[b]; });
  } else {
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = seq.log2_weight(mem[i]);
    // grouping is anchored at the class head; within a merged class the
    // order is (double, tie_break_less), which is deterministic
    finish([&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; },
           [&](std::uint32_t a, std::uint32_t b) {
             return std::abs(key[a] - key[b]) <= kTieTol;
           });
  }
  return out;
}

namespace {

DeltaSequence truncate_to_horizon(const WeightSequence& seq,
                                  const WeightOrdered& wo,
                                  std::uint64_t horizon) {
  DeltaSequence delta;
  delta.horizon = horizon;
  delta.generator = seq.spec_string();
  delta.values.reserve(horizon);
  delta.log2_weights.assign(wo.log2_weights.begin(),
                            wo.log2_weights.begin() + horizon);
  for (std::uint64_t i = 0; i < horizon; ++i)
    delta.values.push_back(std::exp2(-wo.log2_weights[i]));
  for (const auto& tc : wo.tie_classes) {
    if (tc.first >= horizon) break;
    delta.tie_classes.push_back(
        {tc.first, std::min(tc.count, horizon - tc.first)});
  }
  return delta;
}

}  // namespace

std::pair<LowerSet, DeltaSequence> build_lambda_n(const WeightSequence& seq,
                                                  std::uint64_t n,
                                                  const BuildOptions& opt) {
  if (n == 0) return {LowerSet{}, DeltaSequence{{}, {}, {}, 0,
                                                seq.spec_string()}};
  WeightOrdered wo = enumerate_by_weight(seq, n, opt);
  std::vector<MultiIndex> prefix(wo.indices.begin(), wo.indices.begin() + n);
  std::sort(prefix.begin(), prefix.end(), canonical_less);
  return {LowerSet::unchecked(std::move(prefix)),
          truncate_to_horizon(seq, wo, n)};
}

DeltaSequence delta_sequence(const WeightSequence& seq, std::uint64_t n_max,
                             const BuildOptions& opt) {
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  WeightOrdered wo = enumerate_by_weight(seq, n_max, opt);
  return truncate_to_horizon(seq, wo, n_max);
}

}  // namespace lowerset
