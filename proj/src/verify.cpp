#include "lowerset/verify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lowerset/bounds.hpp"
#include "lowerset/construct.hpp"
#include "lowerset/numfmt.hpp"
#include "lowerset/partitions.hpp"
#include "lowerset/surrogate.hpp"

namespace lowerset {

namespace {

constexpr double kInfP = std::numeric_limits<double>::infinity();
constexpr double kInfQ = std::numeric_limits<double>::infinity();

constexpr std::uint64_t kTable1[11] = {1,   3,   8,    20,   50,  122,
                                       298, 718, 1723, 4101, 9712};

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail = {}) {
  out.push_back({name, pass, detail});
}

double big_to_double(const BigInt& v) { return mpz_get_d(v.get_mpz_t()); }

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::span<const std::uint64_t> reference_cardinalities() {
  return {kTable1, 11};
}

std::vector<CheckResult> verify_table1() {
  std::vector<CheckResult> out;
  for (std::uint32_t m = 0; m <= 10; ++m) {
    const BigInt counted = exact_lambda_count(m);
    const bool ok = counted == BigInt(static_cast<unsigned long>(kTable1[m]));
    add(out, "table1 cardinality m=" + std::to_string(m), ok,
        "computed " + counted.get_str());
  }
  // thresholds 2^{-ms} must be the exact dyadic values, bitwise
  for (int s = 1; s <= 4; ++s) {
    bool ok = true;
    for (int m = 0; m <= 10; ++m)
      ok = ok && std::exp2(-static_cast<double>(m) * s) == std::ldexp(1.0, -m * s);
    add(out, "table1 thresholds s=" + std::to_string(s), ok);
  }
  // the enumerated delta sequence must realize exactly the same classes
  for (int s = 1; s <= 4; ++s) {
    const WeightSequence seq = WeightSequence::dyadic_blocks(s);
    const DeltaSequence d = delta_sequence(seq, kTable1[10]);
    bool ok = d.value(1) == 1.0;
    for (int m = 1; m <= 10; ++m) {
      const std::uint64_t first_rank = kTable1[m - 1] + 1;  // class m begins
      ok = ok && d.value(first_rank) == std::ldexp(1.0, -m * s);
      ok = ok && d.value(kTable1[m]) == std::ldexp(1.0, -m * s);
    }
    add(out, "table1 delta classes s=" + std::to_string(s), ok);
  }
  return out;
}

std::vector<CheckResult> verify_oracle() {
  std::vector<CheckResult> out;
  {
    const WeightSequence dy = WeightSequence::dyadic_blocks(1.0);
    bool ok = true;
    std::string detail;
    for (std::uint32_t m = 0; m <= 12; ++m) {
      const auto lam = build_lambda(dy, std::exp2(-static_cast<double>(m)));
      const BigInt formula = exact_lambda_count(m);
      if (BigInt(static_cast<unsigned long>(lam.size())) != formula) {
        ok = false;
        detail = "m=" + std::to_string(m) + ": tree " +
                 std::to_string(lam.size()) + " vs formula " +
                 formula.get_str();
        break;
      }
    }
    add(out, "oracle: partition formula vs tree search (m <= 12)", ok, detail);
  }
  {
    const WeightSequence po = WeightSequence::poly_growth(1.0);
    bool ok = true;
    std::string detail;
    for (std::uint64_t N = 1; N <= 200; ++N) {
      const auto lam = build_lambda(po, 1.0 / static_cast<double>(N));
      const BigInt formula = multiplicative_lambda_count(N);
      if (BigInt(static_cast<unsigned long>(lam.size())) != formula) {
        ok = false;
        detail = "N=" + std::to_string(N) + ": tree " +
                 std::to_string(lam.size()) + " vs formula " +
                 formula.get_str();
        break;
      }
    }
    add(out, "oracle: multiplicative partitions vs tree search (N <= 200)", ok,
        detail);
  }
  {
    bool ok = true;
    for (std::uint32_t m = 0; m <= 40 && ok; ++m) {
      std::uint64_t streamed = 0;
      enumerate_Qm(m, [&](std::span<const std::uint32_t>) { ++streamed; });
      ok = BigInt(static_cast<unsigned long>(streamed)) == partition_count(m);
    }
    add(out, "oracle: partition enumeration vs dynamic program (m <= 40)", ok);
  }
  {
    const auto table = sm_table(30);
    bool ok = true;
    for (std::uint32_t m = 0; m <= 30 && ok; ++m)
      ok = table[m] == count_Sm(m);
    add(out, "oracle: #S_m generating function vs partition sum (m <= 30)",
        ok);
  }
  return out;
}

std::vector<CheckResult> verify_domination() {
  std::vector<CheckResult> out;
  {
    bool ok = true;
    std::string detail;
    for (std::uint32_t m = 2; m <= 12; ++m) {
      const double bound = asymptotic_count_bound(m).superimposed;
      const double exact = big_to_double(exact_lambda_count(m));
      if (!(bound >= exact)) {
        ok = false;
        detail = "violated at m=" + std::to_string(m);
      }
    }
    add(out, "domination: count bound vs exact count (2 <= m <= 12)", ok,
        detail);
  }
  for (int s = 1; s <= 4; ++s) {
    const WeightSequence seq = WeightSequence::dyadic_blocks(s);
    const DeltaSequence d = delta_sequence(seq, kTable1[10]);
    bool ok = true;
    std::string detail;
    for (std::uint64_t n = 2; n <= kTable1[10]; ++n) {
      if (!(cor53_bound(s, n) >= d.value(n))) {
        ok = false;
        detail = "violated at n=" + std::to_string(n);
        break;
      }
    }
    add(out, "domination: delta rate bound, s=" + std::to_string(s), ok,
        detail);
  }
  {
    bool ok = true;
    std::size_t instances = 0;
    std::string detail;
    auto probe = [&](const WeightSequence& seq, double eps) {
      const double bound = count_upper_bound(seq, eps);
      const double exact = static_cast<double>(build_lambda(seq, eps).size());
      ++instances;
      if (!(bound >= exact)) {
        ok = false;
        detail = seq.spec_string() + " eps=" + format_double(eps);
      }
    };
    for (double inv : {2.0, 3.0, 6.0, 10.0, 20.0, 40.0}) {
      probe(WeightSequence::poly_growth(1.0), 1.0 / inv);
      probe(WeightSequence::poly_growth(2.0), 1.0 / inv);
    }
    for (int m = 1; m <= 6; ++m) {
      probe(WeightSequence::dyadic_blocks(1.0), std::ldexp(1.0, -m));
      probe(WeightSequence::dyadic_blocks(2.0), std::ldexp(1.0, -2 * m));
    }
    probe(WeightSequence::custom({1.5, 2.0, 4.0, 4.0},
                                 TailRule{WeightFamily::kPolyGrowth, 1.0}),
          0.2);
    add(out,
        "domination: simplex count bound on " + std::to_string(instances) +
            " instances",
        ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    struct Case {
      double s, p;
      std::uint64_t n;
    };
    for (const Case& c : {Case{2, 2, 8}, Case{2, 2, 64}, Case{3, kInfP, 50},
                          Case{2, 4, 20}}) {
      const WeightSequence seq = WeightSequence::dyadic_blocks(c.s);
      const Certified exact = surrogate_class_error(seq, c.n, c.p);
      const double bound = cor54_bound(c.s, c.p, c.n);
      if (!(bound >= exact.upper())) {
        ok = false;
        detail = "violated at s=" + format_double(c.s) +
                 " p=" + format_double(c.p) + " n=" + std::to_string(c.n);
      }
    }
    add(out, "domination: tail-norm rate bound (general p)", ok, detail);
  }
  {
    bool ok = true;
    for (std::uint32_t m = 1; m <= 40 && ok; ++m) {
      BigInt cap = partition_count(m);
      cap <<= m;  // 2^m q(m)
      ok = count_Sm(m) <= cap;
    }
    add(out, "domination: #S_m <= 2^m q(m) (m <= 40)", ok);
  }
  {
    bool ok = true;
    std::string detail;
    for (std::uint32_t d = 1; d <= 30; ++d) {
      const BdExample b = bd_example(d);
      if (!(b.bd >= b.lower_bound)) {
        ok = false;
        detail = "lower bound fails at d=" + std::to_string(d);
      }
    }
    for (std::uint32_t d = 1; d <= 10; ++d) {
      const BdExample b = bd_example(d);
      const double exact = big_to_double(multiplicative_lambda_count(d + 1));
      if (!(b.bd >= exact)) {
        ok = false;
        detail = "exact count exceeds B(d) at d=" + std::to_string(d);
      }
    }
    add(out, "domination: B(d) example (d <= 30, exact for d <= 10)", ok,
        detail);
  }
  {
    bool ok = true;
    std::string detail;
    struct Case {
      const char* rho;
      std::uint64_t n;
      double p, r;
    };
    for (const Case& c :
         {Case{"dyadic:s=2", 8, 2.0, 1.0}, Case{"dyadic:s=2", 3, 1.0, 1.0},
          Case{"dyadic:s=3", 20, 2.0, 0.75}, Case{"poly:s=2", 10, 2.0, 1.0}}) {
      const WeightSequence seq = WeightSequence::parse(c.rho);
      const InterpolationBounds ib = interpolation_bound(seq, c.n, c.p, c.r);
      const Certified exact = surrogate_class_error(seq, c.n, c.p);
      if (!(ib.via_holder >= exact.value * (1.0 - 1e-9)) ||
          !(ib.via_counting >= exact.value * (1.0 - 1e-9))) {
        ok = false;
        detail = std::string(c.rho) + " n=" + std::to_string(c.n);
      }
    }
    add(out, "domination: interpolation bounds dominate the tail norm", ok,
        detail);
  }
  return out;
}

std::vector<CheckResult> verify_sandwich() {
  std::vector<CheckResult> out;
  struct Case {
    const char* rho;
    double q;
  };
  const Case grid[12] = {
      {"poly:s=1", 2},   {"poly:s=1", 3},   {"poly:s=2", 1},
      {"poly:s=2", 2},   {"poly:s=3", 1},   {"poly:s=3", 2},
      {"dyadic:s=1", 2}, {"dyadic:s=1", 3}, {"dyadic:s=2", 1},
      {"dyadic:s=2", 2}, {"dyadic:s=3", 1}, {"dyadic:s=4", 2}};
  for (const Case& c : grid) {
    const WeightSequence seq = WeightSequence::parse(c.rho);
    const LqSandwich lq = lq_norm_product(seq, c.q);
    const bool certified =
        lq.rel_remainder < 1e-10 && lq.sum_remainder < 1e-10 * lq.sum_rho_inv_q;
    // conservative interval checks (see lq_norm_product)
    const bool lower_ok = lq.lower_sandwich <= lq.value_q;
    const bool upper_ok =
        lq.value_q * (1.0 + lq.rel_remainder) <= lq.upper_sandwich;
    std::ostringstream detail;
    detail << "value^q=" << format_double(lq.value_q) << " in ["
           << format_double(lq.lower_sandwich) << ", "
           << format_double(lq.upper_sandwich) << "]";
    add(out,
        std::string("sandwich: ") + c.rho + " q=" + format_double(c.q),
        certified && lower_ok && upper_ok, detail.str());
  }
  return out;
}

std::vector<CheckResult> verify_bracket() {
  std::vector<CheckResult> out;
  bool ok = true;
  std::size_t cases = 0;
  std::string detail;
  std::vector<double> sides;
  auto run = [&](auto&& self, std::uint32_t depth_left) -> void {
    if (!sides.empty()) {
      const SimplexSpec spec{sides};
      const auto [lo, hi] = simplex_lattice_bounds(spec);
      const double exact =
          static_cast<double>(simplex_lattice_count(spec));
      ++cases;
      if (!(lo <= exact + 1e-9) || !(exact <= hi + 1e-9)) {
        ok = false;
        std::ostringstream msg;
        msg << "sides";
        for (double a : sides) msg << ' ' << a;
        msg << ": " << lo << " <= " << exact << " <= " << hi << " fails";
        detail = msg.str();
      }
    }
    if (depth_left == 0) return;
    for (int a = 1; a <= 6; ++a) {
      sides.push_back(a);
      self(self, depth_left - 1);
      sides.pop_back();
    }
  };
  run(run, 4);
  add(out,
      "bracket: lattice counts inside simplex bounds (" +
          std::to_string(cases) + " simplices)",
      ok, detail);
  return out;
}

std::vector<CheckResult> verify_surrogate(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const WeightSequence seq = WeightSequence::dyadic_blocks(2.0);

  for (const std::uint64_t n : {1ull, 3ull, 8ull, 20ull}) {
    {  // p = 1, budget 1: exact equality with delta_{n+1}
      const SurrogateFunction u = extremal_instance(seq, 1.0, n, 1);
      const auto [lam, d] = build_lambda_n(seq, n);
      const double gap = std::abs(surrogate_error(u, lam) -
                                  tail_norm(seq, n, kInfQ).value);
      const bool norm_ok = class_norm(u, seq, 1.0) <= 1.0 + 1e-12;
      add(out, "sharpness: p=1 budget=1 n=" + std::to_string(n),
          gap == 0.0 && norm_ok, "gap " + format_double(gap));
    }
    for (const double p : {2.0, kInfP}) {
      const double q = std::isinf(p) ? 1.0 : 2.0;
      const std::uint64_t budget = 10'000;
      const SurrogateFunction u = extremal_instance(seq, p, n, budget);
      const auto [lam, d] = build_lambda_n(seq, n);
      const double err = surrogate_error(u, lam);
      const Certified delta = tail_norm(seq, n, q);
      // the instance is the truncated extremal sequence, so its error must
      // sit inside the certified budget-truncation window below delta_{n,q}
      const Certified beyond = tail_norm(seq, n + budget, q);
      const double window =
          std::pow(std::pow(err, q) + std::pow(beyond.upper(), q), 1.0 / q) -
          err;
      const bool below = err <= delta.upper() * (1.0 + 1e-12);
      const bool close = delta.value <= err + window + delta.remainder +
                                            1e-12 * delta.value;
      const bool norm_ok = class_norm(u, seq, p) <= 1.0 + 1e-12;
      std::ostringstream detail;
      detail << "err=" << format_double(err)
             << " delta=" << format_double(delta.value)
             << " rel gap=" << format_double((delta.value - err) /
                                             delta.value);
      add(out,
          "sharpness: p=" + format_double(p) + " n=" + std::to_string(n) +
              " budget=" + std::to_string(budget),
          below && close && norm_ok, detail.str());
    }
  }

  {  // Monte Carlo: truncation error never exceeds the surrogate error
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> coord(1, 6);
    std::uniform_int_distribution<std::uint32_t> expo(1, 3);
    std::uniform_int_distribution<std::uint32_t> nsup(1, 12);
    std::uniform_int_distribution<std::uint64_t> ncut(1, 40);
    const WeightSequence seqs[4] = {
        WeightSequence::poly_growth(1.0), WeightSequence::poly_growth(2.0),
        WeightSequence::dyadic_blocks(1.0), WeightSequence::dyadic_blocks(2.0)};
    bool ok = true;
    double worst_margin = kInfP;
    for (int inst = 0; inst < 50 && ok; ++inst) {
      std::vector<std::pair<MultiIndex, double>> coeffs;
      std::unordered_set<MultiIndex, MultiIndexHash> used;
      const std::uint32_t k = nsup(rng);
      for (std::uint32_t i = 0; i < k; ++i) {
        std::vector<MultiIndex::Entry> entries;
        const std::uint32_t parts = 1 + (rng() % 3);
        for (std::uint32_t t = 0; t < parts; ++t)
          entries.emplace_back(coord(rng), expo(rng));
        MultiIndex nu = MultiIndex::from_entries(std::move(entries));
        if (used.insert(nu).second)
          coeffs.emplace_back(std::move(nu), unit(rng));
      }
      const SurrogateFunction u =
          SurrogateFunction::from_pairs(std::move(coeffs));
      const auto [lam, d] = build_lambda_n(seqs[inst % 4], ncut(rng));
      const double budget = surrogate_error(u, lam);

      // the residual after truncating to lam, evaluated directly
      std::vector<std::pair<MultiIndex, double>> outside;
      for (const auto& [nu, c] : u.coefficients())
        if (!lam.contains(nu)) outside.emplace_back(nu, c);
      const SurrogateFunction residual =
          SurrogateFunction::from_pairs(std::move(outside));

      double sup_err = 0.0;
      double y[6];
      for (int sample = 0; sample < 10'000; ++sample) {
        for (double& v : y) v = box(rng);
        sup_err = std::max(sup_err, std::abs(evaluate_taylor(residual, y)));
      }
      if (!(sup_err <= budget + 1e-12)) ok = false;
      worst_margin = std::min(worst_margin, budget - sup_err);
    }
    add(out, "monte carlo: sup-norm truncation error under surrogate error",
        ok,
        "50 instances x 10^4 samples, seed " + std::to_string(seed) +
            ", smallest margin " + format_double(worst_margin));
  }
  return out;
}

}  // namespace lowerset
