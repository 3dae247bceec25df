#include "lowerset/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "lowerset/numfmt.hpp"

namespace lowerset {

namespace {

constexpr double kLogTieTol = 1e-12;   // declared tie tolerance, log2 units
constexpr double kLogFastBand = 1e-9;  // outside this band no exact check
constexpr std::uint64_t kProbeBudget = 10'000'000;
constexpr std::size_t kLogCacheSize = 4096;

bool is_small_integer(double s) {
  return s > 0 && s <= 64 && s == std::floor(s);
}

}  // namespace

std::uint32_t block_index(std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("coordinates start at 1");
  if (j <= 2) return 1;
  return static_cast<std::uint32_t>(std::bit_width(j - 1));
}

mpz_class block_size(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("blocks start at 1");
  if (k == 1) return 2;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k - 1);
  return out;
}

WeightSequence WeightSequence::poly_growth(double s) {
  if (!(s > 0)) throw std::invalid_argument("poly growth needs s > 0");
  WeightSequence seq;
  seq.family_ = WeightFamily::kPolyGrowth;
  seq.s_ = s;
  seq.integer_s_ = is_small_integer(s);
  seq.spec_ = "poly:s=" + format_double(s);
  seq.init_log_cache();
  return seq;
}

WeightSequence WeightSequence::dyadic_blocks(double s) {
  if (!(s > 0)) throw std::invalid_argument("dyadic blocks needs s > 0");
  WeightSequence seq;
  seq.family_ = WeightFamily::kDyadicBlocks;
  seq.s_ = s;
  seq.integer_s_ = is_small_integer(s);
  seq.spec_ = "dyadic:s=" + format_double(s);
  return seq;
}

WeightSequence WeightSequence::custom(std::vector<double> prefix,
                                      std::optional<TailRule> tail) {
  if (prefix.empty())
    throw std::invalid_argument("custom sequence needs at least one value");
  if (!(prefix.front() > 1.0))
    throw std::invalid_argument("not admissible: rho_1 must exceed 1");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!std::isfinite(prefix[i]) || prefix[i] <= 0)
      throw std::invalid_argument("custom sequence values must be finite");
    if (i > 0 && prefix[i] < prefix[i - 1])
      throw std::invalid_argument(
          "not admissible: sequence must be non-decreasing");
  }
  WeightSequence seq;
  seq.family_ = WeightFamily::kCustom;
  seq.s_ = tail ? tail->s : 0.0;
  seq.integer_s_ = false;
  seq.prefix_ = std::move(prefix);
  seq.tail_ = tail;
  seq.prefix_log2_.reserve(seq.prefix_.size());
  for (double v : seq.prefix_) seq.prefix_log2_.push_back(std::log2(v));
  if (tail) {
    if (!(tail->s > 0))
      throw std::invalid_argument("tail rule needs s > 0");
    if (tail->family == WeightFamily::kCustom)
      throw std::invalid_argument("tail rule must be poly or dyadic");
    // formula value at the first tail coordinate must keep monotonicity
    const std::uint64_t j0 = seq.prefix_.size() + 1;
    const double first =
        tail->family == WeightFamily::kPolyGrowth
            ? std::pow(static_cast<double>(j0) + 1.0, tail->s)
            : std::exp2(block_index(j0) * tail->s);
    if (first < seq.prefix_.back())
      throw std::invalid_argument(
          "not admissible: tail rule dips below the prefix");
  }
  seq.spec_ = "custom:prefix[" + std::to_string(seq.prefix_.size()) + "]";
  if (tail) {
    seq.spec_ += tail->family == WeightFamily::kPolyGrowth ? "+tail poly:s="
                                                           : "+tail dyadic:s=";
    seq.spec_ += format_double(tail->s);
  }
  return seq;
}

WeightSequence WeightSequence::parse(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  auto need_value = [&](const std::string& key) {
    if (rest.rfind(key + "=", 0) != 0)
      throw std::invalid_argument("bad weight spec '" + spec + "' (expected " +
                                  head + ":" + key + "=...)");
    return rest.substr(key.size() + 1);
  };
  if (head == "poly") return poly_growth(std::stod(need_value("s")));
  if (head == "dyadic") return dyadic_blocks(std::stod(need_value("s")));
  if (head == "custom") {
    const std::string path = need_value("file");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sequence file " + path);
    return parse_custom_stream(in, "custom:file=" + path);
  }
  throw std::invalid_argument("unknown weight family '" + head + "'");
}

WeightSequence WeightSequence::parse_custom_stream(
    std::istream& is, const std::string& spec_label) {
  std::vector<double> prefix;
  std::optional<TailRule> tail;
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("tail ", 0) == 0) {
      const std::string rule = line.substr(5);
      TailRule tr;
      if (rule.rfind("poly:s=", 0) == 0) {
        tr.family = WeightFamily::kPolyGrowth;
        tr.s = std::stod(rule.substr(7));
      } else if (rule.rfind("dyadic:s=", 0) == 0) {
        tr.family = WeightFamily::kDyadicBlocks;
        tr.s = std::stod(rule.substr(9));
      } else {
        throw std::invalid_argument("bad tail rule '" + line + "'");
      }
      tail = tr;
      break;  // tail rule is the final line
    }
    prefix.push_back(std::stod(line));
  }
  WeightSequence seq = custom(std::move(prefix), tail);
  seq.spec_ = spec_label;
  return seq;
}

void WeightSequence::init_log_cache() {
  if (family_ != WeightFamily::kPolyGrowth) return;
  log_cache_.resize(kLogCacheSize + 1);
  for (std::size_t j = 1; j <= kLogCacheSize; ++j)
    log_cache_[j] = s_ * std::log2(static_cast<double>(j) + 1.0);
}

bool WeightSequence::has_exact_backend() const {
  if (family_ == WeightFamily::kDyadicBlocks) return true;
  return family_ == WeightFamily::kPolyGrowth && integer_s_;
}

double WeightSequence::rho(std::uint64_t j) const {
  if (j == 0) throw std::invalid_argument("coordinates start at 1");
  switch (family_) {
    case WeightFamily::kPolyGrowth:
      return std::pow(static_cast<double>(j) + 1.0, s_);
    case WeightFamily::kDyadicBlocks:
      return std::exp2(block_index(j) * s_);
    case WeightFamily::kCustom:
      if (j <= prefix_.size()) return prefix_[j - 1];
      if (!tail_)
        throw std::domain_error("sequence undefined at j=" +
                                std::to_string(j));
      return tail_->family == WeightFamily::kPolyGrowth
                 ? std::pow(static_cast<double>(j) + 1.0, tail_->s)
                 : std::exp2(block_index(j) * tail_->s);
  }
  return 0;  // unreachable
}

double WeightSequence::log2_rho(std::uint64_t j) const {
  if (j == 0) throw std::invalid_argument("coordinates start at 1");
  switch (family_) {
    case WeightFamily::kPolyGrowth:
      if (j < log_cache_.size()) return log_cache_[j];
      return s_ * std::log2(static_cast<double>(j) + 1.0);
    case WeightFamily::kDyadicBlocks:
      return block_index(j) * s_;
    case WeightFamily::kCustom:
      if (j <= prefix_log2_.size()) return prefix_log2_[j - 1];
      if (!tail_)
        throw std::domain_error("sequence undefined at j=" +
                                std::to_string(j));
      return tail_->family == WeightFamily::kPolyGrowth
                 ? tail_->s * std::log2(static_cast<double>(j) + 1.0)
                 : block_index(j) * tail_->s;
  }
  return 0;  // unreachable
}

double WeightSequence::log2_weight(const MultiIndex& nu) const {
  double acc = 0.0;
  for (const auto& [coord, exp] : nu.entries())
    acc += static_cast<double>(exp) * log2_rho(coord);
  return acc;
}

std::int64_t WeightSequence::dyadic_weight_exponent(const MultiIndex& nu) const {
  if (family_ != WeightFamily::kDyadicBlocks)
    throw std::logic_error("dyadic exponent requires dyadic blocks");
  std::int64_t m = 0;
  for (const auto& [coord, exp] : nu.entries())
    m += static_cast<std::int64_t>(exp) * block_index(coord);
  return m;
}

mpz_class WeightSequence::exact_weight(const MultiIndex& nu) const {
  if (family_ == WeightFamily::kDyadicBlocks && integer_s_) {
    const std::uint64_t e =
        static_cast<std::uint64_t>(s_) *
        static_cast<std::uint64_t>(dyadic_weight_exponent(nu));
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
  }
  if (family_ == WeightFamily::kPolyGrowth && integer_s_) {
    mpz_class out = 1, term;
    const std::uint64_t si = static_cast<std::uint64_t>(s_);
    for (const auto& [coord, exp] : nu.entries()) {
      mpz_ui_pow_ui(term.get_mpz_t(), coord + 1,
                    si * static_cast<std::uint64_t>(exp));
      out *= term;
    }
    return out;
  }
  throw std::logic_error("no exact weight backend for " + spec_);
}

WeightValue WeightSequence::weight(const MultiIndex& nu) const {
  WeightValue w;
  w.log2_value = log2_weight(nu);
  if (family_ == WeightFamily::kDyadicBlocks) {
    w.dyadic_exponent = dyadic_weight_exponent(nu);
    if (integer_s_) w.exact_value = exact_weight(nu);
  } else if (family_ == WeightFamily::kPolyGrowth && integer_s_) {
    w.exact_value = exact_weight(nu);
  }
  return w;
}

bool WeightSequence::weight_within(const MultiIndex& nu,
                                   double inv_eps) const {
  if (std::isinf(inv_eps)) return true;
  const double t = std::log2(inv_eps);
  const double lw = log2_weight(nu);
  if (lw <= t - kLogFastBand) return true;
  if (lw >= t + kLogFastBand) return false;
  // a threshold within the tie tolerance counts as attained, so that e.g.
  // 1/eps = fl(1/fl(1/N)) still admits the exact product N
  if (std::abs(lw - t) <= kLogTieTol) return true;
  switch (family_) {
    case WeightFamily::kDyadicBlocks: {
      const std::int64_t m = dyadic_weight_exponent(nu);
      if (integer_s_) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2,
                      static_cast<std::uint64_t>(s_) *
                          static_cast<std::uint64_t>(m));
        return mpz_cmp_d(v.get_mpz_t(), inv_eps) <= 0;
      }
      return s_ * static_cast<double>(m) <= t + kLogTieTol;
    }
    case WeightFamily::kPolyGrowth:
      if (integer_s_) {
        const mpz_class v = exact_weight(nu);
        return mpz_cmp_d(v.get_mpz_t(), inv_eps) <= 0;
      }
      [[fallthrough]];
    case WeightFamily::kCustom:
      break;
  }
  return lw <= t + kLogTieTol;
}

bool WeightSequence::rho_within(std::uint64_t j, double bound) const {
  if (std::isinf(bound)) return true;
  const double t = std::log2(bound);
  const double lr = log2_rho(j);
  if (lr <= t - kLogFastBand) return true;
  if (lr >= t + kLogFastBand) return false;
  if (std::abs(lr - t) <= kLogTieTol) return true;
  if (family_ == WeightFamily::kDyadicBlocks && integer_s_) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2,
                  static_cast<std::uint64_t>(s_) * block_index(j));
    return mpz_cmp_d(v.get_mpz_t(), bound) <= 0;
  }
  if (family_ == WeightFamily::kPolyGrowth && integer_s_) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), j + 1, static_cast<std::uint64_t>(s_));
    return mpz_cmp_d(v.get_mpz_t(), bound) <= 0;
  }
  return lr <= t + kLogTieTol;
}

std::uint64_t WeightSequence::truncation_dimension(double eps) const {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0,1]");
  const double inv = 1.0 / eps;
  switch (family_) {
    case WeightFamily::kPolyGrowth: {
      if (!rho_within(1, inv)) return 0;
      const double base = std::pow(inv, 1.0 / s_);  // j+1 <= base
      if (!(base < 4.0e18))
        throw std::overflow_error("truncation dimension overflows");
      std::uint64_t j = base < 3.0 ? 1 : static_cast<std::uint64_t>(base) - 2;
      if (j < 1) j = 1;
      while (rho_within(j + 1, inv)) ++j;
      while (j > 1 && !rho_within(j, inv)) --j;  // pow() may overshoot
      return j;
    }
    case WeightFamily::kDyadicBlocks: {
      const double t = std::log2(inv);
      std::int64_t k =
          static_cast<std::int64_t>(std::floor((t + kLogFastBand) / s_)) + 1;
      if (k > 62) throw std::overflow_error("truncation dimension overflows");
      while (k >= 1 && !rho_within(std::uint64_t{1} << k, inv)) --k;
      if (k < 1) return 0;
      return std::uint64_t{1} << k;  // last coordinate of block k
    }
    case WeightFamily::kCustom: {
      std::uint64_t d = 0;
      for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (prefix_[i] <= inv)
          d = i + 1;
        else
          return d;  // non-decreasing, so the first exceedance is final
      }
      if (!tail_)
        throw std::runtime_error(
            "cannot certify divergence: custom sequence has no tail rule");
      if (rho(kProbeBudget) <= inv)
        throw std::runtime_error(
            "cannot certify divergence within probe budget");
      std::uint64_t lo = prefix_.size(), hi = kProbeBudget;
      if (lo == 0 || rho(lo + 1) > inv) return lo;
      lo += 1;
      while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (rho(mid) <= inv)
          lo = mid;
        else
          hi = mid;
      }
      return lo;
    }
  }
  return 0;  // unreachable
}

}  // namespace lowerset
