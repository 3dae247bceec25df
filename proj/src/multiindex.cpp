#include "lowerset/multiindex.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lowerset {

MultiIndex MultiIndex::unit(std::uint32_t coord) {
  if (coord == 0) throw std::invalid_argument("coordinates start at 1");
  MultiIndex nu;
  nu.entries_.emplace_back(coord, 1u);
  return nu;
}

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  MultiIndex nu;
  nu.entries_.reserve(entries.size());
  for (const auto& [coord, exp] : entries) {
    if (coord == 0) throw std::invalid_argument("coordinates start at 1");
    if (exp == 0) continue;
    if (!nu.entries_.empty() && nu.entries_.back().first == coord) {
      nu.entries_.back().second += exp;
    } else {
      nu.entries_.emplace_back(coord, exp);
    }
  }
  return nu;
}

std::uint32_t MultiIndex::exponent(std::uint32_t coord) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(),
                             Entry{coord, 0u});
  if (it != entries_.end() && it->first == coord) return it->second;
  return 0;
}

std::uint32_t MultiIndex::max_coordinate() const {
  return entries_.empty() ? 0u : entries_.back().first;
}

std::uint64_t MultiIndex::total_degree() const {
  std::uint64_t deg = 0;
  for (const auto& [coord, exp] : entries_) deg += exp;
  return deg;
}

MultiIndex MultiIndex::plus_unit(std::uint32_t coord) const {
  if (coord == 0) throw std::invalid_argument("coordinates start at 1");
  MultiIndex out;
  out.entries_.reserve(entries_.size() + 1);
  bool placed = false;
  for (const auto& e : entries_) {
    if (e.first == coord) {
      out.entries_.emplace_back(coord, e.second + 1);
      placed = true;
    } else {
      if (!placed && e.first > coord) {
        out.entries_.emplace_back(coord, 1u);
        placed = true;
      }
      out.entries_.push_back(e);
    }
  }
  if (!placed) out.entries_.emplace_back(coord, 1u);
  return out;
}

std::optional<MultiIndex> MultiIndex::minus_unit(std::uint32_t coord) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size());
  bool found = false;
  for (const auto& e : entries_) {
    if (e.first == coord) {
      found = true;
      if (e.second > 1) out.entries_.emplace_back(coord, e.second - 1);
    } else {
      out.entries_.push_back(e);
    }
  }
  if (!found) return std::nullopt;
  return out;
}

std::string MultiIndex::to_string() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [coord, exp] : entries_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(coord);
    out += ':';
    out += std::to_string(exp);
  }
  return out;
}

MultiIndex MultiIndex::parse(std::string_view text) {
  // trim
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty() || text == "0") return MultiIndex{};
  std::vector<Entry> entries;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    pos = end + 1;
    if (token.empty()) continue;
    std::size_t colon = token.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("bad multiindex token: " +
                                  std::string(token));
    unsigned long coord = std::stoul(std::string(token.substr(0, colon)));
    unsigned long exp = std::stoul(std::string(token.substr(colon + 1)));
    entries.emplace_back(static_cast<std::uint32_t>(coord),
                         static_cast<std::uint32_t>(exp));
  }
  return from_entries(std::move(entries));
}

bool leq(const MultiIndex& mu, const MultiIndex& nu) {
  const auto& m = mu.entries();
  const auto& n = nu.entries();
  std::size_t j = 0;
  for (const auto& [coord, exp] : m) {
    while (j < n.size() && n[j].first < coord) ++j;
    if (j == n.size() || n[j].first != coord || n[j].second < exp)
      return false;
  }
  return true;
}

namespace {

// Dense-prefix comparison: -1 when a comes first (larger exponent at the
// first differing coordinate), +1 when b does, 0 when equal.
int lex_rank(const MultiIndex& a, const MultiIndex& b) {
  const auto& ae = a.entries();
  const auto& be = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ae.size() || j < be.size()) {
    std::uint32_t ca = i < ae.size() ? ae[i].first : UINT32_MAX;
    std::uint32_t cb = j < be.size() ? be[j].first : UINT32_MAX;
    if (ca < cb) return -1;  // a positive where b is zero
    if (cb < ca) return +1;
    if (ae[i].second != be[j].second)
      return ae[i].second > be[j].second ? -1 : +1;
    ++i;
    ++j;
  }
  return 0;
}

}  // namespace

bool canonical_less(const MultiIndex& a, const MultiIndex& b) {
  const std::uint64_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return lex_rank(a, b) < 0;
}

bool tie_break_less(const MultiIndex& a, const MultiIndex& b) {
  const std::uint64_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  return lex_rank(a, b) < 0;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& nu) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& [coord, exp] : nu.entries()) {
    h ^= coord + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= exp + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

LowerSet LowerSet::from_members(std::vector<MultiIndex> members) {
  std::sort(members.begin(), members.end(), canonical_less);
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw std::invalid_argument("duplicate multiindex in lower set");
  if (!is_lower(members))
    throw std::invalid_argument("collection is not downward closed");
  return unchecked(std::move(members));
}

LowerSet LowerSet::unchecked(std::vector<MultiIndex> sorted_members) {
  LowerSet lam;
  lam.members_ = std::move(sorted_members);
  lam.lookup_.reserve(lam.members_.size() * 2 + 1);
  for (const auto& nu : lam.members_) {
    lam.lookup_.insert(nu);
    lam.dimension_hint_ = std::max(lam.dimension_hint_, nu.max_coordinate());
  }
  return lam;
}

bool is_lower(std::span<const MultiIndex> candidate) {
  std::unordered_set<MultiIndex, MultiIndexHash> lookup(candidate.begin(),
                                                        candidate.end());
  for (const auto& nu : candidate) {
    for (const auto& [coord, exp] : nu.entries()) {
      (void)exp;
      auto parent = nu.minus_unit(coord);
      if (!lookup.count(*parent)) return false;
    }
  }
  return true;
}

std::vector<MultiIndex> reduced_margin(const LowerSet& lambda,
                                       std::uint32_t max_coord) {
  std::vector<MultiIndex> margin;
  std::unordered_set<MultiIndex, MultiIndexHash> seen;
  for (const auto& nu : lambda.members()) {
    for (std::uint32_t j = 1; j <= max_coord; ++j) {
      MultiIndex mu = nu.plus_unit(j);
      if (lambda.contains(mu) || seen.count(mu)) continue;
      bool admissible = true;
      for (const auto& [coord, exp] : mu.entries()) {
        (void)exp;
        if (!lambda.contains(*mu.minus_unit(coord))) {
          admissible = false;
          break;
        }
      }
      if (admissible) {
        seen.insert(mu);
        margin.push_back(std::move(mu));
      }
    }
  }
  std::sort(margin.begin(), margin.end(), canonical_less);
  return margin;
}

std::vector<MultiIndex> maximal_elements(const LowerSet& lambda) {
  const std::uint32_t probe = lambda.dimension_hint() + 1;
  std::vector<MultiIndex> out;
  for (const auto& nu : lambda.members()) {
    bool maximal = true;
    for (std::uint32_t j = 1; j <= probe; ++j) {
      if (lambda.contains(nu.plus_unit(j))) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(nu);
  }
  return out;  // members are canonical already, so the filter is too
}

void write_index_set_txt(std::ostream& os, const LowerSet& lambda) {
  for (const auto& nu : lambda.members()) os << nu.to_string() << '\n';
}

LowerSet read_index_set_txt(std::istream& is) {
  std::vector<MultiIndex> members;
  std::string line;
  while (std::getline(is, line)) {
    bool blank = true;
    for (char ch : line)
      if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
    if (blank) continue;
    members.push_back(MultiIndex::parse(line));
  }
  return LowerSet::from_members(std::move(members));
}

}  // namespace lowerset
