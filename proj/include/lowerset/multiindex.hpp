#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lowerset {

/// Sparse multiindex over coordinates 1,2,...: a finite set of strictly
/// positive exponents.  Entries are (coordinate, exponent) pairs kept in
/// strictly increasing coordinate order; absent coordinates have exponent 0.
class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;  // the zero index

  static MultiIndex unit(std::uint32_t coord);
  /// Canonicalizes (sorts, merges duplicates, drops zero exponents).
  /// Throws std::invalid_argument on coordinate 0.
  static MultiIndex from_entries(std::vector<Entry> entries);

  bool is_zero() const { return entries_.empty(); }
  std::uint32_t exponent(std::uint32_t coord) const;
  /// Largest coordinate in the support; 0 for the zero index.
  std::uint32_t max_coordinate() const;
  std::uint64_t total_degree() const;
  std::size_t support_size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  MultiIndex plus_unit(std::uint32_t coord) const;
  /// nu - e_coord, or nullopt when nu_coord == 0.
  std::optional<MultiIndex> minus_unit(std::uint32_t coord) const;

  /// "coord:exp coord:exp" with increasing coordinates; the zero index is "0".
  std::string to_string() const;
  static MultiIndex parse(std::string_view text);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Componentwise partial order: mu_j <= nu_j for every coordinate j.
bool leq(const MultiIndex& mu, const MultiIndex& nu);

/// Canonical total order: total degree ascending; within a degree, the index
/// whose dense prefix has the larger exponent at the first differing
/// coordinate comes first (so e_1 < e_2 and 2e_1 < e_1+e_2 < 2e_2).
bool canonical_less(const MultiIndex& a, const MultiIndex& b);

/// Order used to cut a budget prefix inside a class of equal weights:
/// total degree descending, then the same first-coordinate rule.
bool tie_break_less(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& nu) const noexcept;
};

/// Finite downward-closed collection of multiindices, stored in canonical
/// order with O(1) membership lookup.  Immutable once constructed.
class LowerSet {
 public:
  LowerSet() = default;  // empty set

  /// Validates downward closure and rejects duplicates.
  static LowerSet from_members(std::vector<MultiIndex> members);
  /// Fast path for callers that guarantee a canonical, duplicate-free,
  /// downward-closed member list.
  static LowerSet unchecked(std::vector<MultiIndex> sorted_members);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const MultiIndex& nu) const { return lookup_.count(nu) != 0; }
  const std::vector<MultiIndex>& members() const { return members_; }
  /// Largest coordinate appearing in any member (0 when empty).
  std::uint32_t dimension_hint() const { return dimension_hint_; }

 private:
  std::vector<MultiIndex> members_;
  std::unordered_set<MultiIndex, MultiIndexHash> lookup_;
  std::uint32_t dimension_hint_ = 0;
};

/// True iff the (finite, duplicate-free) collection is downward closed.
bool is_lower(std::span<const MultiIndex> candidate);

/// All mu outside lambda with mu = nu + e_j for some nu in lambda, j <=
/// max_coord, such that every backward neighbor of mu lies in lambda.
/// Canonical order.
std::vector<MultiIndex> reduced_margin(const LowerSet& lambda,
                                       std::uint32_t max_coord);

/// Members whose removal keeps lambda a lower set. Canonical order.
std::vector<MultiIndex> maximal_elements(const LowerSet& lambda);

/// Index-set text format: one multiindex per line, canonical order.
void write_index_set_txt(std::ostream& os, const LowerSet& lambda);
LowerSet read_index_set_txt(std::istream& is);

}  // namespace lowerset
