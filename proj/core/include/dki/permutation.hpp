#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dki {

/// A permutation of {1, ..., n} in one-line notation.
///
/// Positions are 1-based throughout the library. The empty permutation
/// (n = 0) is a valid value.
class Permutation {
public:
  Permutation() = default;

  /// Validates that `raw` is a rearrangement of exactly {1, ..., raw.size()}.
  /// Throws std::invalid_argument on a duplicate or out-of-range value.
  static Permutation from_sequence(std::vector<int> raw);

  /// Replaces each entry of a sequence of distinct values by its rank among
  /// them, e.g. [7,4,5,3,6] -> 52314. Throws std::invalid_argument on
  /// duplicate entries.
  static Permutation standardize(std::span<const int> raw);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(vals_.size()); }
  bool empty() const { return vals_.empty(); }

  /// Entry at 1-based position `pos`. Throws std::out_of_range.
  int at(int pos) const;

  const std::vector<int>& values() const { return vals_; }

  /// Removes the entry at 1-based `pos` and standardizes the remainder.
  Permutation delete_at(int pos) const;

  /// True iff the values read 1, 2, ..., n (vacuously true when empty).
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation&,
                                          const Permutation&) = default;

private:
  struct Unchecked {};
  Permutation(std::vector<int> vals, Unchecked) : vals_(std::move(vals)) {}

  std::vector<int> vals_;
};

/// Positions (1-based, strictly increasing) witnessing a pattern occurrence.
using Occurrence = std::vector<int>;

/// Classical pattern containment: true iff some subsequence of `host`
/// standardizes to `pattern`. The empty pattern is contained in everything.
bool contains(const Permutation& pattern, const Permutation& host);

/// All witnessing position tuples, in lexicographic order.
std::vector<Occurrence> occurrences(const Permutation& pattern,
                                    const Permutation& host);

/// True iff one argument is a pattern of the other.
bool comparable(const Permutation& a, const Permutation& b);

/// Canonical listing order: by length, then lexicographically.
bool length_lex_less(const Permutation& a, const Permutation& b);

/// Parses "4 3 1 5 2", "4,3,1,5,2", or the compact digit form "43152".
/// The compact form is accepted only when every value is a single digit
/// 1..9. Throws std::invalid_argument on malformed input.
Permutation parse_permutation(std::string_view text);

/// Compact digit string when n <= 9, space-separated values otherwise.
std::string format_permutation(const Permutation& p);

}  // namespace dki
