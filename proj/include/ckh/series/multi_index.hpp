#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ckh {

using VarIndex = std::uint32_t;
using Exponent = std::uint32_t;

// A finitely supported exponent sequence, stored sparsely as
// (variable, exponent) pairs with strictly increasing variables and no zero
// exponents. The empty index is the constant monomial.
class MultiIndex {
 public:
  using Entry = std::pair<VarIndex, Exponent>;

  MultiIndex() = default;

  // Canonicalizes: sorts by variable, merges repeated variables, drops zero
  // exponents.
  explicit MultiIndex(std::vector<Entry> entries);
  MultiIndex(std::initializer_list<Entry> entries)
      : MultiIndex(std::vector<Entry>(entries)) {}

  static MultiIndex unit(VarIndex var, Exponent exponent = 1);

  // Dense exponent vector (e_0, e_1, ...) starting at variable `first`.
  static MultiIndex from_dense(std::span<const Exponent> exponents, VarIndex first = 0);

  std::span<const Entry> entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::uint64_t degree() const { return degree_; }
  Exponent exponent(VarIndex var) const;
  std::optional<VarIndex> max_variable() const;

  // Sum of exponent vectors.
  MultiIndex operator+(const MultiIndex& other) const;

  // alpha - k e_var, or nothing when the exponent of var is below k.
  std::optional<MultiIndex> lowered(VarIndex var, Exponent k = 1) const;

  // alpha with the exponent of var replaced (0 removes it).
  MultiIndex with_exponent(VarIndex var, Exponent e) const;

  // Split into the part on `vars` (sorted) and the rest.
  std::pair<MultiIndex, MultiIndex> split(std::span<const VarIndex> vars) const;

  // Product of factorials of the exponents.
  std::uint64_t factorial() const;

  std::string to_string() const;

  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

  // Graded-lexicographic: lower total degree first; within a degree, the index
  // with the larger exponent at the first differing variable comes first, so
  // x1^2 < x1 x2 < x2^2.
  std::strong_ordering operator<=>(const MultiIndex& other) const;

  std::size_t hash() const;

 private:
  std::vector<Entry> entries_;
  std::uint64_t degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const { return a.hash(); }
};

// All multi-indices on variables 1..num_vars with total degree <= max_degree,
// in graded-lex order. Throws SizeError when the count C(num_vars+max_degree,
// num_vars) overflows or exceeds `limit`.
std::vector<MultiIndex> enumerate_multiindices(std::size_t num_vars, std::size_t max_degree,
                                               std::size_t limit = std::size_t{1} << 26);

// Same enumeration restricted to one total degree.
std::vector<MultiIndex> enumerate_homogeneous(std::span<const VarIndex> vars, std::size_t degree);

// Binomial coefficient with overflow detection (throws SizeError).
std::size_t checked_binomial(std::size_t n, std::size_t k);

}  // namespace ckh

template <>
struct std::hash<ckh::MultiIndex> {
  std::size_t operator()(const ckh::MultiIndex& a) const { return a.hash(); }
};
