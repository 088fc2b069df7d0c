#include "ckh/series/multi_index.hpp"

#include <algorithm>
#include <limits>

#include "ckh/error.hpp"

namespace ckh {

MultiIndex::MultiIndex(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [var, e] : entries) {
    if (e == 0) continue;
    if (!entries_.empty() && entries_.back().first == var) {
      entries_.back().second += e;
    } else {
      entries_.emplace_back(var, e);
    }
    degree_ += e;
  }
}

MultiIndex MultiIndex::unit(VarIndex var, Exponent exponent) {
  MultiIndex a;
  if (exponent > 0) {
    a.entries_.emplace_back(var, exponent);
    a.degree_ = exponent;
  }
  return a;
}

MultiIndex MultiIndex::from_dense(std::span<const Exponent> exponents, VarIndex first) {
  MultiIndex a;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    a.entries_.emplace_back(first + static_cast<VarIndex>(i), exponents[i]);
    a.degree_ += exponents[i];
  }
  return a;
}

Exponent MultiIndex::exponent(VarIndex var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, VarIndex v) { return e.first < v; });
  return (it != entries_.end() && it->first == var) ? it->second : 0;
}

std::optional<VarIndex> MultiIndex::max_variable() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().first;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex r;
  r.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      r.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      r.entries_.push_back(*b++);
    } else {
      r.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

std::optional<MultiIndex> MultiIndex::lowered(VarIndex var, Exponent k) const {
  if (k == 0) return *this;
  MultiIndex r = *this;
  auto it = std::lower_bound(r.entries_.begin(), r.entries_.end(), var,
                             [](const Entry& e, VarIndex v) { return e.first < v; });
  if (it == r.entries_.end() || it->first != var || it->second < k) return std::nullopt;
  it->second -= k;
  if (it->second == 0) r.entries_.erase(it);
  r.degree_ -= k;
  return r;
}

MultiIndex MultiIndex::with_exponent(VarIndex var, Exponent e) const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size() + 1);
  for (const auto& entry : entries_) {
    if (entry.first != var) entries.push_back(entry);
  }
  entries.emplace_back(var, e);
  return MultiIndex(std::move(entries));
}

std::pair<MultiIndex, MultiIndex> MultiIndex::split(std::span<const VarIndex> vars) const {
  MultiIndex in;
  MultiIndex out;
  for (const auto& entry : entries_) {
    bool selected = std::binary_search(vars.begin(), vars.end(), entry.first);
    MultiIndex& target = selected ? in : out;
    target.entries_.push_back(entry);
    target.degree_ += entry.second;
  }
  return {std::move(in), std::move(out)};
}

std::uint64_t MultiIndex::factorial() const {
  std::uint64_t r = 1;
  for (const auto& [var, e] : entries_) {
    for (Exponent k = 2; k <= e; ++k) {
      if (r > std::numeric_limits<std::uint64_t>::max() / k) {
        throw SizeError("multi-index factorial overflows 64 bits");
      }
      r *= k;
    }
  }
  return r;
}

std::string MultiIndex::to_string() const {
  if (entries_.empty()) return "1";
  std::string s;
  for (const auto& [var, e] : entries_) {
    if (!s.empty()) s += '*';
    s += "v" + std::to_string(var);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first != b->first) {
      // The index that carries the smaller variable has the larger exponent
      // there (the other has zero).
      return a->first < b->first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a->second != b->second) {
      return a->second > b->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    ++a;
    ++b;
  }
  if (a == entries_.end() && b == other.entries_.end()) return std::strong_ordering::equal;
  return a != entries_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::size_t MultiIndex::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [var, e] : entries_) {
    std::size_t x = (static_cast<std::size_t>(var) << 20) ^ e;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t checked_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::size_t>::max()) {
      throw SizeError("binomial coefficient C(" + std::to_string(n) + "," + std::to_string(k) +
                      ") overflows the platform size type");
    }
  }
  return static_cast<std::size_t>(r);
}

namespace {

// Emits exponent vectors of the given degree over vars[pos..] in graded-lex
// order (largest exponent of the earliest variable first).
void emit_homogeneous(std::span<const VarIndex> vars, std::size_t pos, std::size_t remaining,
                      std::vector<MultiIndex::Entry>& prefix, std::vector<MultiIndex>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (pos == vars.size()) return;
  if (pos + 1 == vars.size()) {
    prefix.emplace_back(vars[pos], static_cast<Exponent>(remaining));
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t e = remaining;; --e) {
    if (e > 0) prefix.emplace_back(vars[pos], static_cast<Exponent>(e));
    emit_homogeneous(vars, pos + 1, remaining - e, prefix, out);
    if (e > 0) prefix.pop_back();
    if (e == 0) break;
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_homogeneous(std::span<const VarIndex> vars, std::size_t degree) {
  std::vector<MultiIndex> out;
  std::vector<MultiIndex::Entry> prefix;
  if (vars.empty()) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  emit_homogeneous(vars, 0, degree, prefix, out);
  return out;
}

std::vector<MultiIndex> enumerate_multiindices(std::size_t num_vars, std::size_t max_degree,
                                               std::size_t limit) {
  if (num_vars == 0) throw PreconditionError("enumerate_multiindices needs num_vars >= 1");
  std::size_t count = checked_binomial(num_vars + max_degree, num_vars);
  if (count > limit) {
    throw SizeError("enumeration of " + std::to_string(count) + " multi-indices exceeds limit " +
                    std::to_string(limit));
  }
  std::vector<VarIndex> vars(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) vars[i] = static_cast<VarIndex>(i + 1);
  std::vector<MultiIndex> out;
  out.reserve(count);
  for (std::size_t d = 0; d <= max_degree; ++d) {
    auto layer = enumerate_homogeneous(vars, d);
    out.insert(out.end(), std::make_move_iterator(layer.begin()),
               std::make_move_iterator(layer.end()));
  }
  return out;
}

}  // namespace ckh
