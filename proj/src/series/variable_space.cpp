#include "ckh/series/variable_space.hpp"

#include <algorithm>

#include "ckh/error.hpp"

namespace ckh {

const std::string& VariableSpace::name(VarIndex i) const {
  if (i >= names_.size()) {
    throw SpaceError("variable index " + std::to_string(i) + " outside a space of " +
                     std::to_string(names_.size()) + " variables");
  }
  return names_[i];
}

VarIndex VariableSpace::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return static_cast<VarIndex>(it - names_.begin());
}

bool VariableSpace::is_prefix_of(const VariableSpace& other) const {
  return names_.size() <= other.names_.size() &&
         std::equal(names_.begin(), names_.end(), other.names_.begin());
}

namespace {

std::string describe(const VariableSpace& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s.names()[i];
  }
  return out + ")";
}

}  // namespace

VariableSpace unify(const VariableSpace& a, const VariableSpace& b) {
  if (a.is_prefix_of(b)) return b;
  if (b.is_prefix_of(a)) return a;
  throw SpaceError("incompatible variable spaces " + describe(a) + " and " + describe(b));
}

VariableSpace tx_space(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n + 1);
  names.emplace_back("t");
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return VariableSpace(std::move(names));
}

}  // namespace ckh
