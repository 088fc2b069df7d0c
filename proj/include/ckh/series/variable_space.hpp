#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ckh/series/multi_index.hpp"

namespace ckh {

// Ordered coordinate names; variable index i refers to names[i]. Two spaces
// are compatible when one is a prefix of the other, so a series over (t, x1)
// can be combined with one over (t, x1, x2).
class VariableSpace {
 public:
  VariableSpace() = default;
  explicit VariableSpace(std::vector<std::string> names) : names_(std::move(names)) {}

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(VarIndex i) const;
  // Index of a name, or size() when absent.
  VarIndex find(const std::string& name) const;

  bool is_prefix_of(const VariableSpace& other) const;
  bool operator==(const VariableSpace& other) const = default;

 private:
  std::vector<std::string> names_;
};

// The longer of two compatible spaces; throws SpaceError otherwise.
VariableSpace unify(const VariableSpace& a, const VariableSpace& b);

// (t, x1, ..., xn). Spatial series use this space and simply never mention t.
VariableSpace tx_space(std::size_t n);

}  // namespace ckh
