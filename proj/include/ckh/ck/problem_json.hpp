#pragma once

#include <optional>

#include <json.hpp>

#include "ckh/ck/linear.hpp"

namespace ckh {

// { "m", "x_vars", "f": series, "phi": [series...], "f_centered": bool,
//   "linear": { "a": [series...], "b": series, "phi": series, "time_dependent": bool } }
// "f" may be omitted when "linear" is present; the Cauchy form is then derived.
template <Coefficient C>
struct ProblemFile {
  std::optional<CauchyProblem<C>> cauchy;
  std::optional<LinearFirstOrderProblem<C>> linear;
};

template <Coefficient C>
ProblemFile<C> problem_from_json(const nlohmann::json& j);

template <Coefficient C>
nlohmann::json problem_to_json(const ProblemFile<C>& p);

template <Coefficient C>
nlohmann::json linear_to_json(const LinearFirstOrderProblem<C>& p);

}  // namespace ckh
