#include "ckh/ck/problem_json.hpp"

#include "ckh/error.hpp"
#include "ckh/series/series_json.hpp"

namespace ckh {

using nlohmann::json;

namespace {

unsigned positive_field(const json& j, const char* field) {
  const json& v = j.at(field);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(std::string("field '") + field + "' must be a nonnegative integer");
  }
  return v.get<unsigned>();
}

template <Coefficient C>
LinearFirstOrderProblem<C> linear_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.at("a").is_array()) {
    throw ParseError("field 'linear.a' must be an array of series");
  }
  std::vector<MonomialSeries<C>> a;
  for (const json& s : j.at("a")) a.push_back(series_from_json<C>(s));
  if (a.empty()) throw ParseError("field 'linear.a' must not be empty");
  VariableSpace tx = tx_space(a.size());
  MonomialSeries<C> b = j.contains("b") ? series_from_json<C>(j.at("b")) : MonomialSeries<C>(tx);
  MonomialSeries<C> phi =
      j.contains("phi") ? series_from_json<C>(j.at("phi")) : MonomialSeries<C>(tx);
  bool td = j.value("time_dependent", false);
  return make_linear_problem<C>(std::move(a), std::move(b), std::move(phi), td);
}

}  // namespace

template <Coefficient C>
ProblemFile<C> problem_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  ProblemFile<C> out;
  try {
    if (j.contains("linear") && !j.at("linear").is_null()) {
      out.linear = linear_from_json<C>(j.at("linear"));
    }
    if (j.contains("f")) {
      if (!j.contains("m")) throw ParseError("missing field 'm'");
      if (!j.contains("x_vars")) throw ParseError("missing field 'x_vars'");
      unsigned m = positive_field(j, "m");
      unsigned n = positive_field(j, "x_vars");
      if (m == 0) throw ParseError("field 'm' must be positive");
      if (n == 0) throw ParseError("field 'x_vars' must be positive");
      std::vector<MonomialSeries<C>> phi;
      if (j.contains("phi")) {
        if (!j.at("phi").is_array()) throw ParseError("field 'phi' must be an array of series");
        for (const json& s : j.at("phi")) phi.push_back(series_from_json<C>(s));
      }
      out.cauchy = make_cauchy_problem<C>(m, n, series_from_json<C>(j.at("f")), std::move(phi),
                                          j.value("f_centered", false));
    } else if (out.linear) {
      out.cauchy = to_cauchy(*out.linear);
    } else {
      throw ParseError("problem needs field 'f' or field 'linear'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed problem: ") + e.what());
  } catch (const SpaceError& e) {
    throw ParseError(std::string("problem variable spaces: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid problem: ") + e.what());
  }
  return out;
}

template <Coefficient C>
json linear_to_json(const LinearFirstOrderProblem<C>& p) {
  json a = json::array();
  for (const auto& ai : p.a) a.push_back(series_to_json(ai));
  return {{"a", a},
          {"b", series_to_json(p.b)},
          {"phi", series_to_json(p.phi)},
          {"time_dependent", p.time_dependent}};
}

template <Coefficient C>
json problem_to_json(const ProblemFile<C>& p) {
  json out = json::object();
  if (p.cauchy) {
    out["m"] = p.cauchy->m;
    out["x_vars"] = p.cauchy->x_vars;
    out["f"] = series_to_json(p.cauchy->f);
    json phi = json::array();
    for (const auto& s : p.cauchy->phi) phi.push_back(series_to_json(s));
    out["phi"] = phi;
    out["f_centered"] = p.cauchy->f_centered;
  }
  if (p.linear) out["linear"] = linear_to_json(*p.linear);
  return out;
}

template ProblemFile<double> problem_from_json<double>(const json&);
template ProblemFile<Rational> problem_from_json<Rational>(const json&);
template json problem_to_json(const ProblemFile<double>&);
template json problem_to_json(const ProblemFile<Rational>&);
template json linear_to_json(const LinearFirstOrderProblem<double>&);
template json linear_to_json(const LinearFirstOrderProblem<Rational>&);

}  // namespace ckh
