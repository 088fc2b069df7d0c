#include "ckh/series/series_json.hpp"

#include <charconv>
#include <string>

#include "ckh/error.hpp"

namespace ckh {

namespace {

using nlohmann::json;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json coefficient_to_json(double c) { return c; }

json coefficient_to_json(const Rational& c) {
  if (boost::multiprecision::denominator(c) == 1) {
    auto num = boost::multiprecision::numerator(c);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
      return num.convert_to<std::int64_t>();
    }
  }
  return format_rational(c);
}

template <Coefficient C>
C coefficient_from_json(const json& j) {
  if (j.is_string()) return parse_coefficient<C>(j.get<std::string>());
  if (j.is_number_integer()) {
    if constexpr (std::same_as<C, Rational>) {
      if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
      return Rational(j.get<std::int64_t>());
    } else {
      return j.get<double>();
    }
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    if constexpr (std::same_as<C, Rational>) {
      return parse_rational(shortest(v));
    } else {
      return v;
    }
  }
  throw ParseError("coefficient must be a number or a string, got " + j.dump());
}

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

}  // namespace

double json_number(const json& j, const char* field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_coefficient<double>(j.get<std::string>());
    } catch (const ParseError&) {
    }
  }
  throw ParseError(std::string("field '") + field + "' must be a number");
}

template <Coefficient C>
json series_to_json(const MonomialSeries<C>& f) {
  json terms = json::array();
  for (const auto& [alpha, c] : f.sorted_terms()) {
    json a = json::array();
    for (const auto& [v, e] : alpha.entries()) a.push_back({v, e});
    terms.push_back({{"alpha", std::move(a)}, {"c", coefficient_to_json(c)}});
  }
  json out;
  out["space"] = f.space().names();
  out["terms"] = std::move(terms);
  out["cap"] = f.cap() ? json(*f.cap()) : json(nullptr);
  return out;
}

template <Coefficient C>
MonomialSeries<C> series_from_json(const json& j) {
  try {
    const json& space = require(j, "space");
    if (!space.is_array()) throw ParseError("field 'space' must be an array of names");
    VariableSpace vs(space.get<std::vector<std::string>>());
    Cap cap;
    if (j.contains("cap") && !j.at("cap").is_null()) {
      if (!j.at("cap").is_number_integer() || j.at("cap").get<std::int64_t>() < 0) {
        throw ParseError("field 'cap' must be a nonnegative integer or null");
      }
      cap = j.at("cap").get<unsigned>();
    }
    MonomialSeries<C> f(vs, cap);
    const json& terms = require(j, "terms");
    if (!terms.is_array()) throw ParseError("field 'terms' must be an array");
    for (const json& t : terms) {
      const json& a = require(t, "alpha");
      if (!a.is_array()) throw ParseError("field 'alpha' must be an array of [index, exponent]");
      std::vector<MultiIndex::Entry> entries;
      for (const json& pair : a) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer() || pair[0].get<std::int64_t>() < 0 ||
            pair[1].get<std::int64_t>() < 0) {
          throw ParseError("bad alpha entry " + pair.dump());
        }
        entries.emplace_back(pair[0].get<VarIndex>(), pair[1].get<Exponent>());
      }
      MultiIndex alpha(std::move(entries));
      if (cap && alpha.degree() > *cap) {
        throw ParseError("term " + alpha.to_string() + " exceeds the declared cap");
      }
      f.add_term(alpha, coefficient_from_json<C>(require(t, "c")));
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed series: ") + e.what());
  } catch (const SpaceError& e) {
    throw ParseError(std::string("malformed series: ") + e.what());
  }
}

json rule_to_json(const SequenceRule& r) { return {{"c", r.c}, {"q", r.q}, {"s", r.s}}; }

SequenceRule rule_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("rule must be an object {c, q, s}");
  SequenceRule r;
  r.c = j.contains("c") ? json_number(j.at("c"), "c") : 1.0;
  r.q = j.contains("q") ? json_number(j.at("q"), "q") : 1.0;
  r.s = j.contains("s") ? json_number(j.at("s"), "s") : 0.0;
  return r;
}

json point_to_json(const PointOracle& x) {
  json expl = json::object();
  for (const auto& [i, v] : x.explicit_values) expl[std::to_string(i)] = v;
  json out{{"explicit", expl}, {"rule", rule_to_json(x.tail)}, {"first", x.first},
           {"p", x.tail_p}};
  out["bound"] = x.declared_bound ? json(*x.declared_bound) : json(nullptr);
  return out;
}

PointOracle point_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("witness must be an object");
  PointOracle x;
  try {
    if (j.contains("first")) x.first = j.at("first").get<VarIndex>();
    if (j.contains("rule")) x.tail = rule_from_json(j.at("rule"));
    if (j.contains("p")) x.tail_p = json_number(j.at("p"), "p");
    if (j.contains("bound") && !j.at("bound").is_null()) {
      x.declared_bound = json_number(j.at("bound"), "bound");
    }
    if (j.contains("explicit")) {
      const json& e = j.at("explicit");
      if (e.is_array()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
          x.explicit_values[x.first + static_cast<VarIndex>(i)] = json_number(e[i], "explicit");
        }
      } else {
        for (const auto& [k, v] : e.items()) {
          x.explicit_values[static_cast<VarIndex>(std::stoul(k))] = json_number(v, "explicit");
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("malformed witness index: ") + e.what());
  }
  if (!(x.tail_p > 0.0)) throw ParseError("witness field 'p' must be positive");
  return x;
}

template json series_to_json(const MonomialSeries<double>&);
template json series_to_json(const MonomialSeries<Rational>&);
template MonomialSeries<double> series_from_json<double>(const json&);
template MonomialSeries<Rational> series_from_json<Rational>(const json&);

}  // namespace ckh
