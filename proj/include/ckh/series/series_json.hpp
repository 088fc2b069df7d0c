#pragma once

#include <json.hpp>

#include "ckh/series/monomial_series.hpp"
#include "ckh/series/point_oracle.hpp"

namespace ckh {

// { "space": [...], "terms": [{"alpha": [[i,e],...], "c": ...}], "cap": n|null }
// with terms in graded-lex order. Rational coefficients are written as
// integers or "p/q" strings; doubles as numbers.
template <Coefficient C>
nlohmann::json series_to_json(const MonomialSeries<C>& f);

// Accepts numbers or "p/q" / decimal strings for "c". In rational mode a JSON
// number is read through its shortest decimal form, so 0.1 becomes 1/10.
template <Coefficient C>
MonomialSeries<C> series_from_json(const nlohmann::json& j);

// { "explicit": {"i": v, ...}, "rule": {"c","q","s"}, "first", "p", "bound" }
nlohmann::json point_to_json(const PointOracle& x);
PointOracle point_from_json(const nlohmann::json& j);

nlohmann::json rule_to_json(const SequenceRule& r);
SequenceRule rule_from_json(const nlohmann::json& j);

// Reads a number that may be given as a JSON number or a numeric string.
double json_number(const nlohmann::json& j, const char* field);

}  // namespace ckh
