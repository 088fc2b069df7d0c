#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ckh {

// Exact rational coefficients; used by the algebra property tests and the
// rational solve mode.
using Rational = boost::multiprecision::cpp_rational;

template <class C>
concept Coefficient = std::same_as<C, double> || std::same_as<C, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& v) { return v.is_zero(); }

template <Coefficient C>
C from_double(double v) {
  return C(v);
}

// Parses a decimal ("-1.25e-3"), an integer, or a fraction ("3/7") exactly.
Rational parse_rational(std::string_view text);

// "p/q" or "p" for integers.
std::string format_rational(const Rational& v);

template <Coefficient C>
C parse_coefficient(std::string_view text);

template <>
inline Rational parse_coefficient<Rational>(std::string_view text) {
  return parse_rational(text);
}

template <>
double parse_coefficient<double>(std::string_view text);

template <Coefficient C>
constexpr std::string_view coefficient_name() {
  if constexpr (std::same_as<C, double>) {
    return "double";
  } else {
    return "rational";
  }
}

}  // namespace ckh
