#include "ckh/series/coefficient.hpp"

#include <charconv>
#include <string>

#include "ckh/error.hpp"

namespace ckh {

namespace {

boost::multiprecision::cpp_int pow10(int e) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  std::string_view s = text;
  if (s.empty()) throw ParseError("empty coefficient");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text)) throw ParseError("bad exponent in '" + std::string(text) + "'");
    int value = 0;
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), value);
    exponent = exp_negative ? -value : value;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("bad number '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<int>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("bad number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  cpp_int mantissa(digits);
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                             : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& v) {
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

template <>
double parse_coefficient<double>(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    return to_double(parse_rational(text));
  }
  double value = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ckh
