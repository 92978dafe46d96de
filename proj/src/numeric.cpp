#include "ukc/numeric.hpp"

#include <cerrno>
#include <cstdlib>

namespace ukc {

namespace {

double parse_double(const std::string& text) {
  if (text.empty()) throw ValidationError("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError("not a finite number: '" + text + "'");
  }
  return v;
}

}  // namespace

template <>
double parse_scalar<double>(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_double(text);
  const double den = parse_double(text.substr(slash + 1));
  if (den == 0.0) throw ValidationError("zero denominator in '" + text + "'");
  return parse_double(text.substr(0, slash)) / den;
}

template <>
Rational parse_scalar<Rational>(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational den = parse_scalar<Rational>(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
    return parse_scalar<Rational>(text.substr(0, slash)) / den;
  }
  // Decimal literals are read exactly: "0.1" is 1/10, not the nearest double.
  parse_double(text);
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    exponent = std::strtol(mantissa.c_str() + e + 1, nullptr, 10);
    mantissa.resize(e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa.empty()) mantissa = "0";
  Rational value{boost::multiprecision::mpz_int(mantissa)};
  const Rational ten(10);
  for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
    value = exponent < 0 ? Rational(value / ten) : Rational(value * ten);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace ukc
