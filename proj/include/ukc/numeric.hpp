#ifndef UKC_NUMERIC_HPP
#define UKC_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>

namespace ukc {

using Rational = boost::multiprecision::mpq_rational;

// Scalar types the solver is instantiated for.
template <class R>
concept Scalar = std::same_as<R, double> || std::same_as<R, Rational>;

template <class R>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double default_tolerance() { return 1e-9; }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational default_tolerance() { return Rational(0); }
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <Scalar R>
double to_double(const R& v) {
  return ScalarTraits<R>::to_double(v);
}

template <Scalar R>
R abs_value(const R& v) {
  return v < R(0) ? R(-v) : v;
}

template <Scalar R>
R half(const R& v) {
  return v / R(2);
}

// Parses "3", "0.25", "1/3" or "-2e-3". Rationals keep fractions exact.
template <Scalar R>
R parse_scalar(const std::string& text);
template <>
double parse_scalar<double>(const std::string& text);
template <>
Rational parse_scalar<Rational>(const std::string& text);

// Base class for contract violations on inputs (bad ids, offsets, lengths...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DisconnectedGraphError : public std::runtime_error {
 public:
  DisconnectedGraphError() : std::runtime_error("graph not connected") {}
};

// Raised when an enumeration would exceed the configured work limit.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serial reference path or the OpenMP kernel. Both return identical results.
enum class Exec { kSerial, kParallel };

}  // namespace ukc

#endif  // UKC_NUMERIC_HPP
