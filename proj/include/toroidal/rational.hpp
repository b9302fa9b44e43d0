#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <string>

namespace toroidal {

// Exact rational with arbitrary-precision numerator and denominator.
// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// "p/q", or "p" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  std::string s = boost::multiprecision::numerator(r).str();
  if (den != 1) s += "/" + den.str();
  return s;
}

// Parses "p/q", "p" or "-p/q".
inline Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

template <std::floating_point Real>
Real to_real(const Rational& r) {
  // Numerator and denominator separately keep long double from
  // routing through double.
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  return num.convert_to<Real>() / den.convert_to<Real>();
}

}  // namespace toroidal
