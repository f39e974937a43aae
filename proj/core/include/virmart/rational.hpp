#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace virmart {

/// Base error type for all engine failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a rational function is evaluated at a zero of its denominator.
struct PoleError : Error {
  using Error::Error;
};

/// Raised on malformed textual input (CLI expressions, serialized values).
struct ParseError : Error {
  using Error::Error;
};

using Integer = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always stored reduced with positive
// denominator, so structural equality is value equality.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw Error("rational: zero denominator");
  return Rational(num, den);
}

/// Three-way numeric comparison by cross-multiplication; much cheaper than
/// the library operator< on this representation.
int rational_cmp(const Rational& a, const Rational& b);

bool rational_is_integer(const Rational& r);
Integer rational_numerator(const Rational& r);
Integer rational_denominator(const Rational& r);

/// Parses "p", "-p" or "p/q". Whitespace is not accepted.
Rational rational_from_string(const std::string& s);

/// Prints as "p" or "p/q" with the sign on the numerator.
std::string rational_to_string(const Rational& r);

Rational rational_pow(const Rational& base, long exp);

}  // namespace virmart
