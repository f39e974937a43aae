#include "virmart/rational.hpp"

namespace virmart {

namespace {

/// Extracts a single-limb integer; the vast majority of exponents and
/// coefficients are tiny, and the word-sized cross product avoids bignum
/// temporaries entirely.
inline bool fits_small(const Integer& v, long long& out) {
  const auto& b = v.backend();
  if (b.size() > 1) return false;
  unsigned long long limb = b.size() == 0 ? 0ULL : b.limbs()[0];
  if (limb > 0x7fffffffffffffffULL) return false;
  out = b.sign() ? -static_cast<long long>(limb) : static_cast<long long>(limb);
  return true;
}

}  // namespace

int rational_cmp(const Rational& a, const Rational& b) {
  // Denominators are kept positive, so cross-multiplication preserves order.
  const auto& ra = a.backend().data();
  const auto& rb = b.backend().data();
  long long na, da, nb, db;
  if (fits_small(ra.numerator(), na) && fits_small(ra.denominator(), da) &&
      fits_small(rb.numerator(), nb) && fits_small(rb.denominator(), db)) {
    __int128 lhs = static_cast<__int128>(na) * db;
    __int128 rhs = static_cast<__int128>(nb) * da;
    return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
  }
  Integer lhs = ra.numerator() * rb.denominator();
  Integer rhs = rb.numerator() * ra.denominator();
  if (lhs < rhs) return -1;
  if (rhs < lhs) return 1;
  return 0;
}

bool rational_is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

Integer rational_numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

Integer rational_denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw Error("rational: zero denominator in \"" + s + "\"");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("not a rational: \"" + s + "\"");
  }
}

std::string rational_to_string(const Rational& r) {
  std::string out = rational_numerator(r).str();
  if (!rational_is_integer(r)) out += "/" + rational_denominator(r).str();
  return out;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw Error("rational_pow: zero to negative power");
    return rational_pow(Rational(1) / base, -exp);
  }
  Rational acc = 1, b = base;
  while (exp > 0) {
    if (exp & 1) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

}  // namespace virmart
