#include "virmart/kappa_rational.hpp"

#include <limits>

namespace virmart {

KRat::KRat(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("KRat: zero denominator polynomial");
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (den_.degree() == 0) {
    // Already coprime: just make the denominator monic.
    const Rational& lead = den_.leading();
    if (lead != 1) {
      num_ = num_ * (Rational(1) / lead);
      den_ = Poly(Rational(1));
    }
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

bool KRat::is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

std::optional<Rational> KRat::as_rational() const {
  if (!is_constant()) return std::nullopt;
  if (num_.is_zero()) return Rational(0);
  return num_.coeff(0);  // den is monic degree 0, i.e. 1
}

std::optional<long> KRat::as_integer() const {
  auto r = as_rational();
  if (!r || !rational_is_integer(*r)) return std::nullopt;
  Integer n = rational_numerator(*r);
  if (n > Integer(std::numeric_limits<long>::max()) ||
      n < Integer(std::numeric_limits<long>::min()))
    return std::nullopt;
  return static_cast<long>(n);
}

KRat KRat::operator+(const KRat& o) const {
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    // Both denominators are 1; the sum is already reduced and monic.
    KRat out;
    out.num_ = num_ + o.num_;
    if (out.num_.is_zero()) return KRat();
    return out;
  }
  return KRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

KRat KRat::operator-(const KRat& o) const {
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    KRat out;
    out.num_ = num_ - o.num_;
    if (out.num_.is_zero()) return KRat();
    return out;
  }
  return KRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

KRat KRat::operator-() const {
  KRat out = *this;
  out.num_ = -out.num_;
  return out;
}

KRat KRat::operator*(const KRat& o) const {
  // Scaling by a constant keeps a reduced fraction reduced and the
  // denominator monic.
  if (o.num_.degree() <= 0 && o.den_.degree() == 0) {
    if (o.num_.is_zero()) return KRat();
    KRat out = *this;
    out.num_ = out.num_ * o.num_.coeff(0);
    return out;
  }
  if (num_.degree() <= 0 && den_.degree() == 0) {
    if (num_.is_zero()) return KRat();
    KRat out = o;
    out.num_ = out.num_ * num_.coeff(0);
    return out;
  }
  return KRat(num_ * o.num_, den_ * o.den_);
}

KRat KRat::operator/(const KRat& o) const {
  if (o.is_zero()) throw Error("KRat: division by zero");
  if (o.num_.degree() <= 0 && o.den_.degree() == 0) {
    KRat out = *this;
    out.num_ = out.num_ * (Rational(1) / o.num_.coeff(0));
    return out;
  }
  return KRat(num_ * o.den_, den_ * o.num_);
}

KRat KRat::inverse() const {
  if (is_zero()) throw Error("KRat: inverse of zero");
  return KRat(den_, num_);
}

KRat KRat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  KRat acc(1), b = *this;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

Rational KRat::eval(const Rational& k0) const {
  Rational d = den_.eval(k0);
  if (d == 0)
    throw PoleError("pole at specialization kappa = " + rational_to_string(k0) +
                    " in " + to_string());
  return num_.eval(k0) / d;
}

bool KRat::has_pole_at(const Rational& k0) const { return den_.eval(k0) == 0; }

std::string KRat::to_string(const std::string& var) const {
  if (den_.degree() == 0) return num_.to_string(var);  // monic degree 0 == 1
  std::string n = num_.to_string(var);
  if (num_.degree() > 0 || num_.is_zero() || num_.coeff(0) < 0) n = "(" + n + ")";
  return n + "/(" + den_.to_string(var) + ")";
}

int krat_cmp(const KRat& a, const KRat& b) {
  int c = poly_cmp(a.num(), b.num());
  if (c != 0) return c;
  return poly_cmp(a.den(), b.den());
}

}  // namespace virmart
