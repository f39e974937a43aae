#pragma once

#include <vector>

#include "virmart/rational.hpp"

namespace virmart {

// Univariate polynomial in the formal parameter kappa, with Rational
// coefficients stored in ascending powers. The zero polynomial has an
// empty coefficient vector; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational constant);
  explicit Poly(std::vector<Rational> ascending_coeffs);

  static Poly kappa();  // the monomial k

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const;
  Rational coeff(int power) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Exact division with remainder over the rationals.
  static void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem);

  /// Monic gcd; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b);

  Rational eval(const Rational& x) const;
  Poly monic() const;

  std::string to_string(const std::string& var = "k") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Deterministic total order (degree, then coefficients low to high); used for
// canonical term ordering, not for numeric comparison.
int poly_cmp(const Poly& a, const Poly& b);

}  // namespace virmart
