#pragma once

#include <optional>
#include <string>

#include "virmart/polynomial.hpp"

namespace virmart {

// Element of the field Q(kappa): a reduced fraction of polynomials with
// monic denominator. Structural equality on this canonical form is value
// equality, which is what term merging and pivot selection rely on.
class KRat {
 public:
  KRat() : num_(), den_(Rational(1)) {}
  KRat(long n) : KRat(Rational(n)) {}  // NOLINT: implicit by design
  KRat(Rational r) : num_(std::move(r)), den_(Rational(1)) {}
  KRat(Poly num, Poly den);

  static KRat kappa() { return KRat(Poly::kappa(), Poly(Rational(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const;

  /// The value as a Rational if this is a constant, otherwise nullopt.
  std::optional<Rational> as_rational() const;
  /// The value as a long if this is a small integer constant.
  std::optional<long> as_integer() const;

  KRat operator+(const KRat& o) const;
  KRat operator-(const KRat& o) const;
  KRat operator-() const;
  KRat operator*(const KRat& o) const;
  KRat operator/(const KRat& o) const;
  KRat& operator+=(const KRat& o) { return *this = *this + o; }
  KRat& operator-=(const KRat& o) { return *this = *this - o; }
  KRat& operator*=(const KRat& o) { return *this = *this * o; }
  KRat& operator/=(const KRat& o) { return *this = *this / o; }

  KRat inverse() const;
  KRat pow(long e) const;

  bool operator==(const KRat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const KRat& o) const { return !(*this == o); }

  /// Exact specialization at kappa = k0; throws PoleError if the denominator
  /// vanishes there.
  Rational eval(const Rational& k0) const;
  bool has_pole_at(const Rational& k0) const;

  std::string to_string(const std::string& var = "k") const;

 private:
  Poly num_, den_;
};

/// Deterministic total order used for canonical term layout.
int krat_cmp(const KRat& a, const KRat& b);

inline KRat operator*(const Rational& s, const KRat& a) { return KRat(s) * a; }

}  // namespace virmart
