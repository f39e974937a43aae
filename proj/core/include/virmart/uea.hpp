#pragma once

#include <map>
#include <vector>

#include "virmart/kappa_rational.hpp"

namespace virmart {

// Word L_{m_1} ... L_{m_k} in the universal enveloping algebra of the
// Virasoro algebra, stored as the mode sequence (m_1, ..., m_k). A word is
// normal-ordered when it reads
//   L_{-n_j} ... L_{-n_1} L_0^p L_{a_1} ... L_{a_i}
// with n_1 <= ... <= n_j and a_1 >= ... >= a_i > 0, i.e. raising modes act
// first. The central element is kept as an explicit kappa-rational factor
// c(kappa) wherever a bracket produces it, so monomials never carry c.
struct PBWMonomial {
  std::vector<int> modes;

  bool operator==(const PBWMonomial& o) const { return modes == o.modes; }
  bool operator<(const PBWMonomial& o) const;

  /// Total L_0 grade: minus the sum of the modes.
  long grade() const;
  bool is_normal_ordered() const;
  std::string to_string() const;
};

// Finite kappa-rational combination of normal-ordered words.
class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(const PBWMonomial& m, KRat coeff = KRat(1));

  /// Single generator L_n.
  static UEAElement L(int n);
  static UEAElement one() { return UEAElement(PBWMonomial{}); }

  const std::map<PBWMonomial, KRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  KRat coeff(const PBWMonomial& m) const;

  UEAElement operator+(const UEAElement& o) const;
  UEAElement operator-(const UEAElement& o) const;
  UEAElement operator-() const;
  UEAElement operator*(const UEAElement& o) const;
  UEAElement operator*(const KRat& s) const;
  UEAElement& operator+=(const UEAElement& o) { return *this = *this + o; }
  UEAElement& operator*=(const UEAElement& o) { return *this = *this * o; }

  bool operator==(const UEAElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const UEAElement& o) const { return !(*this == o); }

  /// True if every word is homogeneous of the same grade, which is then
  /// returned; the zero element is homogeneous of every grade.
  bool homogeneous_grade(long& grade_out) const;

  std::string to_string() const;

  void add_term(const PBWMonomial& m, const KRat& coeff);

 private:
  std::map<PBWMonomial, KRat> terms_;
};

/// Rewrites an arbitrary word as a combination of normal-ordered words using
/// [L_n, L_m] = (n - m) L_{n+m} + delta_{n+m,0} (n^3 - n)/12 * c(kappa).
UEAElement normal_order(const std::vector<int>& word, const KRat& kappa);

UEAElement uea_mul(const UEAElement& a, const UEAElement& b, const KRat& kappa);

UEAElement uea_commutator(const UEAElement& a, const UEAElement& b, const KRat& kappa);

/// The anti-involution L_n -> L_{-n} extended by reversal of words.
UEAElement dagger(const UEAElement& a, const KRat& kappa);

}  // namespace virmart
