#include "virmart/polynomial.hpp"

#include <algorithm>

namespace virmart {

Poly::Poly(Rational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rational> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  trim();
}

Poly Poly::kappa() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Poly::leading() const {
  if (is_zero()) throw Error("Poly::leading on zero polynomial");
  return coeffs_.back();
}

Rational Poly::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[power];
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c = -c;
  return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return Poly(std::move(out));
}

Poly Poly::operator*(const Rational& s) const {
  if (s == 0) return Poly();
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= s;
  return Poly(std::move(out));
}

void Poly::divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
  if (den.is_zero()) throw Error("Poly::divmod by zero polynomial");
  std::vector<Rational> r = num.coeffs_;
  std::vector<Rational> q;
  int dd = den.degree();
  if (static_cast<int>(r.size()) - 1 >= dd) q.assign(r.size() - dd, Rational(0));
  while (static_cast<int>(r.size()) - 1 >= dd && !r.empty()) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    int rd = static_cast<int>(r.size()) - 1;
    if (rd < dd) break;
    Rational factor = r.back() / den.leading();
    q[rd - dd] = factor;
    for (int i = 0; i <= dd; ++i) r[rd - dd + i] -= factor * den.coeffs_[i];
    r.pop_back();
  }
  quot = Poly(std::move(q));
  rem = Poly(std::move(r));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int p = degree(); p >= 0; --p) {
    Rational c = coeff(p);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational abs = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    bool unit = (abs == 1) && p > 0;
    if (!unit) out += rational_to_string(abs);
    if (p > 0) {
      if (!unit) out += "*";
      out += var;
      if (p > 1) out += "^" + std::to_string(p);
    }
  }
  return out;
}

int poly_cmp(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (size_t i = 0; i < ac.size(); ++i) {
    int c = rational_cmp(ac[i], bc[i]);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace virmart
