#include "virmart/uea.hpp"

#include <algorithm>
#include <sstream>

#include "virmart/weights.hpp"

namespace virmart {

namespace {

// Adjacent pair (a, b) is in normal order: creation modes first (weakly
// increasing among themselves), then L_0 powers, then weakly decreasing
// annihilation modes.
bool pair_ordered(int a, int b) {
  if (a < 0) return b >= 0 || a <= b;
  if (a == 0) return b >= 0;
  return b > 0 && a >= b;
}

}  // namespace

bool PBWMonomial::operator<(const PBWMonomial& o) const {
  if (modes.size() != o.modes.size()) return modes.size() < o.modes.size();
  return modes < o.modes;
}

long PBWMonomial::grade() const {
  long g = 0;
  for (int m : modes) g -= m;
  return g;
}

bool PBWMonomial::is_normal_ordered() const {
  for (size_t i = 0; i + 1 < modes.size(); ++i)
    if (!pair_ordered(modes[i], modes[i + 1])) return false;
  return true;
}

std::string PBWMonomial::to_string() const {
  if (modes.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < modes.size(); ++i) {
    if (i) os << " ";
    os << "L(" << modes[i] << ")";
  }
  return os.str();
}

UEAElement::UEAElement(const PBWMonomial& m, KRat coeff) {
  add_term(m, coeff);
}

UEAElement UEAElement::L(int n) {
  return UEAElement(PBWMonomial{{n}});
}

KRat UEAElement::coeff(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? KRat(0) : it->second;
}

void UEAElement::add_term(const PBWMonomial& m, const KRat& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
  UEAElement r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

UEAElement UEAElement::operator-(const UEAElement& o) const {
  UEAElement r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

UEAElement UEAElement::operator-() const {
  UEAElement r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

// Formal concatenation product; the result is generally not normal-ordered.
// Use uea_mul to land back in the PBW basis.
UEAElement UEAElement::operator*(const UEAElement& o) const {
  UEAElement r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      PBWMonomial m = m1;
      m.modes.insert(m.modes.end(), m2.modes.begin(), m2.modes.end());
      r.add_term(m, c1 * c2);
    }
  return r;
}

UEAElement UEAElement::operator*(const KRat& s) const {
  UEAElement r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

bool UEAElement::homogeneous_grade(long& grade_out) const {
  if (terms_.empty()) {
    grade_out = 0;
    return true;
  }
  grade_out = terms_.begin()->first.grade();
  for (const auto& [m, c] : terms_)
    if (m.grade() != grade_out) return false;
  return true;
}

std::string UEAElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ") " << m.to_string();
  }
  return os.str();
}

namespace {

using Cache = std::map<std::vector<int>, UEAElement>;

const UEAElement& normal_order_cached(const std::vector<int>& word, const KRat& kappa,
                                      Cache& cache) {
  auto hit = cache.find(word);
  if (hit != cache.end()) return hit->second;
  UEAElement out;
  bool ordered = true;
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    int a = word[i], b = word[i + 1];
    if (pair_ordered(a, b)) continue;
    ordered = false;
    // L_a L_b = L_b L_a + (a - b) L_{a+b} + delta (a^3 - a)/12 c.
    std::vector<int> swapped(word);
    std::swap(swapped[i], swapped[i + 1]);
    out = normal_order_cached(swapped, kappa, cache);

    std::vector<int> merged;
    merged.reserve(word.size() - 1);
    merged.insert(merged.end(), word.begin(), word.begin() + static_cast<long>(i));
    merged.push_back(a + b);
    merged.insert(merged.end(), word.begin() + static_cast<long>(i) + 2, word.end());
    out += normal_order_cached(merged, kappa, cache) * KRat(a - b);

    if (a + b == 0) {
      std::vector<int> dropped;
      dropped.reserve(word.size() - 2);
      dropped.insert(dropped.end(), word.begin(), word.begin() + static_cast<long>(i));
      dropped.insert(dropped.end(), word.begin() + static_cast<long>(i) + 2, word.end());
      KRat central = central_charge(kappa) *
                     KRat(rational(static_cast<long>(a) * a * a - a, 12));
      out += normal_order_cached(dropped, kappa, cache) * central;
    }
    break;
  }
  if (ordered) out = UEAElement(PBWMonomial{word});
  return cache.emplace(word, std::move(out)).first->second;
}

}  // namespace

UEAElement normal_order(const std::vector<int>& word, const KRat& kappa) {
  // The rewriting cache is only sound for a fixed central charge; keep one
  // cache per kappa value, in practice just symbolic plus a few specials.
  static thread_local std::vector<std::pair<KRat, Cache>> caches;
  for (auto& [k, cache] : caches)
    if (k == kappa) return normal_order_cached(word, kappa, cache);
  caches.emplace_back(kappa, Cache{});
  return normal_order_cached(word, kappa, caches.back().second);
}

UEAElement uea_mul(const UEAElement& a, const UEAElement& b, const KRat& kappa) {
  UEAElement r;
  for (const auto& [m1, c1] : a.terms())
    for (const auto& [m2, c2] : b.terms()) {
      std::vector<int> word = m1.modes;
      word.insert(word.end(), m2.modes.begin(), m2.modes.end());
      r += normal_order(word, kappa) * (c1 * c2);
    }
  return r;
}

UEAElement uea_commutator(const UEAElement& a, const UEAElement& b, const KRat& kappa) {
  return uea_mul(a, b, kappa) - uea_mul(b, a, kappa);
}

UEAElement dagger(const UEAElement& a, const KRat& kappa) {
  UEAElement r;
  for (const auto& [m, c] : a.terms()) {
    std::vector<int> word(m.modes.rbegin(), m.modes.rend());
    for (int& n : word) n = -n;
    r += normal_order(word, kappa) * c;
  }
  return r;
}

}  // namespace virmart
