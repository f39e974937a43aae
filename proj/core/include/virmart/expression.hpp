#pragma once

#include <array>
#include <map>

#include "virmart/kappa_rational.hpp"

namespace virmart {

// Variable layout for the SLE function space: one active point x, up to two
// passive points y1, y2, and Taylor variables a_2 .. a_cutoff. Points are
// indexed 0 = x, 1 = y1, 2 = y2; ordered pairs are indexed
// 0 = (x,y1), 1 = (x,y2), 2 = (y1,y2), differences always earlier - later.
struct Context {
  int npassive = 1;  // 0, 1 or 2
  int acutoff = 8;   // largest a_l index available

  bool operator==(const Context& o) const {
    return npassive == o.npassive && acutoff == o.acutoff;
  }
  bool operator!=(const Context& o) const { return !(*this == o); }

  int npoints() const { return npassive + 1; }
  int npairs() const { return npassive * (npassive + 1) / 2; }
};

constexpr int kMaxPoints = 3;
constexpr int kMaxPairs = 3;

/// Pair index for points i < j.
int pair_index(int i, int j);
/// The two point indices of a pair.
std::pair<int, int> pair_points(int pair);

// Multiplicative signature of one term: a monomial in the points and a_l's,
// difference powers with exponents in Q(kappa), and integer log powers.
// The numeric coefficient lives outside, as the mapped value in Expression.
struct TermKey {
  std::array<int, kMaxPoints> pt{};            // non-negative
  std::vector<int> apow;                       // exponent of a_l at index l-2
  std::array<KRat, kMaxPairs> diff{};          // exponent of (earlier - later)
  std::array<int, kMaxPairs> logp{};           // power of log(earlier - later)

  /// Homogeneity degree: points count 1, a_l counts l, difference powers add;
  /// log factors are degree 0.
  KRat degree() const;
  bool operator==(const TermKey& o) const;
};

// Canonical order: by degree, then lexicographically on the signature.
struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const;
};

// Canonical sum of terms over Q(kappa). The zero expression is empty.
class Expression {
 public:
  explicit Expression(Context ctx = Context{}) : ctx_(ctx) {}

  const Context& context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<TermKey, KRat, TermKeyLess>& terms() const { return terms_; }
  KRat coeff(const TermKey& k) const;

  void add_term(const TermKey& key, const KRat& coeff);

  Expression operator+(const Expression& o) const;
  Expression operator-(const Expression& o) const;
  Expression operator-() const;
  Expression operator*(const Expression& o) const;
  Expression operator*(const KRat& s) const;
  Expression& operator+=(const Expression& o) { return *this = *this + o; }
  Expression& operator-=(const Expression& o) { return *this = *this - o; }
  Expression& operator*=(const Expression& o) { return *this = *this * o; }

  bool operator==(const Expression& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
  }
  bool operator!=(const Expression& o) const { return !(*this == o); }

  std::string to_string() const;

  // --- constructors for single factors ---
  static Expression constant(Context ctx, KRat c);
  static Expression point(Context ctx, int p, int power = 1);
  static Expression avar(Context ctx, int l, int power = 1);
  static Expression diff_power(Context ctx, int i, int j, KRat exponent);
  static Expression log_diff(Context ctx, int i, int j, int power = 1);

 private:
  Context ctx_;
  std::map<TermKey, KRat, TermKeyLess> terms_;
};

/// Exact partial derivative with respect to point p (by index).
Expression diff_point(const Expression& e, int p);
/// Exact partial derivative with respect to a_l.
Expression diff_a(const Expression& e, int l);

/// Splits into homogeneous pieces keyed by degree (deterministic order).
std::vector<std::pair<KRat, Expression>> degree_split(const Expression& e);

/// True if every term has the given degree (zero counts as homogeneous).
bool is_homogeneous(const Expression& e, const KRat& deg);

/// Evaluates every coefficient and exponent at kappa = k0, re-merging terms
/// whose exponents become equal. Throws PoleError naming the first bad term.
Expression specialize(const Expression& e, const Rational& k0);

/// Largest a_l index appearing with nonzero exponent; 1 when none.
int max_a_index(const Expression& e);

// Structural term equality is finer than equality of functions: for each
// point pair, difference powers whose exponents differ by integers are
// related to point monomials by (u - v)^{g+m} = sum_i binom(m,i) u^i (-v)^{m-i} (u-v)^g.
// normalized() rewrites every term to the minimal exponent of its integer-
// shift class (minimum taken over the expression, never below 0 for the
// integer class unless negative powers are present), expanding the excess
// binomially. The resulting terms are linearly independent as functions, so
// normalized(a - b).is_zero() decides equality of functions.
Expression normalized(const Expression& e);

bool equal_as_functions(const Expression& a, const Expression& b);

// The integer-shift class representatives per pair, shared by a family of
// expressions so their normalized terms live in one common independent basis
// (needed whenever several expressions enter one linear-algebra problem).
class NormalizationFrame {
 public:
  /// Records the exponent classes of e. Returns true if the minimal
  /// representative of an already-recorded class dropped, which invalidates
  /// normalizations computed before this call.
  bool absorb(const Expression& e);
  Expression normalize(const Expression& e) const;

 private:
  friend Expression normalized(const Expression& e);
  /// Representative (minimal) exponent of the class of g for this pair;
  /// nullopt if g is not in any recorded class.
  std::optional<KRat> representative(int pair, const KRat& g) const;
  std::array<std::vector<KRat>, kMaxPairs> reps_;
};

}  // namespace virmart
