#include "virmart/expression.hpp"

#include <algorithm>
#include <sstream>

namespace virmart {

int pair_index(int i, int j) {
  if (i == 0) return j - 1;  // (x,y1) -> 0, (x,y2) -> 1
  return 2;                  // (y1,y2)
}

std::pair<int, int> pair_points(int pair) {
  switch (pair) {
    case 0: return {0, 1};
    case 1: return {0, 2};
    default: return {1, 2};
  }
}

KRat TermKey::degree() const {
  long fixed = 0;
  for (int p : pt) fixed += p;
  for (size_t i = 0; i < apow.size(); ++i) fixed += apow[i] * (static_cast<long>(i) + 2);
  KRat d(fixed);
  for (const KRat& g : diff)
    if (!g.is_zero()) d += g;
  return d;
}

bool TermKey::operator==(const TermKey& o) const {
  return pt == o.pt && apow == o.apow && diff == o.diff && logp == o.logp;
}

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
  // Purely structural order: the integer fields decide almost always, so the
  // rational-function exponents (whose comparison allocates) come last.
  if (a.pt != b.pt) return a.pt < b.pt;
  if (a.apow != b.apow) return a.apow < b.apow;
  if (a.logp != b.logp) return a.logp < b.logp;
  for (int i = 0; i < kMaxPairs; ++i) {
    int c = krat_cmp(a.diff[i], b.diff[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

KRat Expression::coeff(const TermKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? KRat(0) : it->second;
}

void Expression::add_term(const TermKey& key, const KRat& coeff) {
  if (coeff.is_zero()) return;
  if (static_cast<int>(key.apow.size()) > ctx_.acutoff - 1)
    throw Error("expression: a-variable beyond the context cutoff");
  TermKey k = key;
  while (!k.apow.empty() && k.apow.back() == 0) k.apow.pop_back();
  auto [it, inserted] = terms_.emplace(std::move(k), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expression Expression::operator+(const Expression& o) const {
  if (ctx_ != o.ctx_) throw Error("expression: context mismatch");
  Expression r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

Expression Expression::operator-(const Expression& o) const {
  if (ctx_ != o.ctx_) throw Error("expression: context mismatch");
  Expression r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
  return r;
}

Expression Expression::operator-() const {
  Expression r(ctx_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

Expression Expression::operator*(const Expression& o) const {
  if (ctx_ != o.ctx_) throw Error("expression: context mismatch");
  Expression r(ctx_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      TermKey k = k1;
      for (int i = 0; i < kMaxPoints; ++i) k.pt[i] += k2.pt[i];
      if (k.apow.size() < k2.apow.size()) k.apow.resize(k2.apow.size(), 0);
      for (size_t i = 0; i < k2.apow.size(); ++i) k.apow[i] += k2.apow[i];
      for (int i = 0; i < kMaxPairs; ++i) {
        k.diff[i] += k2.diff[i];
        k.logp[i] += k2.logp[i];
      }
      r.add_term(k, c1 * c2);
    }
  return r;
}

Expression Expression::operator*(const KRat& s) const {
  Expression r(ctx_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

std::string Expression::to_string() const {
  if (terms_.empty()) return "0";
  static const char* pts[] = {"x", "y1", "y2"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i = 0; i < kMaxPoints; ++i)
      if (k.pt[i] > 0) {
        os << "*" << pts[i];
        if (k.pt[i] > 1) os << "^" << k.pt[i];
      }
    for (size_t i = 0; i < k.apow.size(); ++i)
      if (k.apow[i] != 0) {
        os << "*a" << i + 2;
        if (k.apow[i] != 1) os << "^" << k.apow[i];
      }
    for (int i = 0; i < kMaxPairs; ++i) {
      auto [u, v] = pair_points(i);
      if (!k.diff[i].is_zero())
        os << "*(" << pts[u] << "-" << pts[v] << ")^(" << k.diff[i].to_string() << ")";
      if (k.logp[i] > 0) {
        os << "*log(" << pts[u] << "-" << pts[v] << ")";
        if (k.logp[i] > 1) os << "^" << k.logp[i];
      }
    }
  }
  return os.str();
}

Expression Expression::constant(Context ctx, KRat c) {
  Expression e(ctx);
  e.add_term(TermKey{}, c);
  return e;
}

Expression Expression::point(Context ctx, int p, int power) {
  if (p < 0 || p >= ctx.npoints()) throw Error("expression: point index out of range");
  TermKey k;
  k.pt[p] = power;
  Expression e(ctx);
  e.add_term(k, KRat(1));
  return e;
}

Expression Expression::avar(Context ctx, int l, int power) {
  if (l < 2 || l > ctx.acutoff) throw Error("expression: a-variable beyond the context cutoff");
  TermKey k;
  k.apow.assign(static_cast<size_t>(l) - 1, 0);
  k.apow[static_cast<size_t>(l) - 2] = power;
  Expression e(ctx);
  e.add_term(k, KRat(1));
  return e;
}

Expression Expression::diff_power(Context ctx, int i, int j, KRat exponent) {
  if (j <= i || j >= ctx.npoints()) throw Error("expression: bad point pair");
  TermKey k;
  k.diff[pair_index(i, j)] = std::move(exponent);
  Expression e(ctx);
  e.add_term(k, KRat(1));
  return e;
}

Expression Expression::log_diff(Context ctx, int i, int j, int power) {
  if (j <= i || j >= ctx.npoints()) throw Error("expression: bad point pair");
  TermKey k;
  k.logp[pair_index(i, j)] = power;
  Expression e(ctx);
  e.add_term(k, KRat(1));
  return e;
}

Expression diff_point(const Expression& e, int p) {
  const Context& ctx = e.context();
  if (p < 0 || p >= ctx.npoints()) throw Error("expression: point index out of range");
  Expression r(ctx);
  for (const auto& [k, c] : e.terms()) {
    if (k.pt[p] > 0) {
      TermKey d = k;
      --d.pt[p];
      r.add_term(d, c * KRat(k.pt[p]));
    }
    for (int pair = 0; pair < kMaxPairs; ++pair) {
      auto [i, j] = pair_points(pair);
      if (i != p && j != p) continue;
      KRat sign(i == p ? 1 : -1);
      if (!k.diff[pair].is_zero()) {
        TermKey d = k;
        d.diff[pair] -= KRat(1);
        r.add_term(d, c * sign * k.diff[pair]);
      }
      if (k.logp[pair] > 0) {
        TermKey d = k;
        --d.logp[pair];
        d.diff[pair] -= KRat(1);
        r.add_term(d, c * sign * KRat(k.logp[pair]));
      }
    }
  }
  return r;
}

Expression diff_a(const Expression& e, int l) {
  if (l < 2 || l > e.context().acutoff) throw Error("expression: a-variable out of range");
  const size_t idx = static_cast<size_t>(l) - 2;
  Expression r(e.context());
  for (const auto& [k, c] : e.terms()) {
    if (idx >= k.apow.size() || k.apow[idx] == 0) continue;
    TermKey d = k;
    --d.apow[idx];
    r.add_term(d, c * KRat(k.apow[idx]));
  }
  return r;
}

std::vector<std::pair<KRat, Expression>> degree_split(const Expression& e) {
  std::vector<std::pair<KRat, Expression>> out;
  for (const auto& [k, c] : e.terms()) {
    KRat d = k.degree();
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == d; });
    if (it == out.end()) {
      out.emplace_back(d, Expression(e.context()));
      it = out.end() - 1;
    }
    it->second.add_term(k, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return krat_cmp(a.first, b.first) < 0;
  });
  return out;
}

bool is_homogeneous(const Expression& e, const KRat& deg) {
  for (const auto& [k, c] : e.terms())
    if (k.degree() != deg) return false;
  return true;
}

Expression specialize(const Expression& e, const Rational& k0) {
  Expression r(e.context());
  for (const auto& [k, c] : e.terms()) {
    try {
      TermKey s = k;
      for (int i = 0; i < kMaxPairs; ++i) s.diff[i] = KRat(k.diff[i].eval(k0));
      r.add_term(s, KRat(c.eval(k0)));
    } catch (const PoleError&) {
      throw PoleError("specialize: pole at kappa = " + rational_to_string(k0) +
                      " in term with coefficient " + c.to_string());
    }
  }
  return r;
}

std::optional<KRat> NormalizationFrame::representative(int pair, const KRat& g) const {
  for (const KRat& rep : reps_[static_cast<size_t>(pair)])
    if (auto shift = (g - rep).as_integer()) {
      (void)shift;
      return rep;
    }
  return std::nullopt;
}

bool NormalizationFrame::absorb(const Expression& e) {
  bool lowered = false;
  for (const auto& [k, c] : e.terms())
    for (int pair = 0; pair < kMaxPairs; ++pair) {
      const KRat& g = k.diff[pair];
      auto& reps = reps_[static_cast<size_t>(pair)];
      bool placed = false;
      for (KRat& rep : reps)
        if (auto shift = (g - rep).as_integer()) {
          if (*shift < 0) {
            rep = g;
            lowered = true;
          }
          placed = true;
          break;
        }
      if (!placed) {
        // The integer class always contains the implicit exponent 0.
        if (auto n = g.as_integer(); n && *n > 0)
          reps.push_back(KRat(0));
        else
          reps.push_back(g);
      }
    }
  return lowered;
}

Expression NormalizationFrame::normalize(const Expression& e) const {
  const Context ctx = e.context();
  // Simultaneous negative integer powers on two pairs admit partial-fraction
  // relations the binomial rewriting cannot see; nothing in scope needs them.
  int negative_integer_pairs = 0;
  for (const auto& reps : reps_)
    for (const KRat& rep : reps)
      if (auto n = rep.as_integer(); n && *n < 0) {
        ++negative_integer_pairs;
        break;
      }
  if (negative_integer_pairs >= 2)
    throw Error("normalize: negative integer powers on several pairs are unsupported");
  Expression out(ctx);
  for (const auto& [k, c] : e.terms()) {
    TermKey base = k;
    std::optional<Expression> factor;  // built only when an expansion occurs
    for (int pair = 0; pair < kMaxPairs; ++pair) {
      // Even a zero exponent may need rewriting: the integer class can have a
      // negative representative when some term carries (u-v)^{-m}.
      auto rep = representative(pair, k.diff[pair]);
      if (!rep) throw Error("normalize: exponent outside the recorded classes");
      auto m = (k.diff[pair] - *rep).as_integer();
      base.diff[pair] = *rep;
      if (*m == 0) continue;
      // (u - v)^m = sum_t binom(m, t) u^t (-v)^(m-t).
      auto [u, v] = pair_points(pair);
      Expression expansion(ctx);
      Rational binom(1);
      for (long t = 0; t <= *m; ++t) {
        TermKey mono;
        mono.pt[u] = static_cast<int>(t);
        mono.pt[v] = static_cast<int>(*m - t);
        Rational sign = (*m - t) % 2 == 0 ? Rational(1) : Rational(-1);
        expansion.add_term(mono, KRat(binom * sign));
        binom = binom * Rational(*m - t) / Rational(t + 1);
      }
      if (!factor) factor = Expression::constant(ctx, c);
      *factor *= expansion;
    }
    if (!factor) {
      out.add_term(base, c);
      continue;
    }
    Expression term(ctx);
    term.add_term(base, KRat(1));
    Expression expanded = term * *factor;
    for (const auto& [fk, fc] : expanded.terms()) out.add_term(fk, fc);
  }
  return out;
}

Expression normalized(const Expression& e) {
  NormalizationFrame frame;
  frame.absorb(e);
  return frame.normalize(e);
}

bool equal_as_functions(const Expression& a, const Expression& b) {
  return normalized(a - b).is_zero();
}

int max_a_index(const Expression& e) {
  int best = 1;
  for (const auto& [k, c] : e.terms())
    for (size_t i = k.apow.size(); i-- > 0;)
      if (k.apow[i] != 0) {
        best = std::max(best, static_cast<int>(i) + 2);
        break;
      }
  return best;
}

}  // namespace virmart
