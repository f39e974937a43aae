#include "virmart/linear_operator.hpp"

#include <functional>
#include <sstream>

namespace virmart {

namespace {

// Enumerates all sub-multi-indices s <= d together with the product of
// binomial coefficients C(d, s).
void enumerate_subindices(const DerivKey& d,
                          const std::function<void(const DerivKey&, const Rational&)>& fn) {
  std::vector<int> orders;
  for (int p : d.pt) orders.push_back(p);
  for (int a : d.apow) orders.push_back(a);

  std::vector<int> sub(orders.size(), 0);
  for (;;) {
    Rational binom(1);
    for (size_t i = 0; i < orders.size(); ++i) {
      // C(orders[i], sub[i])
      Rational b(1);
      for (int t = 0; t < sub[i]; ++t)
        b = b * Rational(orders[i] - t) / Rational(t + 1);
      binom *= b;
    }
    DerivKey s;
    for (int i = 0; i < kMaxPoints; ++i) s.pt[i] = sub[static_cast<size_t>(i)];
    s.apow.assign(sub.begin() + kMaxPoints, sub.end());
    while (!s.apow.empty() && s.apow.back() == 0) s.apow.pop_back();
    fn(s, binom);

    size_t i = 0;
    while (i < orders.size() && sub[i] == orders[i]) sub[i++] = 0;
    if (i == orders.size()) break;
    ++sub[i];
  }
}

Expression derive(const Expression& e, const DerivKey& d) {
  Expression out = e;
  for (int p = 0; p < kMaxPoints; ++p)
    for (int t = 0; t < d.pt[p]; ++t) out = diff_point(out, p);
  for (size_t i = 0; i < d.apow.size(); ++i)
    for (int t = 0; t < d.apow[i]; ++t) out = diff_a(out, static_cast<int>(i) + 2);
  return out;
}

}  // namespace

bool DerivKey::is_identity() const {
  for (int p : pt)
    if (p != 0) return false;
  return apow.empty();
}

long DerivKey::total_order() const {
  long n = 0;
  for (int p : pt) n += p;
  for (int a : apow) n += a;
  return n;
}

void LinearOperator::add_term(const DerivKey& d, const Expression& coeff) {
  if (coeff.is_zero()) return;
  if (coeff.context() != ctx_) throw Error("operator: context mismatch");
  DerivKey k = d;
  while (!k.apow.empty() && k.apow.back() == 0) k.apow.pop_back();
  auto [it, inserted] = terms_.emplace(std::move(k), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LinearOperator LinearOperator::operator+(const LinearOperator& o) const {
  if (ctx_ != o.ctx_) throw Error("operator: context mismatch");
  LinearOperator r(ctx_, std::max(headroom_, o.headroom_));
  r.terms_ = terms_;
  for (const auto& [d, c] : o.terms_) r.add_term(d, c);
  return r;
}

LinearOperator LinearOperator::operator-(const LinearOperator& o) const {
  return *this + o * KRat(-1);
}

LinearOperator LinearOperator::operator*(const KRat& s) const {
  LinearOperator r(ctx_, headroom_);
  if (s.is_zero()) return r;
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, c * s);
  return r;
}

LinearOperator LinearOperator::multiply(const Expression& e) {
  LinearOperator r(e.context(), 0);
  r.add_term(DerivKey{}, e);
  return r;
}

std::string LinearOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.to_string() << "] D(";
    for (int i = 0; i < kMaxPoints; ++i) os << d.pt[i] << (i + 1 < kMaxPoints ? "," : ";");
    for (size_t i = 0; i < d.apow.size(); ++i) os << (i ? "," : "") << d.apow[i];
    os << ")";
  }
  return os.str();
}

Expression apply(const LinearOperator& op, const Expression& e) {
  if (op.context() != e.context()) throw Error("apply: context mismatch");
  if (max_a_index(e) + op.headroom() > op.context().acutoff)
    throw Error("apply: a-variable cutoff too small for this operator");
  Expression out(op.context());
  for (const auto& [d, c] : op.terms()) out += c * derive(e, d);
  return out;
}

LinearOperator compose(const LinearOperator& p, const LinearOperator& q) {
  if (p.context() != q.context()) throw Error("compose: context mismatch");
  LinearOperator r(p.context(), p.headroom() + q.headroom());
  for (const auto& [dp, cp] : p.terms())
    for (const auto& [dq, cq] : q.terms()) {
      // dp acting on (cq . dq phi): split dp between cq and phi.
      enumerate_subindices(dp, [&](const DerivKey& onto_phi, const Rational& binom) {
        DerivKey onto_coeff;
        for (int i = 0; i < kMaxPoints; ++i) onto_coeff.pt[i] = dp.pt[i] - onto_phi.pt[i];
        onto_coeff.apow = dp.apow;
        for (size_t i = 0; i < onto_phi.apow.size(); ++i)
          onto_coeff.apow[i] -= onto_phi.apow[i];
        Expression coeff = cp * derive(cq, onto_coeff) * KRat(binom);
        if (coeff.is_zero()) return;
        DerivKey total = onto_phi;
        for (int i = 0; i < kMaxPoints; ++i) total.pt[i] += dq.pt[i];
        if (total.apow.size() < dq.apow.size()) total.apow.resize(dq.apow.size(), 0);
        for (size_t i = 0; i < dq.apow.size(); ++i) total.apow[i] += dq.apow[i];
        r.add_term(total, coeff);
      });
    }
  return r;
}

LinearOperator op_commutator(const LinearOperator& p, const LinearOperator& q) {
  return compose(p, q) - compose(q, p);
}

Expression invert_term(const Expression& z) {
  if (z.size() != 1) throw Error("invert_term: need a single nonzero term");
  const auto& [k, c] = *z.terms().begin();
  for (int p : k.pt)
    if (p != 0) throw Error("invert_term: point powers are not invertible here");
  for (int a : k.apow)
    if (a != 0) throw Error("invert_term: a-powers are not invertible here");
  for (int l : k.logp)
    if (l != 0) throw Error("invert_term: log factors are not invertible here");
  TermKey inv;
  for (int i = 0; i < kMaxPairs; ++i) inv.diff[i] = -k.diff[i];
  Expression out(z.context());
  out.add_term(inv, c.inverse());
  return out;
}

LinearOperator conjugate(const LinearOperator& op, const Expression& z) {
  return compose(LinearOperator::multiply(z), compose(op, LinearOperator::multiply(invert_term(z))));
}

}  // namespace virmart
