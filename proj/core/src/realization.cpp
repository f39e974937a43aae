#include "virmart/realization.hpp"

namespace virmart {

namespace {

Rational factorial_ratio(int m, int r) {
  // (m+r)! / (m! r!)
  Rational out(1);
  for (int t = 1; t <= r; ++t) out = out * Rational(m + t) / Rational(t);
  return out;
}

// Ordered tuples (k_1, ..., k_r), all >= 2, summing to total; emits the
// corresponding a-monomial into acc.
void compositions(Context ctx, int total, int r, Expression current, Expression& acc) {
  if (r == 0) {
    if (total == 0) acc += current;
    return;
  }
  for (int k = 2; k <= total - 2 * (r - 1); ++k)
    compositions(ctx, total - k, r - 1, current * Expression::avar(ctx, k), acc);
}

// The drift on the Taylor variables shared by every variant generator:
// 2 sum_l [ sum_{m,r} active^m (-1)^r (m+r)!/(m! r!)
//           sum_{k_1..k_r >= 2, sum = l-m-2} a_{k_1}...a_{k_r} ] d/da_l.
LinearOperator a_drift(Context ctx, int active) {
  LinearOperator op(ctx, 0);
  for (int l = 2; l <= ctx.acutoff; ++l) {
    Expression coeff(ctx);
    for (int m = 0; m <= l - 2; ++m)
      for (int r = 0; 2 * r <= l - 2 - m; ++r) {
        Expression tuples(ctx);
        compositions(ctx, l - 2 - m, r, Expression::constant(ctx, KRat(1)), tuples);
        Expression xm = m == 0 ? Expression::constant(ctx, KRat(1))
                               : Expression::point(ctx, active, m);
        KRat sign((r % 2 == 0 ? 1 : -1) * factorial_ratio(m, r));
        coeff += xm * tuples * sign;
      }
    DerivKey d;
    d.apow.assign(static_cast<size_t>(l) - 1, 0);
    d.apow[static_cast<size_t>(l) - 2] = 1;
    op.add_term(d, coeff * KRat(2));
  }
  return op;
}

DerivKey point_deriv(int p, int order = 1) {
  DerivKey d;
  d.pt[p] = order;
  return d;
}

DerivKey a_deriv(int l) {
  DerivKey d;
  d.apow.assign(static_cast<size_t>(l) - 1, 0);
  d.apow[static_cast<size_t>(l) - 2] = 1;
  return d;
}

/// 1/(p - q) as a canonical term, for any two distinct points.
Expression inverse_difference(Context ctx, int p, int q) {
  int i = std::min(p, q), j = std::max(p, q);
  Expression e = Expression::diff_power(ctx, i, j, KRat(-1));
  return p < q ? e : e * KRat(-1);
}

}  // namespace

KRat VariantConfig::weight_at(int p) const {
  if (p == active) return weight_hrs(kappa, 1, 2);
  if (static_cast<size_t>(p) >= rho.size())
    throw Error("variant: missing rho for a passive point");
  return weight_hrho(kappa, rho[static_cast<size_t>(p)]);
}

Expression VariantConfig::partition_function() const {
  if (z) return *z;
  Expression out = Expression::constant(ctx, KRat(1));
  const int n = ctx.npoints();
  for (int p = 0; p < n; ++p) {
    if (p == active) continue;
    out *= Expression::diff_power(ctx, std::min(p, active), std::max(p, active),
                                  rho[static_cast<size_t>(p)] / kappa);
    for (int q = p + 1; q < n; ++q) {
      if (q == active) continue;
      out *= Expression::diff_power(
          ctx, p, q,
          rho[static_cast<size_t>(p)] * rho[static_cast<size_t>(q)] / (kappa * KRat(2)));
    }
  }
  return out;
}

Realization::Realization(VariantConfig cfg) : cfg_(std::move(cfg)) {}

LinearOperator Realization::build_explicit(int n) const {
  const Context ctx = cfg_.ctx;
  const int npts = ctx.npoints();
  auto one = [&] { return Expression::constant(ctx, KRat(1)); };

  LinearOperator op(ctx, n < 0 ? -n : 0);
  switch (n) {
    case 2:
      op.add_term(a_deriv(2), one() * KRat(-1));
      for (int l = 4; l <= ctx.acutoff; ++l)
        op.add_term(a_deriv(l), Expression::avar(ctx, l - 2) * KRat(l - 3));
      break;
    case 1:
      for (int l = 3; l <= ctx.acutoff; ++l)
        op.add_term(a_deriv(l), Expression::avar(ctx, l - 1) * KRat(l - 2));
      for (int p = 0; p < npts; ++p) op.add_term(point_deriv(p), one());
      break;
    case 0: {
      for (int l = 2; l <= ctx.acutoff; ++l)
        op.add_term(a_deriv(l), Expression::avar(ctx, l) * KRat(l));
      Expression weight(ctx);
      for (int p = 0; p < npts; ++p) {
        op.add_term(point_deriv(p), Expression::point(ctx, p));
        weight += Expression::constant(ctx, cfg_.weight_at(p));
      }
      op.add_term(DerivKey{}, weight);
      break;
    }
    case -1: {
      for (int l = 2; l <= ctx.acutoff - 1; ++l) {
        Expression coeff = Expression::avar(ctx, l + 1) * KRat(l + 2);
        for (int m1 = 2; m1 <= l + 1 - 2; ++m1)
          coeff += Expression::avar(ctx, m1) * Expression::avar(ctx, l + 1 - m1);
        op.add_term(a_deriv(l), coeff);
      }
      for (int p = 0; p < npts; ++p) {
        op.add_term(point_deriv(p), Expression::point(ctx, p, 2) -
                                        Expression::avar(ctx, 2) * KRat(3));
        op.add_term(DerivKey{},
                    Expression::point(ctx, p) * (cfg_.weight_at(p) * KRat(2)));
      }
      break;
    }
    case -2: {
      for (int l = 2; l <= ctx.acutoff - 2; ++l) {
        Expression coeff = Expression::avar(ctx, l + 2) * KRat(l + 4) -
                           Expression::avar(ctx, 2) * Expression::avar(ctx, l) * KRat(4);
        for (int m1 = 2; m1 <= l + 2 - 2; ++m1)
          coeff += Expression::avar(ctx, m1) * Expression::avar(ctx, l + 2 - m1) * KRat(3);
        for (int m1 = 2; m1 <= l - 2; ++m1)
          for (int m2 = 2; m2 <= l + 2 - m1 - 2; ++m2)
            coeff += Expression::avar(ctx, m1) * Expression::avar(ctx, m2) *
                     Expression::avar(ctx, l + 2 - m1 - m2);
        op.add_term(a_deriv(l), coeff);
      }
      for (int p = 0; p < npts; ++p) {
        op.add_term(point_deriv(p),
                    Expression::point(ctx, p, 3) -
                        Expression::point(ctx, p) * Expression::avar(ctx, 2) * KRat(4) -
                        Expression::avar(ctx, 3) * KRat(5));
        op.add_term(DerivKey{}, (Expression::point(ctx, p, 2) * KRat(3) -
                                 Expression::avar(ctx, 2) * KRat(4)) *
                                    cfg_.weight_at(p));
      }
      op.add_term(DerivKey{},
                  Expression::avar(ctx, 2) * (central_charge(cfg_.kappa) / KRat(-2)));
      break;
    }
    default:
      throw Error("build_explicit: only |n| <= 2");
  }
  return op;
}

const LinearOperator& Realization::ln(int n) {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  LinearOperator op(cfg_.ctx);
  if (n >= -2 && n <= 2) {
    op = build_explicit(n);
  } else if (n > 2) {
    // L_n = 1/(n-2)! [[..[L_2, L_1], ..], L_1].
    op = ln(2);
    KRat fact(1);
    for (int t = 1; t <= n - 2; ++t) {
      op = op_commutator(op, ln(1));
      fact *= KRat(t);
    }
    op = op * fact.inverse();
  } else {
    // L_{-n} = 1/(n-2)! [L_{-1}, [L_{-1}, .. [L_{-1}, L_{-2}]..]].
    op = ln(-2);
    KRat fact(1);
    for (int t = 1; t <= -n - 2; ++t) {
      op = op_commutator(ln(-1), op);
      fact *= KRat(t);
    }
    op = op * fact.inverse();
  }
  return cache_.emplace(n, std::move(op)).first->second;
}

LinearOperator build_generator(const VariantConfig& cfg) {
  const Context ctx = cfg.ctx;
  Expression z = cfg.partition_function();
  Expression zinv = invert_term(z);
  if (cfg.kappa.is_constant() && *cfg.kappa.as_rational() <= 0)
    throw Error("build_generator: need kappa > 0");

  LinearOperator g(ctx, 0);
  g.add_term(point_deriv(cfg.active, 2), Expression::constant(ctx, cfg.kappa / KRat(2)));
  Expression dlogz = diff_point(z, cfg.active) * zinv;
  if (!dlogz.is_zero())
    g.add_term(point_deriv(cfg.active), dlogz * cfg.kappa);
  for (int p = 0; p < ctx.npoints(); ++p)
    if (p != cfg.active)
      g.add_term(point_deriv(p), inverse_difference(ctx, p, cfg.active) * KRat(2));
  g = g + a_drift(ctx, cfg.active);
  return conjugate(g, z);
}

LinearOperator printed_generator(const KRat& kappa, const KRat& rho, Context ctx) {
  LinearOperator op(ctx, 0);
  op.add_term(point_deriv(0, 2), Expression::constant(ctx, kappa / KRat(2)));
  // 2/(y-x) d/dy = -2 (x-y)^{-1} d/dy.
  op.add_term(point_deriv(1), Expression::diff_power(ctx, 0, 1, KRat(-1)) * KRat(-2));
  // potential - [rho(rho+4-kappa)/(2 kappa)] (y-x)^{-2}.
  KRat pot = rho * (rho + KRat(4) - kappa) / (kappa * KRat(2));
  op.add_term(DerivKey{}, Expression::diff_power(ctx, 0, 1, KRat(-2)) * (-pot));
  return op + a_drift(ctx, 0);
}

LinearOperator printed_reversed_generator(const KRat& kappa, Context ctx) {
  LinearOperator op(ctx, 0);
  op.add_term(point_deriv(1, 2), Expression::constant(ctx, kappa / KRat(2)));
  op.add_term(point_deriv(0), Expression::diff_power(ctx, 0, 1, KRat(-1)) * KRat(2));
  KRat h12 = weight_hrs(kappa, 1, 2);
  op.add_term(DerivKey{},
              Expression::diff_power(ctx, 0, 1, KRat(-2)) * (h12 * KRat(-2)));
  return op + a_drift(ctx, 1);
}

}  // namespace virmart
