#include <random>

#include "doctest.h"
#include "virmart/expression.hpp"

using namespace virmart;

namespace {

const Context kCtx{1, 8};

Expression random_expression(std::mt19937& rng, Context ctx = kCtx) {
  std::uniform_int_distribution<int> small(0, 2), coefd(-4, 4), expo(-2, 2);
  Expression out(ctx);
  for (int t = 0; t < 3; ++t) {
    TermKey k;
    for (int p = 0; p < ctx.npoints(); ++p) k.pt[p] = small(rng);
    k.apow.assign(2, 0);
    k.apow[0] = small(rng);
    k.apow[1] = small(rng) / 2;
    if (ctx.npassive >= 1) {
      k.diff[0] = KRat(expo(rng)) + KRat::kappa().inverse() * KRat(expo(rng));
      k.logp[0] = small(rng) / 2;
    }
    int c = coefd(rng);
    if (c == 0) c = 1;
    out.add_term(k, KRat(c));
  }
  return out;
}

}  // namespace

TEST_CASE("term combination is canonical") {
  Expression xy = Expression::point(kCtx, 0) * Expression::point(kCtx, 1, 2);
  Expression g = Expression::diff_power(kCtx, 0, 1, KRat(1) / KRat(3));
  Expression prod = g * xy;
  CHECK(prod.size() == 1);
  const auto& [k, c] = *prod.terms().begin();
  CHECK(k.pt[0] == 1);
  CHECK(k.pt[1] == 2);
  CHECK(k.diff[0] == KRat(1) / KRat(3));
  CHECK(c == KRat(1));

  // Exponents add under multiplication; inverse powers cancel to a constant.
  KRat gamma = KRat::kappa() / (KRat::kappa() - KRat(4));
  Expression a = Expression::diff_power(kCtx, 0, 1, gamma);
  Expression b = Expression::diff_power(kCtx, 0, 1, -gamma);
  CHECK(a * b == Expression::constant(kCtx, KRat(1)));

  Expression zero(kCtx);
  CHECK(a + zero == a);
  CHECK((a - a).is_zero());
}

TEST_CASE("ring axioms on random expressions") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 20; ++i) {
    Expression a = random_expression(rng), b = random_expression(rng),
               c = random_expression(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("exact differentiation") {
  KRat gamma = (KRat::kappa() - KRat(4)) / (KRat::kappa() * KRat(2));
  Expression g = Expression::diff_power(kCtx, 0, 1, gamma);
  CHECK(diff_point(g, 0) == Expression::diff_power(kCtx, 0, 1, gamma - KRat(1)) * gamma);
  CHECK(diff_point(g, 1) == Expression::diff_power(kCtx, 0, 1, gamma - KRat(1)) * (-gamma));

  // d/dx [(x-y)^g log(x-y)] = (x-y)^(g-1) (g log(x-y) + 1).
  Expression gl = g * Expression::log_diff(kCtx, 0, 1);
  Expression expected =
      Expression::diff_power(kCtx, 0, 1, gamma - KRat(1)) *
      (Expression::log_diff(kCtx, 0, 1) * gamma + Expression::constant(kCtx, KRat(1)));
  CHECK(diff_point(gl, 0) == expected);

  // d/da2 (x^2 a2 - a2^2) = x^2 - 2 a2.
  Expression p = Expression::point(kCtx, 0, 2) * Expression::avar(kCtx, 2) -
                 Expression::avar(kCtx, 2) * Expression::avar(kCtx, 2);
  CHECK(diff_a(p, 2) ==
        Expression::point(kCtx, 0, 2) - Expression::avar(kCtx, 2) * KRat(2));

  // Mixed partials commute.
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    Expression e = random_expression(rng);
    CHECK(diff_point(diff_point(e, 0), 1) == diff_point(diff_point(e, 1), 0));
    CHECK(diff_a(diff_point(e, 0), 2) == diff_point(diff_a(e, 2), 0));
    CHECK(diff_a(diff_a(e, 2), 3) == diff_a(diff_a(e, 3), 2));
  }
}

TEST_CASE("degree bookkeeping") {
  // (x-y)^{-1/3} is homogeneous of degree -1/3.
  Expression z = Expression::diff_power(kCtx, 0, 1, KRat(Rational(-1, 3)));
  auto pieces = degree_split(z);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].first == KRat(Rational(-1, 3)));

  // (1/5)(x-y)^2 - a2 is homogeneous of degree 2.
  Expression theta = Expression::diff_power(kCtx, 0, 1, KRat(2)) * KRat(rational(1, 5)) -
                     Expression::avar(kCtx, 2);
  CHECK(is_homogeneous(theta, KRat(2)));

  // x + a2 splits into degrees 1 and 2; logs do not contribute to degree.
  Expression mixed = Expression::point(kCtx, 0) + Expression::avar(kCtx, 2);
  pieces = degree_split(mixed);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].first == KRat(1));
  CHECK(pieces[1].first == KRat(2));
  CHECK(is_homogeneous(Expression::log_diff(kCtx, 0, 1), KRat(0)));

  // Degree is additive under multiplication.
  std::mt19937 rng(99);
  for (int i = 0; i < 10; ++i) {
    Expression a = random_expression(rng), b = random_expression(rng);
    for (const auto& [da, ea] : degree_split(a))
      for (const auto& [db, eb] : degree_split(b)) {
        Expression prod = ea * eb;
        if (!prod.is_zero()) CHECK(is_homogeneous(prod, da + db));
      }
  }
}

TEST_CASE("specialization at rational kappa") {
  KRat g1 = (KRat::kappa() - KRat(4)) / (KRat::kappa() * KRat(2));
  Expression z = Expression::diff_power(kCtx, 0, 1, g1);
  CHECK(specialize(z, Rational(8)) ==
        Expression::diff_power(kCtx, 0, 1, KRat(rational(1, 4))));

  // Coefficient vanishing at the specialization point kills the term.
  KRat c = (KRat(4) - KRat::kappa()) / KRat::kappa();
  Expression lz = Expression::diff_power(kCtx, 0, 1, KRat(1) - KRat(2) / KRat::kappa()) * c;
  CHECK(specialize(lz, Rational(4)).is_zero());

  CHECK(specialize(Expression::diff_power(kCtx, 0, 1, KRat(-2) / KRat::kappa()),
                   Rational(6)) ==
        Expression::diff_power(kCtx, 0, 1, KRat(rational(-1, 3))));

  // Terms with exponents that collide at kappa0 merge.
  Expression pair = Expression::diff_power(kCtx, 0, 1, KRat(12) / KRat::kappa()) +
                    Expression::diff_power(kCtx, 0, 1, KRat::kappa() / KRat(3));
  CHECK(specialize(pair, Rational(6)) ==
        Expression::diff_power(kCtx, 0, 1, KRat(2)) * KRat(2));

  CHECK_THROWS_AS(specialize(z * KRat(Poly(Rational(1)), Poly::kappa()), Rational(0)),
                  PoleError);

  // Specialization commutes with arithmetic and differentiation.
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    Expression a = random_expression(rng), b = random_expression(rng);
    CHECK(specialize(a + b, Rational(6)) ==
          specialize(a, Rational(6)) + specialize(b, Rational(6)));
    CHECK(specialize(a * b, Rational(6)) ==
          specialize(a, Rational(6)) * specialize(b, Rational(6)));
    CHECK(specialize(diff_point(a, 0), Rational(6)) ==
          diff_point(specialize(a, Rational(6)), 0));
  }
}

TEST_CASE("context guard rails") {
  Expression a(Context{1, 8}), b(Context{2, 8});
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(Expression::avar(Context{1, 4}, 5), Error);
  CHECK_THROWS_AS(Expression::point(Context{0, 8}, 1), Error);
}
