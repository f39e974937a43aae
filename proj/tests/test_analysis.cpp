#include <doctest.h>

#include <virmart/analysis.hpp>
#include <virmart/verma.hpp>
#include <virmart/weights.hpp>

using namespace virmart;

namespace {

VariantConfig chordal(KRat kappa, int acutoff = 9) {
  VariantConfig cfg;
  cfg.kappa = std::move(kappa);
  cfg.ctx = Context{0, acutoff};
  cfg.active = 0;
  return cfg;
}

VariantConfig one_rho(KRat kappa, KRat rho, int acutoff = 9) {
  VariantConfig cfg;
  cfg.kappa = std::move(kappa);
  cfg.ctx = Context{1, acutoff};
  cfg.active = 0;
  cfg.rho = {KRat(0), std::move(rho)};
  return cfg;
}

AnsatzSpec rho_spec(const VariantConfig& cfg, int logcap = 1, int laurent = 0) {
  AnsatzSpec spec;
  if (cfg.ctx.npairs() > 0) spec.gamma0[0] = cfg.rho[1] / cfg.kappa;
  spec.logcap = logcap;
  spec.laurent = laurent;
  return spec;
}

std::optional<KVec> span_coordinates(const Context& ctx,
                                     const std::vector<Expression>& span,
                                     const Expression& e) {
  CoordMap cm(ctx);
  for (const Expression& b : span) cm.absorb(b);
  cm.absorb(e);
  std::vector<KVec> rows;
  for (const Expression& b : span) rows.push_back(cm.coords(b));
  KVec v = cm.coords(e);
  for (KVec& r : rows) CoordMap::pad_to(r, cm.dim());
  CoordMap::pad_to(v, cm.dim());
  return in_span(rows, v);
}

bool in_linear_span(const Context& ctx, const std::vector<Expression>& span,
                    const Expression& e) {
  CoordMap cm(ctx);
  for (const Expression& b : span) cm.absorb(b);
  cm.absorb(e);
  std::vector<KVec> rows;
  for (const Expression& b : span) rows.push_back(cm.coords(b));
  KVec v = cm.coords(e);
  for (KVec& r : rows) CoordMap::pad_to(r, cm.dim());
  CoordMap::pad_to(v, cm.dim());
  return in_span(rows, v).has_value();
}

}  // namespace

TEST_CASE("chordal kernel dimensions follow p(m) - p(m-2)") {
  AnsatzSpec spec;
  spec.logcap = 0;
  std::vector<int> expected = {1, 1, 1, 2, 3, 4, 6};
  for (const KRat& k : {KRat::kappa(), KRat(6)}) {
    VariantConfig cfg = chordal(k);
    for (int m = 0; m <= 6; ++m)
      CHECK(graded_kernel(cfg, spec, m).dim == expected[static_cast<size_t>(m)]);
  }
}

TEST_CASE("kappa = 6 rho = 0 kernel contains Theta at grade 2") {
  VariantConfig cfg = one_rho(KRat(6), KRat(0));
  AnsatzSpec spec = rho_spec(cfg, 0);
  KernelComponent kc = graded_kernel(cfg, spec, 2);
  Expression theta = Expression::diff_power(cfg.ctx, 0, 1, KRat(2)) * KRat(rational(1, 5)) -
                     Expression::avar(cfg.ctx, 2);
  CHECK(in_linear_span(cfg.ctx, kc.basis, theta));
}

TEST_CASE("degenerate-fusion grade-0 kernel is the two-dimensional log pair") {
  KRat k = KRat::kappa();
  VariantConfig cfg = one_rho(k, (k - KRat(4)) / KRat(2));
  AnsatzSpec spec = rho_spec(cfg, 1);
  KernelComponent kc = graded_kernel(cfg, spec, 0);
  CHECK(kc.dim == 2);
  CHECK(in_linear_span(cfg.ctx, kc.basis, cfg.partition_function()));
}

TEST_CASE("log partner at rho = -2 reproduces the closed form up to submodule shifts") {
  KRat k = KRat::kappa();
  VariantConfig cfg = one_rho(k, KRat(-2));
  Expression z = cfg.partition_function();
  UEAElement chi = UEAElement::L(-1);
  AnsatzSpec spec = rho_spec(cfg);
  Expression lambda = solve_log_partner(cfg, z, chi, spec);

  Realization real(cfg);
  KRat h = cfg.weight_at(0) + cfg.weight_at(1) - KRat(2) / k;
  // Defining equations.
  Expression chiz = apply_uea(chi, real, z);
  CHECK(equal_as_functions(apply(real.ln(0), lambda) - lambda * (h + KRat(1)), chiz));
  CHECK(normalized(apply(build_generator(cfg), lambda)).is_zero());

  // The closed form: ((4-k)/k)(x-y)^{1-2/k} log(x-y) + ((4-k)/8)(x-y)^{-2/k}(x+y).
  KRat g = KRat(-2) / k;
  Expression paper =
      Expression::diff_power(cfg.ctx, 0, 1, g + KRat(1)) *
          Expression::log_diff(cfg.ctx, 0, 1) * ((KRat(4) - k) / k) +
      Expression::diff_power(cfg.ctx, 0, 1, g) *
          (Expression::point(cfg.ctx, 0) + Expression::point(cfg.ctx, 1)) *
          ((KRat(4) - k) / KRat(8));
  CHECK(equal_as_functions(apply(real.ln(0), paper) - paper * (h + KRat(1)), chiz));
  CHECK(in_linear_span(cfg.ctx, {normalized(chiz)}, normalized(lambda - paper)));

  // The coupling is normalization-invariant and equals 1 - k/4.
  KRat beta = (KRat(4) - k) / KRat(4);
  CHECK(log_coupling(chi, lambda, z, cfg) == beta);
  CHECK(log_coupling(chi, paper, z, cfg) == beta);
}

TEST_CASE("log couplings across variants") {
  KRat k = KRat::kappa();
  SUBCASE("rho = -(kappa+4)/2 with the (2,1) singular word") {
    VariantConfig cfg = one_rho(k, -(k + KRat(4)) / KRat(2));
    UEAElement chi =
        UEAElement::L(-1) * UEAElement::L(-1) - UEAElement::L(-2) * (k / KRat(4));
    Expression z = cfg.partition_function();
    Expression lambda = solve_log_partner(cfg, z, chi, rho_spec(cfg));
    KRat beta = log_coupling(chi, lambda, z, cfg);
    KRat expected = (k - KRat(4)) * (k - KRat(2)) * (k + KRat(4)) * KRat(rational(-1, 16));
    CHECK(beta == expected);
  }
  SUBCASE("rho = -2 at kappa = 6 and kappa = 8") {
    for (long k0 : {6L, 8L}) {
      VariantConfig cfg = one_rho(KRat(k0), KRat(-2));
      Expression z = cfg.partition_function();
      UEAElement chi = UEAElement::L(-1);
      Expression lambda = solve_log_partner(cfg, z, chi, rho_spec(cfg));
      KRat beta = log_coupling(chi, lambda, z, cfg);
      CHECK(beta == KRat(1) - KRat(k0) / KRat(4));
    }
  }
}

TEST_CASE("generated submodule and Jordan data for the degenerate log pair") {
  KRat k = KRat::kappa();
  VariantConfig cfg = one_rho(k, (k - KRat(4)) / KRat(2));
  KernelComponent kc = graded_kernel(cfg, rho_spec(cfg), 0);
  REQUIRE(kc.dim == 2);
  ModuleSnapshot snap = generated_submodule(kc.basis, cfg, 2);
  CHECK(snap.character()[0] == 2);
  JordanStructure j = jordan_structure(snap, 0);
  CHECK(j.rank == 1);
  CHECK(j.nilpotency == 2);
}

TEST_CASE("kappa = 8 submodule characters") {
  VariantConfig cfg = one_rho(KRat(8), KRat(2), 10);
  AnsatzSpec spec = rho_spec(cfg);
  KernelComponent kc = graded_kernel(cfg, spec, 0);
  REQUIRE(kc.dim == 2);
  ModuleSnapshot full = generated_submodule(kc.basis, cfg, 6);
  CHECK(full.character() == std::vector<int>{2, 1, 3, 3, 6, 7, 12});
  ModuleSnapshot sub = generated_submodule({cfg.partition_function()}, cfg, 6);
  CHECK(sub.character() == std::vector<int>{1, 0, 1, 1, 2, 2, 4});

  VariantConfig cfg2 = one_rho(KRat(8), KRat(-2), 10);
  Expression z2 = cfg2.partition_function();
  Expression lambda = solve_log_partner(cfg2, z2, UEAElement::L(-1), rho_spec(cfg2));
  ModuleSnapshot full2 = generated_submodule({lambda}, cfg2, 6);
  CHECK(full2.character() == std::vector<int>{1, 2, 3, 4, 7, 10, 14});
  ModuleSnapshot sub2 = generated_submodule({z2}, cfg2, 6);
  CHECK(sub2.character() == std::vector<int>{1, 1, 2, 2, 4, 5, 8});
}

TEST_CASE("singular vectors inside the rho = -2 module") {
  KRat k = KRat::kappa();
  VariantConfig cfg = one_rho(k, KRat(-2));
  Expression z = cfg.partition_function();
  Expression lambda = solve_log_partner(cfg, z, UEAElement::L(-1), rho_spec(cfg));
  ModuleSnapshot snap = generated_submodule({lambda}, cfg, 3);
  std::vector<Expression> sing = find_singulars(snap, 1);
  REQUIRE(sing.size() == 1);
  Expression l1z = Expression::diff_power(cfg.ctx, 0, 1, KRat(1) - KRat(2) / k) *
                   ((KRat(4) - k) / k);
  CHECK(in_linear_span(cfg.ctx, {l1z}, sing[0]));
  // Annihilated by L_n beyond the generating pair.
  Realization real(cfg);
  for (int n = 1; n <= 4; ++n)
    CHECK(normalized(apply(real.ln(n), sing[0])).is_zero());
  JordanStructure j = jordan_structure(snap, 1);
  CHECK(j.rank == 1);
  CHECK(j.nilpotency == 2);
}

namespace {

// The weight-2 and weight-1/3 generators of the kappa = 6 chordal kernel.
Expression theta_expr(const Context& ctx) {
  return Expression::diff_power(ctx, 0, 1, KRat(2)) * KRat(rational(1, 5)) -
         Expression::avar(ctx, 2);
}

Expression ztilde_expr(const Context& ctx) {
  return Expression::diff_power(ctx, 0, 1, KRat(rational(1, 3)));
}

Expression upsilon_expr(const Context& ctx) {
  Expression poly = Expression::point(ctx, 0, 3) * KRat(rational(2, 21)) +
                    Expression::point(ctx, 0, 2) * Expression::point(ctx, 1) *
                        KRat(rational(1, 7)) +
                    Expression::point(ctx, 0) * Expression::point(ctx, 1, 2) *
                        KRat(rational(3, 7)) -
                    Expression::avar(ctx, 3);
  return ztilde_expr(ctx) * poly;
}

UEAElement word(std::initializer_list<int> modes) {
  UEAElement out = UEAElement::one();
  for (int n : modes) out = out * UEAElement::L(n);
  return out;
}

}  // namespace

TEST_CASE("fixed martingales reproduce their null-vector identities") {
  VariantConfig cfg = one_rho(KRat(6), KRat(0), 12);
  const Context& ctx = cfg.ctx;
  Realization real(cfg);
  Expression xi = Expression::point(ctx, 0);
  Expression theta = theta_expr(ctx);
  Expression zt = ztilde_expr(ctx);

  SUBCASE("grade-4 and grade-6 singular words annihilate Xi") {
    UEAElement chi14 = singular_vector(KRat(6), 1, 4);
    UEAElement chi32 = singular_vector(KRat(6), 3, 2);
    CHECK(normalized(apply_uea(chi14, real, xi)).is_zero());
    CHECK(normalized(apply_uea(chi32, real, xi)).is_zero());
  }
  SUBCASE("Theta carries nulls at grades 3 and 5") {
    UEAElement null3 = word({-1, -1, -1}) - word({-2, -1}) * KRat(6) +
                       UEAElement::L(-3) * KRat(6);
    CHECK(normalized(apply_uea(null3, real, theta)).is_zero());
    UEAElement null5 = word({-1, -1, -1, -1, -1}) -
                       word({-2, -1, -1, -1}) * KRat(rational(40, 3)) +
                       word({-2, -2, -1}) * KRat(rational(256, 9)) +
                       word({-3, -1, -1}) * KRat(rational(52, 3)) -
                       word({-3, -2}) * KRat(rational(256, 9)) -
                       word({-4, -1}) * KRat(rational(104, 3)) +
                       UEAElement::L(-5) * KRat(rational(208, 9));
    CHECK(normalized(apply_uea(null5, real, theta)).is_zero());
  }
  SUBCASE("the weight-1/3 partition function carries its grade-3 null") {
    UEAElement null3 = word({-1, -1, -1}) - word({-2, -1}) * KRat(rational(8, 3)) +
                       UEAElement::L(-3) * KRat(rational(4, 9));
    CHECK(normalized(apply_uea(null3, real, zt)).is_zero());
  }
  SUBCASE("Upsilon sits above the weight-1/3 module") {
    Expression ups = upsilon_expr(ctx);
    CHECK(normalized(apply(build_generator(cfg), ups)).is_zero());
    // The L_{-1}^2 coefficient is pinned by L_2 L_1 Upsilon = Z-tilde
    // (via [L_2, L_1] = L_3): 2a + (4/3)b = 1.
    UEAElement down = UEAElement::L(-1) * UEAElement::L(-1) * KRat(rational(-45, 14)) +
                      UEAElement::L(-2) * KRat(rational(39, 7));
    CHECK(equal_as_functions(apply(real.ln(1), ups), apply_uea(down, real, zt)));
    CHECK(equal_as_functions(apply(real.ln(2), apply(real.ln(1), ups)), zt));
    CHECK(normalized(apply(real.ln(2), ups)).is_zero());
    CHECK(equal_as_functions(apply(real.ln(3), ups), zt));
    CHECK(equal_as_functions(apply(real.ln(0), ups), ups * KRat(rational(10, 3))));
  }
}

TEST_CASE("double kernel of the forward and reversed chordal generators") {
  VariantConfig fwd = one_rho(KRat(6), KRat(0), 12);
  VariantConfig rev = fwd;
  rev.active = 1;
  rev.rho = {KRat(0), KRat(0)};
  const Context& ctx = fwd.ctx;

  AnsatzSpec spec;
  spec.logcap = 0;
  CHECK(double_kernel(fwd, rev, spec, 0).dim == 1);
  // The weight-1 martingale x survives only the forward generator.
  Expression xi = Expression::point(ctx, 0);
  REQUIRE(graded_kernel(fwd, spec, 1).dim == 1);
  CHECK(double_kernel(fwd, rev, spec, 1).dim == 0);
  LinearOperator arev = build_generator(rev);
  Expression residual = Expression::diff_power(ctx, 0, 1, KRat(-1)) * KRat(2);
  CHECK(equal_as_functions(apply(arev, xi), residual));
  // Theta survives both.
  KernelComponent both2 = double_kernel(fwd, rev, spec, 2);
  CHECK(in_linear_span(ctx, both2.basis, theta_expr(ctx)));
  // Upsilon (weight-1/3 family) is excluded with an exact residual.
  Expression ups = upsilon_expr(ctx);
  Expression ups_residual =
      Expression::diff_power(ctx, 0, 1, KRat(rational(4, 3))) * KRat(rational(20, 7));
  CHECK(equal_as_functions(apply(arev, ups), ups_residual));
}

TEST_CASE("contragredient module of the grade-0 log pair") {
  KRat k = KRat::kappa();
  VariantConfig cfg = one_rho(k, (k - KRat(4)) / KRat(2));
  Expression z = cfg.partition_function();
  Expression lambda = solve_log_partner(cfg, z, UEAElement::one(), rho_spec(cfg));
  ModuleSnapshot snap = generated_submodule({z, lambda}, cfg, 2);
  REQUIRE(snap.component(0).size() == 2);

  KVec cz = span_coordinates(cfg.ctx, snap.component(0), z).value();
  KVec cl = span_coordinates(cfg.ctx, snap.component(0), lambda).value();
  // eta* dual to Z, xi* dual to Lambda in the grade-0 pairing.
  KMat m = {cz, cl};
  DualVector eta{0, solve(m, {KRat(1), KRat(0)}).value()};
  DualVector xi{0, solve(m, {KRat(0), KRat(1)}).value()};
  UEAElement shifted = UEAElement::L(0) - UEAElement::one() * snap.weight();
  DualVector out = contragredient_action(snap, shifted, eta);
  CHECK(out.grade == 0);
  REQUIRE(out.coords.size() == xi.coords.size());
  for (size_t i = 0; i < out.coords.size(); ++i) CHECK(out.coords[i] == xi.coords[i]);
  DualVector out2 = contragredient_action(snap, shifted, xi);
  for (const KRat& c : out2.coords) CHECK(c == KRat(0));
}

TEST_CASE("contragredient contraction detects the grade-6 singular vector") {
  KRat k6(6);
  VariantConfig cfg = one_rho(k6, KRat(-2), 12);
  Expression z = cfg.partition_function();
  UEAElement chi = UEAElement::L(-1);
  Expression lambda = solve_log_partner(cfg, z, chi, rho_spec(cfg));
  ModuleSnapshot snap = generated_submodule({lambda}, cfg, 7);

  Realization real(cfg);
  Expression singular = apply_uea(chi, real, z);
  KRat beta = log_coupling(chi, lambda, z, cfg);
  REQUIRE(beta == KRat(rational(-1, 2)));

  // eta* normalized by <eta*, a Lambda + b L_{-1}Z> = b beta at grade 1.
  const std::vector<Expression>& comp1 = snap.component(1);
  REQUIRE(comp1.size() == 2);
  KVec cl = span_coordinates(cfg.ctx, comp1, lambda).value();
  KVec cs = span_coordinates(cfg.ctx, comp1, singular).value();
  DualVector eta{1, solve(KMat{cl, cs}, {KRat(0), beta}).value()};

  UEAElement chi32 = singular_vector(k6, 3, 2);
  DualVector left = contragredient_action(snap, chi32, eta);
  CHECK(left.grade == 7);

  Expression right = apply_uea(chi32, real, lambda);
  std::optional<KVec> coords = span_coordinates(cfg.ctx, snap.component(7), right);
  REQUIRE(coords.has_value());
  CHECK(dual_pairing(left, *coords) == KRat(rational(-21560000, 243)));
}

TEST_CASE("kappa = 6 staggered module characters to grade 7") {
  VariantConfig cfg = one_rho(KRat(6), KRat(-2), 12);
  Expression z = cfg.partition_function();
  Expression lambda = solve_log_partner(cfg, z, UEAElement::L(-1), rho_spec(cfg));
  ModuleSnapshot full = generated_submodule({lambda}, cfg, 7);
  CHECK(full.character() == std::vector<int>{1, 2, 2, 4, 6, 8, 12, 17});
  ModuleSnapshot sub = generated_submodule({z}, cfg, 7);
  CHECK(sub.character() == std::vector<int>{1, 1, 1, 2, 3, 4, 6, 8});
  // The quotient character, shifted one grade up inside the full module.
  std::vector<int> quotient;
  for (int g = 1; g <= 7; ++g)
    quotient.push_back(full.character()[static_cast<size_t>(g)] -
                       sub.character()[static_cast<size_t>(g)]);
  CHECK(quotient == std::vector<int>{1, 1, 2, 3, 4, 6, 9});
}

TEST_CASE("two-passive-point variant with both curve speeds") {
  Context ctx{2, 9};
  VariantConfig cfg;
  cfg.kappa = KRat(6);
  cfg.ctx = ctx;
  cfg.active = 0;
  cfg.rho = {KRat(0), KRat(-3), KRat(-3)};

  VariantConfig cfgy1;
  cfgy1.kappa = KRat(rational(8, 3));
  cfgy1.ctx = ctx;
  cfgy1.active = 1;
  cfgy1.rho = {KRat(rational(-4, 3)), KRat(0), KRat(2)};
  cfgy1.z = cfg.partition_function();

  VariantConfig cfgy2 = cfgy1;
  cfgy2.active = 2;
  cfgy2.rho = {KRat(rational(-4, 3)), KRat(2), KRat(0)};

  Expression z = cfg.partition_function();
  Expression pref = Expression::diff_power(ctx, 0, 1, KRat(rational(-1, 2))) *
                    Expression::diff_power(ctx, 0, 2, KRat(rational(-1, 2))) *
                    Expression::diff_power(ctx, 1, 2, KRat(rational(-5, 4)));
  Expression f = pref * (Expression::point(ctx, 1) + Expression::point(ctx, 2) -
                         Expression::point(ctx, 0) * KRat(2));
  Expression lambda =
      pref * Expression::point(ctx, 0) *
          (Expression::point(ctx, 1) + Expression::point(ctx, 2) -
           Expression::point(ctx, 0) * KRat(2)) *
          KRat(rational(1, 3)) +
      pref * Expression::diff_power(ctx, 1, 2, KRat(2)) *
          Expression::log_diff(ctx, 1, 2) * KRat(rational(1, 2));

  for (const VariantConfig& c : {cfg, cfgy1, cfgy2}) {
    LinearOperator a = build_generator(c);
    CHECK(normalized(apply(a, z)).is_zero());
    CHECK(normalized(apply(a, f)).is_zero());
    CHECK(normalized(apply(a, lambda)).is_zero());
  }

  Realization real(cfg);
  CHECK(equal_as_functions(apply(real.ln(-1), f), z * KRat(rational(1, 2))));
  CHECK(normalized(apply(real.ln(-1), apply(real.ln(-1), f)) -
                   apply(real.ln(-2), f) * KRat(rational(2, 3)))
            .is_zero());
  CHECK(equal_as_functions(apply(real.ln(1), lambda), f * KRat(rational(1, 3))));
  Expression l0l = apply(real.ln(0), lambda);
  CHECK(equal_as_functions(l0l - lambda, apply(real.ln(-1), f)));
  CHECK(log_coupling(UEAElement::L(-1), lambda, f, cfg) == KRat(rational(1, 3)));

  // The solver reproduces the partner modulo the singular direction.
  AnsatzSpec spec;
  spec.gamma0[0] = KRat(rational(-1, 2));
  spec.gamma0[1] = KRat(rational(-1, 2));
  spec.gamma0[2] = KRat(rational(-5, 4));
  Expression solved = solve_log_partner(cfg, f, UEAElement::L(-1), spec);
  CHECK(in_linear_span(ctx, {normalized(z)}, normalized(solved - lambda)));
  CHECK(log_coupling(UEAElement::L(-1), solved, f, cfg) == KRat(rational(1, 3)));
}
