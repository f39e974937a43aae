#include "virmart/analysis.hpp"

#include <algorithm>
#include <functional>

namespace virmart {

namespace {

Expression key_expression(const Context& ctx, const TermKey& k) {
  Expression e(ctx);
  e.add_term(k, KRat(1));
  return e;
}

/// Combines ansatz keys with coordinates into an expression.
Expression combine(const Context& ctx, const std::vector<TermKey>& keys, const KVec& v) {
  Expression e(ctx);
  for (size_t i = 0; i < keys.size(); ++i)
    if (!v[i].is_zero()) e.add_term(keys[i], v[i]);
  return e;
}

KMat identity(size_t n) {
  KMat m(n, KVec(n, KRat(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = KRat(1);
  return m;
}

KMat mat_mul(const KMat& a, const KMat& b) {
  size_t rows = a.size(), inner = b.size(), cols = inner ? b[0].size() : 0;
  KMat out(rows, KVec(cols, KRat(0)));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool mat_is_zero(const KMat& m) {
  for (const auto& row : m)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

/// The total degree of a homogeneous expression.
KRat homogeneous_degree(const Expression& e) {
  auto parts = degree_split(e);
  if (parts.size() != 1) throw Error("expected a homogeneous expression");
  return parts[0].first;
}

}  // namespace

KVec CoordMap::coords(const Expression& e) {
  Expression n = frame_.normalize(e);
  KVec v(basis_.size(), KRat(0));
  for (const auto& [k, c] : n.terms()) {
    auto it = index_.find(k);
    size_t i;
    if (it == index_.end()) {
      i = basis_.size();
      basis_.push_back(k);
      index_.emplace(k, i);
      v.resize(basis_.size(), KRat(0));
    } else {
      i = it->second;
    }
    v[i] = c;
  }
  return v;
}

std::vector<TermKey> ansatz_basis(const Context& ctx, const AnsatzSpec& spec, int m,
                                  int max_a_index) {
  std::vector<TermKey> out;
  int npairs = ctx.npairs();
  int npoints = ctx.npoints();

  // Shift vectors d_p >= -laurent with sum <= m, then polynomial monomials
  // making up the remaining degree, then log powers (degree-neutral).
  std::vector<int> shift(static_cast<size_t>(npairs), 0);
  std::function<void(int, int)> shifts = [&](int p, int used) {
    if (p == npairs) {
      int rem = m - used;
      if (rem < 0) return;
      // Monomials in the points (weight 1) and a_l (weight l) of degree rem.
      int navars = std::max(0, max_a_index - 1);
      TermKey k;
      for (int i = 0; i < npairs; ++i) k.diff[i] = spec.gamma0[i] + KRat(shift[i]);
      k.apow.assign(static_cast<size_t>(navars), 0);
      // var counts points 0..npoints-1, then a_l for l = 2..max_a_index.
      std::function<void(int, int)> monos = [&](int var, int left) {
        if (var == npoints + navars) {
          if (left != 0) return;
          // Log powers on the pairs the context actually has.
          std::function<void(int)> logs = [&](int p2) {
            if (p2 == npairs) {
              TermKey kk = k;
              while (!kk.apow.empty() && kk.apow.back() == 0) kk.apow.pop_back();
              out.push_back(kk);
              return;
            }
            for (int lp = 0; lp <= spec.logcap; ++lp) {
              k.logp[p2] = lp;
              logs(p2 + 1);
            }
            k.logp[p2] = 0;
          };
          logs(0);
          return;
        }
        int weight = var < npoints ? 1 : var - npoints + 2;
        for (int e = 0; e * weight <= left; ++e) {
          if (var < npoints)
            k.pt[static_cast<size_t>(var)] = e;
          else
            k.apow[static_cast<size_t>(var - npoints)] = e;
          monos(var + 1, left - e * weight);
        }
        if (var < npoints)
          k.pt[static_cast<size_t>(var)] = 0;
        else
          k.apow[static_cast<size_t>(var - npoints)] = 0;
      };
      monos(0, rem);
      return;
    }
    for (int d = -spec.laurent; used + d <= m; ++d) {
      shift[static_cast<size_t>(p)] = d;
      shifts(p + 1, used + d);
    }
    shift[static_cast<size_t>(p)] = 0;
  };
  shifts(0, 0);

  std::sort(out.begin(), out.end(), TermKeyLess{});
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TermKey& a, const TermKey& b) { return a == b; }),
            out.end());
  return out;
}

namespace {

/// Restricts the enumerated keys to a functionally independent subset: keys
/// whose normalized expressions are linear combinations of earlier ones
/// (e.g. an integer difference power versus its binomial expansion) would
/// otherwise inject zero functions into the nullspace.
std::vector<TermKey> independent_keys(const Context& ctx, const std::vector<TermKey>& keys) {
  CoordMap cm(ctx);
  std::vector<Expression> exprs;
  exprs.reserve(keys.size());
  for (const TermKey& k : keys) {
    exprs.push_back(key_expression(ctx, k));
    cm.absorb(exprs.back());
  }
  std::vector<KVec> reduced;  // rows in row-echelon form
  std::vector<size_t> lead;
  std::vector<TermKey> out;
  for (size_t i = 0; i < keys.size(); ++i) {
    KVec v = cm.coords(exprs[i]);
    CoordMap::pad_to(v, cm.dim());
    for (size_t r = 0; r < reduced.size(); ++r) {
      if (lead[r] >= v.size() || v[lead[r]].is_zero()) continue;
      KRat f = v[lead[r]] / reduced[r][lead[r]];
      for (size_t c = 0; c < reduced[r].size() && c < v.size(); ++c)
        v[c] -= f * reduced[r][c];
    }
    size_t piv = v.size();
    for (size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) { piv = c; break; }
    if (piv == v.size()) continue;  // functionally dependent
    reduced.push_back(std::move(v));
    lead.push_back(piv);
    out.push_back(keys[i]);
  }
  return out;
}

KernelComponent kernel_of(const std::vector<LinearOperator>& ops, const Context& ctx,
                          const std::vector<TermKey>& rawkeys) {
  KernelComponent out;
  std::vector<TermKey> keys = independent_keys(ctx, rawkeys);
  if (keys.empty()) return out;
  // One coordinate block per operator, stacked into a single matrix.
  std::vector<std::vector<KVec>> percols(ops.size());
  std::vector<CoordMap> maps;
  maps.reserve(ops.size());
  for (size_t oi = 0; oi < ops.size(); ++oi) maps.emplace_back(ctx);
  std::vector<std::vector<Expression>> perimages(ops.size());
  for (size_t oi = 0; oi < ops.size(); ++oi) {
    for (const TermKey& k : keys) {
      Expression img = apply(ops[oi], key_expression(ctx, k));
      maps[oi].absorb(img);
      perimages[oi].push_back(std::move(img));
    }
    for (const Expression& img : perimages[oi])
      percols[oi].push_back(maps[oi].coords(img));
  }
  size_t nrows = 0;
  for (size_t oi = 0; oi < ops.size(); ++oi) nrows += maps[oi].dim();
  KMat m(nrows, KVec(keys.size(), KRat(0)));
  size_t row0 = 0;
  for (size_t oi = 0; oi < ops.size(); ++oi) {
    for (size_t c = 0; c < keys.size(); ++c) {
      KVec& col = percols[oi][c];
      CoordMap::pad_to(col, maps[oi].dim());
      for (size_t r = 0; r < maps[oi].dim(); ++r) m[row0 + r][c] = col[r];
    }
    row0 += maps[oi].dim();
  }
  for (const KVec& v : null_space(std::move(m), keys.size())) {
    Expression e = combine(ctx, keys, v);
    for (const LinearOperator& op : ops)
      if (!normalized(apply(op, e)).is_zero())
        throw Error("graded kernel reverification failed");
    out.basis.push_back(std::move(e));
  }
  out.dim = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace

KernelComponent graded_kernel(const VariantConfig& cfg, const AnsatzSpec& spec, int m) {
  LinearOperator a = build_generator(cfg);
  int maxa = cfg.ctx.acutoff - a.headroom();
  return kernel_of({std::move(a)}, cfg.ctx, ansatz_basis(cfg.ctx, spec, m, maxa));
}

KernelComponent double_kernel(const VariantConfig& cfga, const VariantConfig& cfgb,
                              const AnsatzSpec& spec, int m) {
  if (cfga.ctx != cfgb.ctx) throw Error("double_kernel: context mismatch");
  LinearOperator a = build_generator(cfga);
  LinearOperator b = build_generator(cfgb);
  int maxa = cfga.ctx.acutoff - std::max(a.headroom(), b.headroom());
  return kernel_of({std::move(a), std::move(b)}, cfga.ctx,
                   ansatz_basis(cfga.ctx, spec, m, maxa));
}

Expression apply_uea(const UEAElement& u, Realization& real, const Expression& e) {
  Expression out(e.context());
  for (const auto& [mono, coeff] : u.terms()) {
    Expression acc = e;
    for (auto it = mono.modes.rbegin(); it != mono.modes.rend(); ++it)
      acc = apply(real.ln(*it), acc);
    out += acc * coeff;
  }
  return out;
}

const std::vector<Expression>& ModuleSnapshot::component(int grade) const {
  static const std::vector<Expression> kEmpty;
  if (grade < 0 || grade >= size()) return kEmpty;
  return comp_[static_cast<size_t>(grade)];
}

std::vector<int> ModuleSnapshot::character() const {
  std::vector<int> out;
  out.reserve(comp_.size());
  for (const auto& c : comp_) out.push_back(static_cast<int>(c.size()));
  return out;
}

const KMat& ModuleSnapshot::matrix(int n, int g) const {
  static const KMat kEmpty;
  if (n < -2 || n > 2 || g < 0 || g >= size()) return kEmpty;
  return mats_[static_cast<size_t>(n + 2)][static_cast<size_t>(g)];
}

namespace {

/// True (and records coordinates) if e lies in the span of basis; both are
/// coordinatized together so the normalization frame is shared.
std::optional<KVec> span_coords(const Context& ctx, const std::vector<Expression>& basis,
                                const Expression& e) {
  CoordMap cm(ctx);
  for (const Expression& b : basis) cm.absorb(b);
  cm.absorb(e);
  std::vector<KVec> rows;
  rows.reserve(basis.size());
  for (const Expression& b : basis) rows.push_back(cm.coords(b));
  KVec v = cm.coords(e);
  for (KVec& r : rows) CoordMap::pad_to(r, cm.dim());
  CoordMap::pad_to(v, cm.dim());
  return in_span(rows, v);
}

}  // namespace

ModuleSnapshot generated_submodule(const std::vector<Expression>& seeds,
                                   const VariantConfig& cfg, int maxgrade) {
  if (seeds.empty()) throw Error("generated_submodule: no seeds");
  Realization real(cfg);
  LinearOperator a = build_generator(cfg);
  for (const Expression& s : seeds)
    if (!normalized(apply(a, s)).is_zero())
      throw Error("generated_submodule: seed is not in the generator's kernel");

  KRat deg0 = homogeneous_degree(seeds[0]);
  std::map<long, std::vector<Expression>> comps;

  // Grade bookkeeping is relative to the first seed until the bottom is
  // known. insert() reports whether the element enlarged its component.
  auto grade_of = [&](const Expression& e) -> long {
    KRat d = homogeneous_degree(e) - deg0;
    auto i = d.as_integer();
    if (!i) throw Error("generated_submodule: seed grades differ non-integrally");
    return *i;
  };
  // Incremental per-grade echelon state: a shared CoordMap plus reduced rows
  // of the accepted basis. When absorbing a candidate lowers a class minimum,
  // previously issued coordinates are stale and the rows are rebuilt.
  struct CompState {
    CoordMap cm;
    std::vector<KVec> reduced;
    std::vector<size_t> lead;
    explicit CompState(Context ctx) : cm(ctx) {}
  };
  std::map<long, CompState> states;
  auto reduce_row = [](CompState& st, KVec v) -> std::optional<std::pair<KVec, size_t>> {
    CoordMap::pad_to(v, st.cm.dim());
    for (size_t r = 0; r < st.reduced.size(); ++r) {
      if (st.lead[r] >= v.size() || v[st.lead[r]].is_zero()) continue;
      KRat f = v[st.lead[r]] / st.reduced[r][st.lead[r]];
      for (size_t c = 0; c < st.reduced[r].size() && c < v.size(); ++c)
        v[c] -= f * st.reduced[r][c];
    }
    for (size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) return std::make_pair(std::move(v), c);
    return std::nullopt;
  };
  std::vector<std::pair<long, Expression>> work;
  auto insert = [&](long g, const Expression& e) {
    Expression n = normalized(e);
    if (n.is_zero()) return;
    auto& c = comps[g];
    auto st = states.find(g);
    if (st == states.end()) st = states.emplace(g, CompState(cfg.ctx)).first;
    if (st->second.cm.absorb(n)) {
      // Stale coordinates: re-echelonize the accepted basis.
      st->second.reduced.clear();
      st->second.lead.clear();
      for (const Expression& b : c) {
        auto row = reduce_row(st->second, st->second.cm.coords(b));
        if (!row) throw Error("generated_submodule: basis became dependent");
        st->second.reduced.push_back(std::move(row->first));
        st->second.lead.push_back(row->second);
      }
    }
    auto row = reduce_row(st->second, st->second.cm.coords(n));
    if (!row) return;  // already in the span
    st->second.reduced.push_back(std::move(row->first));
    st->second.lead.push_back(row->second);
    c.push_back(n);
    work.emplace_back(g, n);
  };
  // The seeds may sit above the lowest component, which is only discovered
  // during the closure; rerun with the grade window re-anchored until the
  // bottom stabilizes.
  const long kFloor = -16;
  long bottom = 0;
  for (;;) {
    comps.clear();
    states.clear();
    work.clear();
    for (const Expression& s : seeds) insert(grade_of(s), s);
    while (!work.empty()) {
      auto [g, e] = std::move(work.back());
      work.pop_back();
      for (int n = -2; n <= 2; ++n) {
        long target = g - n;
        if (target < kFloor || target > maxgrade + bottom) continue;
        insert(target, apply(real.ln(n), e));
      }
    }
    long found = comps.begin()->first;
    if (found == bottom) break;
    bottom = found;
  }

  ModuleSnapshot snap;
  snap.cfg_ = cfg;
  snap.comp_.assign(static_cast<size_t>(maxgrade) + 1, {});
  for (auto& [g, c] : comps) {
    long rel = g - bottom;
    if (rel >= 0 && rel <= maxgrade) snap.comp_[static_cast<size_t>(rel)] = std::move(c);
  }
  KRat h = deg0 + KRat(bottom);
  for (int p = 0; p < cfg.ctx.npoints(); ++p) h += cfg.weight_at(p);
  snap.weight_ = h;

  for (const auto& c : snap.comp_)
    for (const Expression& b : c)
      if (!normalized(apply(a, b)).is_zero())
        throw Error("generated_submodule: closure left the kernel");

  for (int n = -2; n <= 2; ++n) {
    auto& mats = snap.mats_[static_cast<size_t>(n + 2)];
    mats.assign(static_cast<size_t>(maxgrade) + 1, KMat{});
    for (int g = 0; g <= maxgrade; ++g) {
      int t = g - n;
      const auto& src = snap.comp_[static_cast<size_t>(g)];
      if (src.empty() || t < 0 || t > maxgrade) continue;
      const auto& dst = snap.comp_[static_cast<size_t>(t)];
      // One shared coordinatization per block, then a transform-tracking
      // echelon of the target basis so every image column is solved by a
      // single reduction pass.
      std::vector<Expression> images;
      images.reserve(src.size());
      for (const Expression& e : src) images.push_back(apply(real.ln(n), e));
      CoordMap cm(cfg.ctx);
      for (const Expression& e : dst) cm.absorb(e);
      for (const Expression& e : images) cm.absorb(e);
      std::vector<KVec> dcoords, icoords;
      for (const Expression& e : dst) dcoords.push_back(cm.coords(e));
      for (const Expression& e : images) icoords.push_back(cm.coords(e));
      for (KVec& v : dcoords) CoordMap::pad_to(v, cm.dim());
      for (KVec& v : icoords) CoordMap::pad_to(v, cm.dim());
      std::vector<KVec> reduced, trans;
      std::vector<size_t> lead;
      for (size_t j = 0; j < dst.size(); ++j) {
        KVec v = std::move(dcoords[j]);
        KVec tr(dst.size(), KRat(0));
        tr[j] = KRat(1);
        for (size_t r = 0; r < reduced.size(); ++r) {
          if (v[lead[r]].is_zero()) continue;
          KRat f = v[lead[r]] / reduced[r][lead[r]];
          for (size_t c = 0; c < v.size(); ++c) v[c] -= f * reduced[r][c];
          for (size_t c = 0; c < dst.size(); ++c) tr[c] -= f * trans[r][c];
        }
        size_t piv = v.size();
        for (size_t c = 0; c < v.size(); ++c)
          if (!v[c].is_zero()) { piv = c; break; }
        if (piv == v.size())
          throw Error("generated_submodule: component basis is dependent");
        reduced.push_back(std::move(v));
        trans.push_back(std::move(tr));
        lead.push_back(piv);
      }
      KMat m(dst.size(), KVec(src.size(), KRat(0)));
      for (size_t j = 0; j < src.size(); ++j) {
        KVec v = std::move(icoords[j]);
        KVec coeff(dst.size(), KRat(0));
        for (size_t r = 0; r < reduced.size(); ++r) {
          if (v[lead[r]].is_zero()) continue;
          KRat f = v[lead[r]] / reduced[r][lead[r]];
          for (size_t c = 0; c < v.size(); ++c) v[c] -= f * reduced[r][c];
          for (size_t c = 0; c < dst.size(); ++c) coeff[c] += f * trans[r][c];
        }
        for (const KRat& c : v)
          if (!c.is_zero())
            throw Error("generated_submodule: action leaves the closure");
        for (size_t i = 0; i < dst.size(); ++i) m[i][j] = coeff[i];
      }
      mats[static_cast<size_t>(g)] = std::move(m);
    }
  }
  return snap;
}

std::vector<Expression> find_singulars(const ModuleSnapshot& snap, int m) {
  const auto& comp = snap.component(m);
  if (comp.empty()) return {};
  size_t dim = comp.size();
  KMat stacked;
  auto add_rows = [&](const KMat& rows) {
    for (const KVec& r : rows) stacked.push_back(r);
  };
  add_rows(snap.matrix(1, m));
  add_rows(snap.matrix(2, m));
  KMat l0 = snap.matrix(0, m);
  if (l0.empty()) l0 = KMat(dim, KVec(dim, KRat(0)));
  KRat ev = snap.weight() + KRat(m);
  for (size_t i = 0; i < dim; ++i) l0[i][i] -= ev;
  add_rows(l0);
  std::vector<Expression> out;
  for (const KVec& v : null_space(std::move(stacked), dim)) {
    Expression e(snap.config().ctx);
    for (size_t i = 0; i < dim; ++i)
      if (!v[i].is_zero()) e += comp[i] * v[i];
    out.push_back(normalized(e));
  }
  return out;
}

JordanStructure jordan_structure(const ModuleSnapshot& snap, int grade) {
  JordanStructure out;
  const auto& comp = snap.component(grade);
  if (comp.empty()) return out;
  size_t dim = comp.size();
  KMat m = snap.matrix(0, grade);
  if (m.empty()) m = KMat(dim, KVec(dim, KRat(0)));
  KRat ev = snap.weight() + KRat(grade);
  for (size_t i = 0; i < dim; ++i) m[i][i] -= ev;
  out.rank = static_cast<int>(rank(m));
  KMat p = identity(dim);
  int k = 0;
  do {
    p = mat_mul(p, m);
    ++k;
    if (k > static_cast<int>(dim)) throw Error("jordan_structure: L0 not unipotent here");
  } while (!mat_is_zero(p));
  out.nilpotency = k;
  return out;
}

Expression solve_log_partner(const VariantConfig& cfg, const Expression& z,
                             const UEAElement& chi, const AnsatzSpec& spec) {
  Realization real(cfg);
  long ell = 0;
  if (!chi.homogeneous_grade(ell) || ell < 0)
    throw Error("solve_log_partner: chi must be homogeneous of grade >= 0");
  Expression chiz = normalized(apply_uea(chi, real, z));
  if (chiz.is_zero()) throw Error("solve_log_partner: chi.Z vanishes");

  ModuleSnapshot snap = generated_submodule({z}, cfg, static_cast<int>(ell));
  KRat h = snap.weight();

  // Place z inside the ansatz grading.
  KRat gdeg(0);
  for (int p = 0; p < cfg.ctx.npairs(); ++p) gdeg += spec.gamma0[p];
  KRat rel = homogeneous_degree(z) - gdeg;
  auto m0 = rel.as_integer();
  if (!m0) throw Error("solve_log_partner: ansatz prefactor does not match Z");

  LinearOperator a = build_generator(cfg);
  int maxa = cfg.ctx.acutoff - std::max(a.headroom(), 2);
  std::vector<TermKey> keys =
      ansatz_basis(cfg.ctx, spec, static_cast<int>(*m0 + ell), maxa);
  if (keys.empty()) throw Error("solve_log_partner: empty ansatz component");

  const auto& sub_ell = snap.component(static_cast<int>(ell));
  const auto& sub_l1 = snap.component(static_cast<int>(ell) - 1);
  const auto& sub_l2 = snap.component(static_cast<int>(ell) - 2);
  size_t nc = keys.size();
  size_t nvars = nc + sub_l1.size() + sub_l2.size();

  // Four stacked blocks: A.Lambda = 0; (L0-h-ell).Lambda = chi.Z;
  // L1.Lambda in the submodule; L2.Lambda in the submodule.
  KMat m;
  KVec rhs;
  auto add_block = [&](const std::vector<Expression>& cols_c,
                       const std::vector<Expression>& cols_d, size_t dcol0,
                       const Expression* rhse) {
    CoordMap cm(cfg.ctx);
    for (const Expression& e : cols_c) cm.absorb(e);
    for (const Expression& e : cols_d) cm.absorb(e);
    if (rhse) cm.absorb(*rhse);
    std::vector<KVec> cc, dd;
    for (const Expression& e : cols_c) cc.push_back(cm.coords(e));
    for (const Expression& e : cols_d) dd.push_back(cm.coords(e));
    KVec rv = rhse ? cm.coords(*rhse) : KVec{};
    size_t dim = cm.dim();
    CoordMap::pad_to(rv, dim);
    size_t row0 = m.size();
    m.resize(row0 + dim, KVec(nvars, KRat(0)));
    rhs.resize(row0 + dim, KRat(0));
    for (size_t c = 0; c < cc.size(); ++c) {
      CoordMap::pad_to(cc[c], dim);
      for (size_t r = 0; r < dim; ++r) m[row0 + r][c] = cc[c][r];
    }
    for (size_t c = 0; c < dd.size(); ++c) {
      CoordMap::pad_to(dd[c], dim);
      for (size_t r = 0; r < dim; ++r) m[row0 + r][dcol0 + c] = -dd[c][r];
    }
    for (size_t r = 0; r < dim; ++r) rhs[row0 + r] = rhse ? rv[r] : KRat(0);
  };

  std::vector<Expression> ae, l0e, l1e, l2e;
  KRat ev = h + KRat(ell);
  for (const TermKey& k : keys) {
    Expression e = key_expression(cfg.ctx, k);
    ae.push_back(apply(a, e));
    l0e.push_back(apply(real.ln(0), e) - e * ev);
    l1e.push_back(apply(real.ln(1), e));
    l2e.push_back(apply(real.ln(2), e));
  }
  add_block(ae, {}, nc, nullptr);
  add_block(l0e, {}, nc, &chiz);
  add_block(l1e, sub_l1, nc, nullptr);
  add_block(l2e, sub_l2, nc + sub_l1.size(), nullptr);

  auto sol = solve(std::move(m), std::move(rhs));
  if (!sol) throw Error("solve_log_partner: no staggered solution in this ansatz");
  Expression lambda = combine(cfg.ctx, keys, *sol);

  // Remove the residual grade-ell submodule freedom: zero lambda's
  // coordinates on the submodule's pivot directions.
  if (!sub_ell.empty()) {
    CoordMap cm(cfg.ctx);
    for (const Expression& s : sub_ell) cm.absorb(s);
    cm.absorb(lambda);
    std::vector<KVec> rows;
    for (const Expression& s : sub_ell) rows.push_back(cm.coords(s));
    KVec y = cm.coords(lambda);
    for (KVec& r : rows) CoordMap::pad_to(r, cm.dim());
    CoordMap::pad_to(y, cm.dim());
    KMat red = rows;
    std::vector<size_t> pivots = rref(red);
    KMat p(pivots.size(), KVec(sub_ell.size(), KRat(0)));
    KVec prhs(pivots.size(), KRat(0));
    for (size_t k = 0; k < pivots.size(); ++k) {
      for (size_t j = 0; j < sub_ell.size(); ++j) p[k][j] = rows[j][pivots[k]];
      prhs[k] = y[pivots[k]];
    }
    auto beta = solve(std::move(p), std::move(prhs));
    if (!beta) throw Error("solve_log_partner: normalization failed");
    for (size_t j = 0; j < sub_ell.size(); ++j)
      if (!(*beta)[j].is_zero()) lambda -= sub_ell[j] * (*beta)[j];
  }
  return normalized(lambda);
}

KRat log_coupling(const UEAElement& chi, const Expression& lambda, const Expression& z,
                  const VariantConfig& cfg) {
  Realization real(cfg);
  Expression u = normalized(apply_uea(dagger(chi, cfg.kappa), real, lambda));
  if (u.is_zero()) return KRat(0);
  auto c = span_coords(cfg.ctx, {z}, u);
  if (!c) throw Error("log_coupling: dagger(chi).Lambda is not proportional to Z");
  return (*c)[0];
}

namespace {

/// One dual mode: <L_n v*, .> = <v*, L_{-n} .>, so the transposed matrix of
/// L_{-n} maps dual grade g to g - n. Modes beyond the stored range fall
/// back on L_{+-m} = [L_{+-(m-1)}, L_{+-1}] / +-(m-2).
DualVector dual_mode(const ModuleSnapshot& snap, int n, const DualVector& v) {
  if (n >= -2 && n <= 2) {
    int src = v.grade - n;  // module grade paired with the new dual grade
    const KMat& m = snap.matrix(-n, src);
    size_t dim = snap.component(src).size();
    KVec next(dim, KRat(0));
    if (!m.empty()) {
      // m maps module grade src -> v.grade; transpose acts on duals.
      for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < m.size() && j < v.coords.size(); ++j)
          next[i] += m[j][i] * v.coords[j];
    }
    return DualVector{src, std::move(next)};
  }
  int s = n > 0 ? 1 : -1;
  int m = n > 0 ? n : -n;
  // n > 0: L_m = (L_{m-1} L_1 - L_1 L_{m-1}) / (m-2); rightmost acts first.
  // n < 0: L_{-m} = (L_{-1} L_{-(m-1)} - L_{-(m-1)} L_{-1}) / (m-2).
  DualVector a = dual_mode(snap, s * (m - 1), dual_mode(snap, s, v));
  DualVector b = dual_mode(snap, s, dual_mode(snap, s * (m - 1), v));
  if (s < 0) std::swap(a, b);
  KRat scale = KRat(1) / KRat(m - 2);
  for (size_t i = 0; i < a.coords.size(); ++i)
    a.coords[i] = (a.coords[i] - b.coords[i]) * scale;
  return a;
}

}  // namespace

DualVector contragredient_action(const ModuleSnapshot& snap, const UEAElement& u,
                                 const DualVector& v) {
  std::optional<DualVector> out;
  for (const auto& [mono, coeff] : u.terms()) {
    DualVector acc = v;
    for (auto it = mono.modes.rbegin(); it != mono.modes.rend(); ++it)
      acc = dual_mode(snap, *it, acc);
    for (KRat& c : acc.coords) c *= coeff;
    if (!out) {
      out = std::move(acc);
    } else {
      if (out->grade != acc.grade)
        throw Error("contragredient_action: inhomogeneous element");
      for (size_t i = 0; i < out->coords.size(); ++i) out->coords[i] += acc.coords[i];
    }
  }
  if (!out) return DualVector{v.grade, KVec(v.coords.size(), KRat(0))};
  return *out;
}

KRat dual_pairing(const DualVector& v, const KVec& w) {
  KRat out(0);
  for (size_t i = 0; i < v.coords.size() && i < w.size(); ++i) out += v.coords[i] * w[i];
  return out;
}

}  // namespace virmart
