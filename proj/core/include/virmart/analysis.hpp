#pragma once

#include <optional>
#include <string>
#include <vector>

#include "virmart/linalg.hpp"
#include "virmart/realization.hpp"
#include "virmart/uea.hpp"

namespace virmart {

// Coordinatizes expressions over a shared basis of normalized term keys.
// Absorb every expression of a linear-algebra problem first, then read
// coordinates; reading may still extend the basis, so fetch dim() last and
// pad with pad_to().
class CoordMap {
 public:
  explicit CoordMap(Context ctx) : ctx_(ctx) {}

  /// Returns true if absorbing e changed the representation of previously
  /// issued coordinates (they must then be recomputed).
  bool absorb(const Expression& e) { return frame_.absorb(e); }
  KVec coords(const Expression& e);
  size_t dim() const { return basis_.size(); }
  static void pad_to(KVec& v, size_t n) { v.resize(n, KRat(0)); }

 private:
  Context ctx_;
  NormalizationFrame frame_;
  std::vector<TermKey> basis_;
  std::map<TermKey, size_t, TermKeyLess> index_;
};

// Shape of the function-space ansatz: difference-power prefactor gamma0 per
// pair, downward integer exponent shifts to -laurent, log powers up to
// logcap, and polynomial content. The grade-m component collects all terms
// of total degree deg(gamma0) + m.
struct AnsatzSpec {
  std::array<KRat, kMaxPairs> gamma0{};
  int laurent = 0;
  int logcap = 1;
  int maxgrade = 6;
};

/// All term keys of the grade-m ansatz component, in canonical order.
/// a-variables are capped at max_a_index so generator applications stay
/// inside the context cutoff.
std::vector<TermKey> ansatz_basis(const Context& ctx, const AnsatzSpec& spec, int m,
                                  int max_a_index);

struct KernelComponent {
  std::vector<Expression> basis;
  int dim = 0;
};

/// Exact nullspace of the variant's generator on the grade-m ansatz
/// component. Over symbolic kappa the rank is generic; at rational kappa it
/// is the rank of that specialization.
KernelComponent graded_kernel(const VariantConfig& cfg, const AnsatzSpec& spec, int m);

/// Intersection of the nullspaces of two generators (same context) on the
/// grade-m ansatz component.
KernelComponent double_kernel(const VariantConfig& cfga, const VariantConfig& cfgb,
                              const AnsatzSpec& spec, int m);

// Graded closure of kernel seeds under L_n, n in [-2, 2], with per-grade
// bases and the exact matrices of the generator action between components.
// Grade 0 is the lowest nonvanishing component reached by the closure.
class ModuleSnapshot {
 public:
  const VariantConfig& config() const { return cfg_; }
  /// Number of graded components (grades 0 .. size()-1).
  int size() const { return static_cast<int>(comp_.size()); }
  const std::vector<Expression>& component(int grade) const;
  /// Weight of the grade-0 component: its total degree plus all attached
  /// point weights; L_0 acts on grade m as (weight() + m) plus nilpotent part.
  const KRat& weight() const { return weight_; }
  /// Graded dimensions, grades 0 .. size()-1.
  std::vector<int> character() const;
  /// Matrix of L_n from grade g to grade g-n: column j holds the coordinates
  /// of L_n b_j in the target component's basis. Empty target -> 0 x dim.
  const KMat& matrix(int n, int g) const;

 private:
  friend ModuleSnapshot generated_submodule(const std::vector<Expression>& seeds,
                                            const VariantConfig& cfg, int maxgrade);
  VariantConfig cfg_;
  KRat weight_;
  std::vector<std::vector<Expression>> comp_;
  // mats_[n + 2][g] is the matrix of L_n on grade g.
  std::array<std::vector<KMat>, 5> mats_;
};

/// Closure of the seeds (each verified to lie in the generator's kernel)
/// under L_n, n in [-2, 2], up to grade maxgrade above the lowest component.
ModuleSnapshot generated_submodule(const std::vector<Expression>& seeds,
                                   const VariantConfig& cfg, int maxgrade);

/// Realizes a PBW element as nested operator applications (rightmost mode
/// acts first) and applies it.
Expression apply_uea(const UEAElement& u, Realization& real, const Expression& e);

/// Grade-m vectors annihilated by L_1 and L_2 that are true L_0 eigenvectors.
std::vector<Expression> find_singulars(const ModuleSnapshot& snap, int m);

struct JordanStructure {
  int rank = 0;        // rank of L_0 - eigenvalue on the component
  int nilpotency = 1;  // least k with (L_0 - eigenvalue)^k = 0
};

JordanStructure jordan_structure(const ModuleSnapshot& snap, int grade);

/// Solves for the logarithmic partner Lambda of the singular vector chi.Z:
/// (L_0 - h - ell) Lambda = chi.Z, A Lambda = 0, and L_n Lambda inside the
/// Z-submodule for n = 1, 2. The residual freedom (adding grade-ell elements
/// of the submodule) is removed by zeroing Lambda's coordinates on the
/// submodule's pivot directions.
Expression solve_log_partner(const VariantConfig& cfg, const Expression& z,
                             const UEAElement& chi, const AnsatzSpec& spec);

/// The logarithmic coupling: dagger(chi) applied to Lambda must be
/// proportional to Z; returns the proportionality factor.
KRat log_coupling(const UEAElement& chi, const Expression& lambda, const Expression& z,
                  const VariantConfig& cfg);

// Coordinates of a vector in the graded dual of a snapshot component.
struct DualVector {
  int grade = 0;
  KVec coords;
};

/// Contragredient action <L_n v*, v> = <v*, L_{-n} v>: transposed matrices,
/// with words acting rightmost mode first.
DualVector contragredient_action(const ModuleSnapshot& snap, const UEAElement& u,
                                 const DualVector& v);

/// Bilinear pairing of a dual vector against a module element's coordinates
/// at the same grade.
KRat dual_pairing(const DualVector& v, const KVec& w);

struct JordanData {
  int grade = 0;
  int rank = 0;
  int nilpotency = 1;
};

// Flat summary of one staggered-module computation, ready for reporting.
struct StaggeredReport {
  std::string variant;
  KRat kappa;
  KRat h_left, h_right;
  int ell = 0;
  std::optional<KRat> beta;
  std::vector<int> char_full, char_sub, char_quotient;
  std::vector<JordanData> jordan;
  std::vector<std::string> singulars;
  std::string notes;
};

}  // namespace virmart
