#pragma once

#include <optional>

#include "virmart/linear_operator.hpp"
#include "virmart/weights.hpp"

namespace virmart {

// One SLE variant: kappa, the active point, and either rho-data for the
// passive points (from which the partition function is built) or an explicit
// single-term partition function.
struct VariantConfig {
  KRat kappa = KRat::kappa();
  Context ctx;                 // npassive and the a-cutoff
  int active = 0;              // point index the generator differentiates in
  // rho value per point index; the active point's entry is ignored. Used to
  // build the partition function when z is absent, and the passive weights.
  std::vector<KRat> rho;
  std::optional<Expression> z; // explicit partition function (single term)

  /// Weight attached to point p: h_{1,2}(kappa) at the active point, h(rho_p)
  /// elsewhere.
  KRat weight_at(int p) const;
  /// The partition function: explicit z, or the rho-data product
  /// prod_{p != active} (active - p)^{rho_p/kappa} *
  /// prod_{p < q, both passive} (p - q)^{rho_p rho_q / 2 kappa},
  /// each difference written in the canonical (earlier - later) order.
  Expression partition_function() const;
};

// Caches the operator realization of the Virasoro generators for one config.
class Realization {
 public:
  explicit Realization(VariantConfig cfg);

  const VariantConfig& config() const { return cfg_; }

  /// The differential-operator realization of L_n; |n| <= 2 explicit, beyond
  /// that by the nested-commutator recursion. Cached.
  const LinearOperator& ln(int n);

 private:
  LinearOperator build_explicit(int n) const;
  VariantConfig cfg_;
  std::map<int, LinearOperator> cache_;
};

/// The variant's generator, defined by conjugating the driving-process
/// generator by the partition function: A = Z . G . Z^{-1} with
/// G = (kappa/2) d^2_active + kappa (d_active log Z) d_active
///     + sum_{p != active} 2/(p - active) d_p + (a-drift).
LinearOperator build_generator(const VariantConfig& cfg);

/// The printed one-passive-point generator with potential
/// -[rho(rho+4-kappa)/(2 kappa)] (y-x)^{-2}; active point x.
LinearOperator printed_generator(const KRat& kappa, const KRat& rho, Context ctx);

/// The printed reversed generator with potential -2 h_{1,2}(kappa) (x-y)^{-2};
/// active point y.
LinearOperator printed_reversed_generator(const KRat& kappa, Context ctx);

}  // namespace virmart
