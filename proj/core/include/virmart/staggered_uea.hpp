#pragma once

#include "virmart/verma.hpp"

namespace virmart {

// Abstract staggered module at c = 0 (kappa = 6) generated by a vector eta
// over a weight-0 highest-weight vector xi, with the defining relations
//   L_0  eta = eta + L_{-1} xi,   L_1 eta = beta xi,   L_n eta = 0  (n >= 2),
//   L_0  xi  = 0,                 L_n xi  = 0          (n >= 1).
// Vectors are combinations (U eta) + (V xi) with U, V pure-lowering words.
// The xi side is computed in the Verma module of weight 0; the null vector
// of the quotient sits at grade >= 2, so grade-0 and grade-1 xi components
// are unambiguous.
struct StaggeredVector {
  UEAElement eta;
  VermaVector xi;

  bool is_zero() const { return eta.is_zero() && xi.is_zero(); }
};

/// Acts with a UEA element; coefficients may involve a formal beta, carried
/// through the kappa-rational coefficient field (kappa itself is fixed = 6).
StaggeredVector staggered_apply(const UEAElement& op, const StaggeredVector& v,
                                const KRat& beta);

}  // namespace virmart
