#pragma once

#include "virmart/uea.hpp"

namespace virmart {

// Vector in a Verma module of highest weight h: a combination of
// normal-ordered pure-lowering words applied to the highest-weight vector.
// The empty word is the highest-weight vector itself.
struct VermaVector {
  UEAElement element;  // every word uses modes < 0 only

  bool is_zero() const { return element.is_zero(); }
  bool operator==(const VermaVector& o) const { return element == o.element; }
};

/// All normal-ordered pure-lowering words of the given grade (partitions of
/// the grade, listed deterministically).
std::vector<PBWMonomial> lowering_basis(long grade);

/// Acts with an arbitrary UEA element on a Verma vector: normal-orders,
/// kills raising modes on the highest-weight vector and evaluates L_0 as h.
VermaVector verma_act(const UEAElement& op, const VermaVector& v, const KRat& kappa,
                      const KRat& h);

/// The singular vector at grade r*s in the Verma module of weight h_{r,s},
/// normalized so the coefficient of L_{-1}^{rs} is 1. Only degenerate labels
/// r, s >= 1 are accepted.
UEAElement singular_vector(const KRat& kappa, long r, long s);

}  // namespace virmart
