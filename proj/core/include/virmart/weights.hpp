#pragma once

#include <utility>
#include <vector>

#include "virmart/kappa_rational.hpp"

namespace virmart {

/// c(kappa) = 13 - 6 kappa/4 - 6 * 4/kappa.
KRat central_charge(const KRat& kappa);

/// h_{r,s}(kappa) = (kappa/16)(r^2-1) - (rs-1)/2 + (1/kappa)(s^2-1).
KRat weight_hrs(const KRat& kappa, long r, long s);

/// h(rho) = rho (rho + 4 - kappa) / (4 kappa).
KRat weight_hrho(const KRat& kappa, const KRat& rho);

/// The two conformal weights appearing in the fusion of the h_{1,2} field
/// with an h(rho) field: h+ and h-.
std::pair<KRat, KRat> naive_fusion(const KRat& kappa, const KRat& rho);

/// The two rho with h+ = h_{r,s} followed by the two with h- = h_{r,s} + rs.
std::vector<KRat> rho_solutions(const KRat& kappa, long r, long s);

}  // namespace virmart
