#include "virmart/weights.hpp"

namespace virmart {

KRat central_charge(const KRat& kappa) {
  if (kappa.is_zero()) throw Error("central_charge: kappa = 0");
  return KRat(13) - KRat(rational(3, 2)) * kappa - KRat(24) / kappa;
}

KRat weight_hrs(const KRat& kappa, long r, long s) {
  if (kappa.is_zero()) throw Error("weight_hrs: kappa = 0");
  return kappa * KRat(rational(r * r - 1, 16)) - KRat(rational(r * s - 1, 2)) +
         KRat(rational(s * s - 1, 1)) / kappa;
}

KRat weight_hrho(const KRat& kappa, const KRat& rho) {
  if (kappa.is_zero()) throw Error("weight_hrho: kappa = 0");
  return rho * (rho + KRat(4) - kappa) / (KRat(4) * kappa);
}

std::pair<KRat, KRat> naive_fusion(const KRat& kappa, const KRat& rho) {
  if (kappa.is_zero()) throw Error("naive_fusion: kappa = 0");
  KRat four_k = KRat(4) * kappa;
  KRat hplus = (rho * rho + KRat(8) * rho - rho * kappa + KRat(12) - KRat(2) * kappa) / four_k;
  KRat hminus = (rho * rho - rho * kappa - KRat(4) + KRat(2) * kappa) / four_k;
  return {hplus, hminus};
}

std::vector<KRat> rho_solutions(const KRat& kappa, long r, long s) {
  KRat k = kappa;
  KRat half = KRat(rational(1, 2));
  return {
      (k * KRat(r) - KRat(4 * s) + k - KRat(8)) * half,
      (-(k * KRat(r)) + KRat(4 * s) + k - KRat(8)) * half,
      (k * KRat(r) + KRat(4 * s) + k) * half,
      (-(k * KRat(r)) - KRat(4 * s) + k) * half,
  };
}

}  // namespace virmart
