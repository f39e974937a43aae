#include "virmart/verma.hpp"

#include <algorithm>

#include "virmart/linalg.hpp"
#include "virmart/weights.hpp"

namespace virmart {

namespace {

void partitions_into(long remaining, long max_part, std::vector<int>& parts,
                     std::vector<PBWMonomial>& out) {
  if (remaining == 0) {
    PBWMonomial m;
    m.modes.assign(parts.begin(), parts.end());
    out.push_back(std::move(m));
    return;
  }
  for (long p = std::min(remaining, max_part); p >= 1; --p) {
    parts.push_back(static_cast<int>(-p));
    partitions_into(remaining - p, p, parts, out);
    parts.pop_back();
  }
}

}  // namespace

std::vector<PBWMonomial> lowering_basis(long grade) {
  std::vector<PBWMonomial> out;
  std::vector<int> parts;
  partitions_into(grade, grade, parts, out);
  return out;
}

VermaVector verma_act(const UEAElement& op, const VermaVector& v, const KRat& kappa,
                      const KRat& h) {
  UEAElement product = uea_mul(op, v.element, kappa);
  VermaVector out;
  for (const auto& [m, c] : product.terms()) {
    // Normal-ordered word: negatives, then L_0 powers, then positives.
    size_t i = m.modes.size();
    if (i > 0 && m.modes[i - 1] > 0) continue;  // raising mode kills the hw vector
    long zero_power = 0;
    while (i > 0 && m.modes[i - 1] == 0) {
      ++zero_power;
      --i;
    }
    KRat coeff = c;
    for (long p = 0; p < zero_power; ++p) coeff *= h;
    PBWMonomial lowered;
    lowered.modes.assign(m.modes.begin(), m.modes.begin() + static_cast<long>(i));
    out.element.add_term(lowered, coeff);
  }
  return out;
}

UEAElement singular_vector(const KRat& kappa, long r, long s) {
  if (r < 1 || s < 1) throw Error("singular_vector: need r, s >= 1");
  const long grade = r * s;
  const KRat h = weight_hrs(kappa, r, s);
  const std::vector<PBWMonomial> basis = lowering_basis(grade);
  const size_t n = basis.size();

  // Unknown coefficients x_j for the basis words; require annihilation by
  // L_1 and L_2 (which generate all raising modes).
  KMat rows;
  KVec rhs;
  size_t leading = n;
  PBWMonomial l1_power;
  l1_power.modes.assign(static_cast<size_t>(grade), -1);

  std::vector<PBWMonomial> target_basis[2] = {lowering_basis(grade - 1),
                                              lowering_basis(grade - 2)};
  for (int mode = 1; mode <= 2; ++mode) {
    if (grade - mode < 0) continue;
    const auto& targets = target_basis[mode - 1];
    std::vector<KVec> cols(n);
    for (size_t j = 0; j < n; ++j) {
      VermaVector img = verma_act(UEAElement::L(mode), VermaVector{UEAElement(basis[j])},
                                  kappa, h);
      cols[j].assign(targets.size(), KRat(0));
      for (size_t t = 0; t < targets.size(); ++t) cols[j][t] = img.element.coeff(targets[t]);
    }
    for (size_t t = 0; t < targets.size(); ++t) {
      KVec row(n, KRat(0));
      for (size_t j = 0; j < n; ++j) row[j] = cols[j][t];
      rows.push_back(std::move(row));
      rhs.push_back(KRat(0));
    }
  }
  for (size_t j = 0; j < n; ++j)
    if (basis[j] == l1_power) leading = j;

  // Pin the L_{-1}^{rs} coefficient to 1.
  KVec pin(n, KRat(0));
  pin[leading] = KRat(1);
  rows.push_back(std::move(pin));
  rhs.push_back(KRat(1));

  auto x = solve(std::move(rows), std::move(rhs));
  if (!x) throw Error("singular_vector: no singular vector at this label");
  UEAElement out;
  for (size_t j = 0; j < n; ++j) out.add_term(basis[j], (*x)[j]);
  return out;
}

}  // namespace virmart
