#include "virmart/staggered_uea.hpp"

namespace virmart {

namespace {

const KRat kKappa(6);  // c(6) = 0

// Applies one normal-ordered word (neg | L_0^p | pos) to eta, accumulating
// into out. Only the raising tails "empty" and "L_1" survive on eta.
void apply_word_to_eta(const PBWMonomial& word, const KRat& coeff, const KRat& beta,
                       StaggeredVector& out) {
  size_t end = word.modes.size();
  bool via_l1 = false;
  if (end > 0 && word.modes[end - 1] > 0) {
    if (word.modes[end - 1] != 1) return;  // L_n eta = 0 for n >= 2
    --end;
    if (end > 0 && word.modes[end - 1] > 0) return;  // another raising mode on xi
    via_l1 = true;
  }
  long zeros = 0;
  while (end > 0 && word.modes[end - 1] == 0) {
    ++zeros;
    --end;
  }
  PBWMonomial neg;
  neg.modes.assign(word.modes.begin(), word.modes.begin() + static_cast<long>(end));

  if (via_l1) {
    if (zeros > 0) return;  // L_0 (beta xi) = 0
    out.xi.element.add_term(neg, coeff * beta);
    return;
  }
  // L_0^p eta = eta + p L_{-1} xi.
  out.eta.add_term(neg, coeff);
  if (zeros > 0) {
    UEAElement v = uea_mul(UEAElement(neg), UEAElement::L(-1), kKappa) * (coeff * KRat(zeros));
    out.xi.element += verma_act(v, VermaVector{UEAElement::one()}, kKappa, KRat(0)).element;
  }
}

}  // namespace

StaggeredVector staggered_apply(const UEAElement& op, const StaggeredVector& v,
                                const KRat& beta) {
  StaggeredVector out;
  out.xi = verma_act(op, v.xi, kKappa, KRat(0));
  for (const auto& [op_word, op_coeff] : op.terms())
    for (const auto& [eta_word, eta_coeff] : v.eta.terms()) {
      std::vector<int> word = op_word.modes;
      word.insert(word.end(), eta_word.modes.begin(), eta_word.modes.end());
      UEAElement normal = normal_order(word, kKappa);
      for (const auto& [m, c] : normal.terms())
        apply_word_to_eta(m, c * op_coeff * eta_coeff, beta, out);
    }
  return out;
}

}  // namespace virmart
