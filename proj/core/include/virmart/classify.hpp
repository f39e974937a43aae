#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "virmart/kappa_rational.hpp"

namespace virmart {

// Reducibility pattern of the degenerate Verma module with weight h_{r,s}.
// For generic (symbolic) kappa the only singular vector sits at grade r*s;
// at rational kappa = 4p/q the module embeds in a chain or braid of Verma
// modules, detected by the divisibility of r by q and s by p.
struct VermaStructure {
  enum class Kind { SingleSingular, Chain, Braid };
  Kind kind;
  long r, s;
  long grade;                      // r*s, the first singular grade
  std::optional<long> p, q;       // kappa = 4p/q in lowest terms, rational case only
  // Rational case: the labels (r', s') of minimal grade with the same weight,
  // i.e. solutions of p r' - q s' = +-(p r - q s) with r', s' >= 1, sorted by
  // grade. One entry for chain type, two for braid type.
  std::vector<std::pair<long, long>> labels;

  std::string kind_name() const;
};

/// kappa nullopt means symbolic (generic) kappa.
VermaStructure classify_verma(const std::optional<Rational>& kappa, long r, long s);

}  // namespace virmart
