#include "virmart/classify.hpp"

#include <algorithm>
#include <cstdlib>

namespace virmart {

std::string VermaStructure::kind_name() const {
  switch (kind) {
    case Kind::SingleSingular: return "single-singular";
    case Kind::Chain: return "chain";
    case Kind::Braid: return "braid";
  }
  return "";
}

VermaStructure classify_verma(const std::optional<Rational>& kappa, long r, long s) {
  if (r < 1 || s < 1) throw Error("classify_verma: need r, s >= 1");
  VermaStructure out;
  out.r = r;
  out.s = s;
  out.grade = r * s;
  if (!kappa) {
    out.kind = VermaStructure::Kind::SingleSingular;
    return out;
  }
  if (*kappa <= 0) throw Error("classify_verma: need kappa > 0");

  // kappa = 4p/q in lowest terms.
  Rational pq = *kappa / 4;
  long p = static_cast<long>(rational_numerator(pq));
  long q = static_cast<long>(rational_denominator(pq));
  out.p = p;
  out.q = q;
  out.kind = (r % q == 0 || s % p == 0) ? VermaStructure::Kind::Chain
                                        : VermaStructure::Kind::Braid;

  // Weights coincide iff p r' - q s' = +-(p r - q s); within each sign the
  // solutions are r' in a fixed residue class mod q with s' affine in r',
  // so the two smallest grades overall sit among the first two solutions of
  // each sign.
  const long t = p * r - q * s;
  std::vector<std::pair<long, long>> cands;
  for (long sign : {+1, -1}) {
    int found = 0;
    for (long rp = 1; found < 2 && rp <= r + 2 * q * (1 + std::abs(t)); ++rp) {
      long num = p * rp - sign * t;
      if (num % q != 0) continue;
      long sp = num / q;
      if (sp < 1) continue;
      cands.emplace_back(rp, sp);
      ++found;
    }
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    return a.first * a.second != b.first * b.second
               ? a.first * a.second < b.first * b.second
               : a < b;
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  const size_t want = out.kind == VermaStructure::Kind::Chain ? 1 : 2;
  for (const auto& c : cands) {
    if (out.labels.size() == want) break;
    if (!out.labels.empty() &&
        out.labels.back().first * out.labels.back().second == c.first * c.second)
      continue;  // same grade, same submodule
    out.labels.push_back(c);
  }
  return out;
}

}  // namespace virmart
