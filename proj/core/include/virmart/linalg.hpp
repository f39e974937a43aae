#pragma once

#include <optional>
#include <vector>

#include "virmart/kappa_rational.hpp"

namespace virmart {

using KVec = std::vector<KRat>;
using KMat = std::vector<KVec>;  // row-major, possibly ragged-free rectangular

/// In-place fraction-free Gaussian elimination to reduced row echelon form.
/// Returns the pivot column of each nonzero row, in order.
std::vector<size_t> rref(KMat& m);

/// Basis of the right null space of m (with ncols columns; m may have zero
/// rows). Each basis vector has a 1 in its free column.
std::vector<KVec> null_space(KMat m, size_t ncols);

/// Solves m x = rhs exactly; nullopt when inconsistent. Free variables are
/// set to zero, so the answer is one particular solution.
std::optional<KVec> solve(KMat m, KVec rhs);

size_t rank(KMat m);

/// Expresses v in the span of the given vectors if possible (coordinates in
/// the same order), otherwise nullopt.
std::optional<KVec> in_span(const std::vector<KVec>& span, const KVec& v);

}  // namespace virmart
