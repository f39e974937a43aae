#pragma once

#include <vector>

#include "virmart/rational.hpp"

namespace virmart {

/// Number of partitions of m (p(0) = 1).
Integer partition_count(long m);

/// Graded dimensions of a Verma module up to max_grade inclusive.
std::vector<Integer> character_verma(long max_grade);

/// Graded dimensions of the quotient of a Verma module by the submodule
/// generated at grade rs: p(m) - p(m - rs).
std::vector<Integer> character_quotient(long r, long s, long max_grade);

}  // namespace virmart
