#include "virmart/characters.hpp"

namespace virmart {

namespace {

std::vector<Integer> partition_table(long max_m) {
  std::vector<Integer> p(static_cast<size_t>(max_m) + 1, Integer(0));
  p[0] = 1;
  for (long part = 1; part <= max_m; ++part)
    for (long m = part; m <= max_m; ++m)
      p[static_cast<size_t>(m)] += p[static_cast<size_t>(m - part)];
  return p;
}

}  // namespace

Integer partition_count(long m) {
  if (m < 0) return Integer(0);
  return partition_table(m)[static_cast<size_t>(m)];
}

std::vector<Integer> character_verma(long max_grade) {
  return partition_table(max_grade);
}

std::vector<Integer> character_quotient(long r, long s, long max_grade) {
  std::vector<Integer> p = partition_table(max_grade);
  std::vector<Integer> out(p.size());
  for (long m = 0; m <= max_grade; ++m) {
    Integer sub = m - r * s >= 0 ? p[static_cast<size_t>(m - r * s)] : Integer(0);
    out[static_cast<size_t>(m)] = p[static_cast<size_t>(m)] - sub;
  }
  return out;
}

}  // namespace virmart
