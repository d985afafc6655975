// Degree schedule: per-stage degree bounds, stage count, and the cell-count
// constant that ties the number of stages to the total degree budget.
#pragma once

#include <cstdint>
#include <vector>

namespace polypart {

struct PartitionParams {
  int n = 1;  // ambient dimension
  int j = 1;  // number of families
  int D = 1;  // total degree budget
};

// Throws std::invalid_argument unless n, j, D >= 1.
void validate(const PartitionParams& params);

struct DegreeSchedule {
  std::vector<int> deltas;  // delta_1..delta_s, non-decreasing
  int s = 0;                // stage count; 0 when D < delta_1
  int total_degree = 0;     // sum of deltas, <= D
  double cn = 0.0;          // cell_bound_constant(n)
};

// Smallest delta with delta^n >= n! * j * 2^(ell-1). Integer binary search;
// all comparisons are exact in 128-bit arithmetic.
int compute_delta(int ell, int j, int n);

// Largest s with delta_1 + ... + delta_s <= D, together with the deltas.
DegreeSchedule compute_schedule(const PartitionParams& params);

// C_n = 2^(n+1) n! / (2^(1/n) - 1)^n, evaluated in extended precision.
double cell_bound_constant(int n);

namespace exact {

// Overflow-checked helpers on unsigned 128-bit integers. Out-of-range inputs
// raise std::overflow_error instead of wrapping.
using u128 = unsigned __int128;

u128 factorial(int n);                  // n <= 34
u128 checked_mul(u128 a, u128 b);
u128 checked_shl(u128 a, int bits);

// Sign of base^exp - target without overflow: saturates once the partial
// power exceeds target.
int compare_pow(u128 base, int exp, u128 target);

// Whether C(top, k) >= threshold, saturating instead of overflowing.
bool binomial_at_least(u128 top, int k, u128 threshold);

}  // namespace exact

}  // namespace polypart
