#include "polypart/schedule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "polypart/errors.hpp"

namespace polypart {

void validate(const PartitionParams& params) {
  if (params.n < 1 || params.j < 1 || params.D < 1)
    throw std::invalid_argument("partition parameters require n, j, D >= 1");
}

namespace exact {

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a)
    throw std::overflow_error("128-bit multiply overflow");
  return a * b;
}

u128 checked_shl(u128 a, int bits) {
  if (bits < 0 || bits >= 128)
    throw std::overflow_error("128-bit shift out of range");
  u128 r = a << bits;
  if ((r >> bits) != a) throw std::overflow_error("128-bit shift overflow");
  return r;
}

u128 factorial(int n) {
  if (n < 0 || n > 34) throw std::overflow_error("factorial beyond 128-bit range");
  u128 r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<u128>(i);
  return r;
}

int compare_pow(u128 base, int exp, u128 target) {
  u128 acc = 1;
  const u128 limit = std::numeric_limits<u128>::max();
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return 1;  // acc*base >= 2^128 > target
    acc *= base;
    if (acc > target) return 1;  // monotone: later factors are >= 1 for base >= 1
  }
  if (acc > target) return 1;
  if (acc < target) return -1;
  return 0;
}

bool binomial_at_least(u128 top, int k, u128 threshold) {
  if (static_cast<u128>(k) > top) return threshold == 0;
  // C(top, k) built multiplicatively; the division at step i is exact.
  u128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    u128 factor = top - static_cast<u128>(k - i);
    if (factor != 0 && acc > std::numeric_limits<u128>::max() / factor)
      return true;  // saturate: the true value only grows from here
    acc = acc * factor / static_cast<u128>(i);
  }
  return acc >= threshold;
}

}  // namespace exact

int compute_delta(int ell, int j, int n) {
  if (ell < 1 || j < 1 || n < 1)
    throw std::invalid_argument("compute_delta requires ell, j, n >= 1");
  using exact::u128;
  const u128 target = exact::checked_shl(
      exact::checked_mul(exact::factorial(n), static_cast<u128>(j)), ell - 1);
  // Smallest delta with delta^n >= target.
  u128 lo = 1, hi = 1;
  while (exact::compare_pow(hi, n, target) < 0) hi = exact::checked_mul(hi, 2);
  while (lo < hi) {
    u128 mid = lo + (hi - lo) / 2;
    if (exact::compare_pow(mid, n, target) >= 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo > static_cast<u128>(std::numeric_limits<int>::max()))
    throw std::overflow_error("delta exceeds int range");
  return static_cast<int>(lo);
}

double cell_bound_constant(int n) {
  if (n < 1) throw std::invalid_argument("cell_bound_constant requires n >= 1");
  long double fact = 1.0L;
  for (int i = 2; i <= n; ++i) fact *= static_cast<long double>(i);
  const long double root = std::pow(2.0L, 1.0L / static_cast<long double>(n));
  const long double denom = std::pow(root - 1.0L, static_cast<long double>(n));
  const long double cn = std::pow(2.0L, static_cast<long double>(n + 1)) * fact / denom;
  return static_cast<double>(cn);
}

DegreeSchedule compute_schedule(const PartitionParams& params) {
  validate(params);
  DegreeSchedule sched;
  sched.cn = cell_bound_constant(params.n);
  int sum = 0;
  for (int ell = 1;; ++ell) {
    const int delta = compute_delta(ell, params.j, params.n);
    if (sum + delta > params.D) break;
    // dim P^delta_n = C(delta + n, n) must exceed j 2^(ell-1); this is forced
    // by delta^n/n! >= j 2^(ell-1), so a failure here is a logic error.
    const exact::u128 needed = exact::checked_shl(
        static_cast<exact::u128>(params.j), ell - 1) + 1;
    if (!exact::binomial_at_least(
            static_cast<exact::u128>(delta) + static_cast<exact::u128>(params.n),
            params.n, needed))
      throw Error(ErrorKind::Internal, "schedule dimension bound failed");
    sched.deltas.push_back(delta);
    sum += delta;
  }
  sched.s = static_cast<int>(sched.deltas.size());
  sched.total_degree = sum;
  // 1/2^s < C_n j / D^n always holds for the chosen s; the slack is at least
  // a factor of 2, far beyond long-double rounding.
  if (sched.s < 63) {
    const long double lhs = 1.0L / static_cast<long double>(1ULL << sched.s);
    const long double rhs = static_cast<long double>(sched.cn) * params.j /
                            std::pow(static_cast<long double>(params.D),
                                     static_cast<long double>(params.n));
    if (!(lhs < rhs))
      throw Error(ErrorKind::Internal, "stage-count inequality failed");
  }
  return sched;
}

}  // namespace polypart
