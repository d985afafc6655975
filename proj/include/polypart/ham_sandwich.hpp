// Discrete ham-sandwich cuts: exact enumeration oracle for small inputs and
// an annealed smoothed search for the rest.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polypart/errors.hpp"
#include "polypart/polynomial.hpp"

namespace polypart {

using PointSet = std::vector<Point>;

struct Hyperplane {
  std::vector<double> normal;  // unit Euclidean norm
  double offset = 0.0;

  int dim() const { return static_cast<int>(normal.size()); }
  double signed_distance(std::span<const double> x) const;
};

struct SideCounts {
  int pos = 0;
  int neg = 0;
  int on = 0;
  int size() const { return pos + neg + on; }
};

// A cut certificate: per input set, how many points fall strictly on each
// open side and how many lie in the tau band of the hyperplane. Valid when
// both open sides hold at most floor(size/2) points of every set.
struct BisectionCertificate {
  std::vector<SideCounts> sets;
  bool valid() const;
};

// Counts every point of every set against the hyperplane; |distance| <= tau
// classifies as on-plane.
BisectionCertificate evaluate_cut(const Hyperplane& plane,
                                  std::span<const PointSet> sets, double tau);

struct SearchConfig {
  int restarts = 48;
  int iters_per_stage = 160;
  std::vector<double> sigma_factors = {1.0, 0.3, 0.1, 0.03, 0.01};
  double initial_step = 0.5;
  int refine_iters = 300;  // threshold-interval subgradient refinement
  int max_threads = 0;  // 0: POLYPART_THREADS env var, else hardware threads
};

int resolve_thread_count(const SearchConfig& config);

struct BisectResult {
  Hyperplane plane;
  BisectionCertificate certificate;
  // Exact route only: set when the certificate refers to a deterministic
  // 1e-7-scale perturbation of the input applied after a degenerate failure.
  bool perturbed = false;
};

// Smoothing used by every search in the library.
inline double smooth_sign(double x) { return std::tanh(x); }

// Brute-force oracle: tries the hyperplane through every affinely
// independent t-subset of the input (then axis-aligned planes through each
// point) and returns the first one whose certificate is valid.
// Requires sets.size() <= t and total point count <= point_cap.
BisectResult bisect_exact(std::span<const PointSet> sets, double tau,
                          std::size_t point_cap = 32);

// Raised when every restart failed to certify; carries the least-violating
// cut seen so the caller can report or retry with a bigger budget.
class SearchFailedError : public Error {
 public:
  SearchFailedError(const std::string& what, double best_violation,
                    BisectResult best)
      : Error(ErrorKind::SearchFailed, what),
        best_violation(best_violation),
        best(std::move(best)) {}
  double best_violation;
  BisectResult best;
};

// Multi-start annealed search over the unit sphere of (normal, offset):
// minimizes the squared smoothed side sums, then refines the normal so the
// per-set valid-threshold intervals overlap, pinning the plane through the
// median points of odd-size sets. Deterministic given the seed. Throws
// SearchFailedError when no restart certifies within the budget.
BisectResult bisect_search(std::span<const PointSet> sets, std::uint64_t seed,
                           const SearchConfig& config, double tau);

}  // namespace polypart
