// The equivariant cell-count map: tuples of unit-norm cut polynomials, the
// sign-flip group action, and a best-effort search for a tuple equalizing
// all cell counts.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polypart/partition.hpp"
#include "polypart/polynomial.hpp"
#include "polypart/schedule.hpp"
#include "polypart/variety.hpp"

namespace polypart {

// A point of the product of spheres: one unit-norm coefficient vector per
// stage, over the basis (constant, choose_subspace monomials) of dimension
// j * 2^(ell-1) + 1.
struct TupleY {
  int n = 0;
  int j = 0;
  std::vector<int> deltas;
  std::vector<std::vector<double>> coefficients;  // constant entry first

  int s() const { return static_cast<int>(coefficients.size()); }
  Polynomial poly(int ell) const;  // 1-based stage
  std::vector<Polynomial> polynomials() const;
  void normalize();  // rescales every component to unit Euclidean norm

  static TupleY random(int n, int j, std::vector<int> deltas,
                       std::uint64_t seed);
};

// Per family, the deviation of each cell count from the family mean; rows
// sum to zero exactly (counts are integers, the mean is a dyadic rational).
struct PhiValue {
  int s = 0;
  std::vector<std::vector<double>> values;  // [family][alpha bits]
  double max_abs() const;
};

PhiValue phi(const TupleY& y, std::span<const Family> families, double tau);

// Negates the coefficient vectors selected by beta (bit l-1 flips p_l).
TupleY act(const TupleY& y, std::uint32_t beta);

// Permutes each family's coordinates by alpha -> alpha xor beta.
PhiValue act_codomain(const PhiValue& v, std::uint32_t beta);

// True when no witness point of any family lies in the tau band of any of
// the polynomials; equivariance is only meaningful away from the bands.
bool generic_position(std::span<const Polynomial> polys,
                      std::span<const Family> families, double tau);

// Exact coordinate-by-coordinate comparison of phi(act(y, beta)) with
// act_codomain(phi(y), beta). Throws ErrorKind::GenericPosition when a
// witness sits in a tau band.
bool check_equivariance(const TupleY& y, std::span<const Family> families,
                        std::uint32_t beta, double tau);

struct PhiSearchConfig {
  int restarts = 16;
  int iters_per_stage = 120;
  std::vector<double> sigma_factors = {0.5, 0.2, 0.08, 0.03};
  double initial_step = 0.6;
};

struct PhiSearchResult {
  TupleY y;
  double residual = 0.0;       // max_i,alpha |phi|, an integer multiple of 2^-s
  std::vector<double> trace;   // best residual after each restart
};

// Multi-start annealed minimization of a smoothed max-norm of phi over the
// product of spheres; every accepted step is re-scored exactly and the best
// generic-position tuple wins. Residual 0 means all cells carry equal
// counts for every family. Deterministic given the seed.
PhiSearchResult search_phi_zero(std::span<const Family> families,
                                const PartitionParams& params,
                                std::uint64_t seed, double tau = kDefaultTau,
                                const PhiSearchConfig& config = {});

}  // namespace polypart
