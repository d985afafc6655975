// Stagewise partition driver: bisect current cells, assemble sign patterns,
// count varieties per cell, and verify the halving and degree bounds.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polypart/errors.hpp"
#include "polypart/ham_sandwich.hpp"
#include "polypart/polynomial.hpp"
#include "polypart/schedule.hpp"
#include "polypart/variety.hpp"

namespace polypart {

// Width of the zero band |p| <= tau used throughout when none is given.
inline constexpr double kDefaultTau = 1e-9;

// Bit l-1 carries alpha_l: clear for p_l > 0, set for p_l < 0.
struct SignPattern {
  std::uint32_t bits = 0;
  int s = 0;

  bool bit(int ell) const { return (bits >> (ell - 1)) & 1u; }
  std::string to_string() const;  // "010", alpha_1 first

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

// Per-family counts over all 2^s sign patterns, indexed by pattern bits.
struct CellTable {
  int s = 0;
  std::vector<std::vector<std::int64_t>> counts;  // [family][pattern bits]

  std::size_t family_count() const { return counts.size(); }
  std::size_t pattern_count() const {
    return counts.empty() ? 0 : counts.front().size();
  }
  std::int64_t count(std::size_t i, std::uint32_t alpha) const {
    return counts[i][alpha];
  }
  std::int64_t family_total(std::size_t i) const;
  std::int64_t max_count(std::size_t i) const;
};

// How one stage's cut was obtained.
struct StageInfo {
  int ell = 0;
  std::string method;  // "exact" or "search"
  int attempts = 1;
  bool perturbed = false;
};

struct PartitionResult {
  PartitionParams params;
  DegreeSchedule schedule;
  std::vector<Polynomial> polys;
  int product_degree = 0;  // actual degree of p_1 ... p_s
  CellTable cell_table;
  std::vector<std::vector<std::size_t>> on_zero_set;  // variety indices
  std::vector<StageInfo> stages;

  Polynomial product() const;  // p_1 * ... * p_s; the constant 1 when s = 0
};

// Raised when a stage exhausts its cut attempts; carries the result built
// from the stages that did complete.
class PartitionSearchError : public Error {
 public:
  PartitionSearchError(const std::string& what, PartitionResult partial)
      : Error(ErrorKind::SearchFailed, what), partial(std::move(partial)) {}
  PartitionResult partial;
};

// The first `count` non-constant monomials of degree <= delta in graded lex
// order; count = j * 2^(ell-1). Together with the constant they span V_ell.
std::vector<Monomial> choose_subspace(int ell, int j, int n, int delta);

// Runs the full schedule on point families (|families| = j, ambient = n):
// per stage, lifts every current cell population through the V_ell monomials
// and cuts all of them with one hyperplane, i.e. one polynomial p_ell.
// Points falling in the tau band of any p_ell move to on_zero_set. The
// result satisfies count(i, alpha) <= floor(|family i| / 2^s) for every cell.
PartitionResult partition_points(std::span<const Family> families,
                                 const PartitionParams& params,
                                 std::uint64_t seed, double tau = kDefaultTau,
                                 const SearchConfig& search = {});

// Indicator counts for arbitrary families against a fixed tuple of cuts.
CellTable count_cells(std::span<const Family> families,
                      std::span<const Polynomial> polys, double tau);

// Per family, the indices of varieties whose every witness point sits in the
// tau band of some cut; such varieties appear in no cell of the table.
std::vector<std::vector<std::size_t>> on_zero_indices(
    std::span<const Family> families, std::span<const Polynomial> polys,
    double tau);

struct FamilyBoundReport {
  std::string family;
  bool point_family = false;
  std::int64_t size = 0;
  std::int64_t max_cell_count = 0;
  // Point families: the hard cap floor(size / 2^s) and the scale-free ratio
  // max_cell_count * D^n / (j * size) to set against the constant C_n.
  std::int64_t cap = 0;
  double ratio = 0.0;
  double cn = 0.0;
  bool within_cap = true;
  // Curve families: sign runs of the product polynomial along each curve.
  int max_runs = 0;
  int run_bound = 0;  // product_degree + 1
  int degenerate_curves = 0;
};

struct BoundReport {
  std::vector<FamilyBoundReport> families;
  bool all_within_caps = true;
};

class BoundViolationError : public Error {
 public:
  BoundViolationError(const std::string& what, BoundReport report)
      : Error(ErrorKind::BoundViolation, what), report(std::move(report)) {}
  BoundReport report;
};

// Checks the halving cap for point families (throws BoundViolationError when
// some cell exceeds it) and reports crossing statistics for curve families.
BoundReport verify_bounds(const PartitionResult& result,
                          std::span<const Family> families,
                          const PartitionParams& params,
                          int crossing_resolution = 1024);

}  // namespace polypart
