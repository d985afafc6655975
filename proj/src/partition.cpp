#include "polypart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace polypart {

namespace {

constexpr std::size_t kExactPointCap = 32;
constexpr int kExactDimCap = 3;
constexpr int kSearchAttemptsPerStage = 3;
constexpr int kMaxTableStages = 20;  // cell tables are dense in 2^s

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string SignPattern::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(s));
  for (int ell = 1; ell <= s; ++ell) out.push_back(bit(ell) ? '1' : '0');
  return out;
}

std::int64_t CellTable::family_total(std::size_t i) const {
  const auto& row = counts[i];
  return std::accumulate(row.begin(), row.end(), std::int64_t{0});
}

std::int64_t CellTable::max_count(std::size_t i) const {
  const auto& row = counts[i];
  return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
}

Polynomial PartitionResult::product() const {
  Polynomial prod = Polynomial::constant(params.n, 1.0);
  for (const Polynomial& p : polys) prod = prod * p;
  return prod;
}

std::vector<Monomial> choose_subspace(int ell, int j, int n, int delta) {
  require(ell >= 1 && j >= 1 && n >= 1 && delta >= 1,
          "choose_subspace: arguments must be positive");
  require(ell - 1 < 30, "choose_subspace: stage index out of range");
  const std::size_t need = static_cast<std::size_t>(j) << (ell - 1);
  const auto basis = monomial_basis(n, delta);
  require(basis.size() >= need + 1,
          "choose_subspace: monomials of this degree span too few dimensions");
  return {basis.begin() + 1,
          basis.begin() + 1 + static_cast<std::ptrdiff_t>(need)};
}

namespace {

// Mutable per-point state during the stagewise run.
struct Driver {
  std::span<const Family> families;
  PartitionParams params;
  double tau;
  // pattern bits accumulated so far, one entry per variety
  std::vector<std::vector<std::uint32_t>> bits;
  std::vector<std::vector<char>> active;
  std::vector<std::vector<std::size_t>> on_zero;

  explicit Driver(std::span<const Family> fams, const PartitionParams& p,
                  double tau_band)
      : families(fams), params(p), tau(tau_band) {
    bits.resize(fams.size());
    active.resize(fams.size());
    on_zero.resize(fams.size());
    for (std::size_t i = 0; i < fams.size(); ++i) {
      bits[i].assign(fams[i].size(), 0u);
      active[i].assign(fams[i].size(), 1);
    }
  }

  const Point& coords(std::size_t i, std::size_t g) const {
    return families[i].varieties()[g].coordinates();
  }

  // Builds the result for the first `stages` completed cuts.
  PartitionResult finalize(const DegreeSchedule& schedule, int stages,
                           std::vector<Polynomial> polys,
                           std::vector<StageInfo> infos) const {
    PartitionResult result;
    result.params = params;
    result.schedule = schedule;
    result.schedule.deltas.resize(static_cast<std::size_t>(stages));
    result.schedule.s = stages;
    result.schedule.total_degree = std::accumulate(
        result.schedule.deltas.begin(), result.schedule.deltas.end(), 0);
    result.polys = std::move(polys);
    result.stages = std::move(infos);
    result.on_zero_set = on_zero;
    result.product_degree = result.product().degree();
    result.cell_table.s = stages;
    result.cell_table.counts.assign(
        families.size(),
        std::vector<std::int64_t>(std::size_t{1} << stages, 0));
    for (std::size_t i = 0; i < families.size(); ++i)
      for (std::size_t g = 0; g < families[i].size(); ++g)
        if (active[i][g]) ++result.cell_table.counts[i][bits[i][g]];
    return result;
  }
};

// Pulls the cut hyperplane in lifted coordinates back to a polynomial on R^n.
Polynomial plane_to_polynomial(const Hyperplane& plane,
                               std::span<const Monomial> monos, int n) {
  Polynomial p(n);
  p.add_term(Monomial(std::vector<std::uint32_t>(static_cast<std::size_t>(n))),
             plane.offset);
  for (std::size_t k = 0; k < monos.size(); ++k)
    p.add_term(monos[k], plane.normal[k]);
  return p;
}

}  // namespace

PartitionResult partition_points(std::span<const Family> families,
                                 const PartitionParams& params,
                                 std::uint64_t seed, double tau,
                                 const SearchConfig& search) {
  validate(params);
  require(static_cast<int>(families.size()) == params.j,
          "partition_points: family count must equal j");
  for (const Family& fam : families) {
    require(fam.all_points(), "partition_points: families must be points");
    require(fam.ambient_dim() == params.n,
            "partition_points: ambient dimension mismatch");
  }

  const DegreeSchedule schedule = compute_schedule(params);
  require(schedule.s <= kMaxTableStages, "partition_points: too many stages");
  Driver drv(families, params, tau);
  std::vector<Polynomial> polys;
  std::vector<StageInfo> infos;

  for (int ell = 1; ell <= schedule.s; ++ell) {
    const std::uint32_t half = 1u << (ell - 1);
    const std::size_t t = families.size() * half;
    const int delta = schedule.deltas[static_cast<std::size_t>(ell - 1)];
    const auto monos = choose_subspace(ell, params.j, params.n, delta);

    // lift every active point into R^t, one set per (family, current cell)
    std::vector<PointSet> sets(t);
    std::size_t total_active = 0;
    for (std::size_t i = 0; i < families.size(); ++i)
      for (std::size_t g = 0; g < families[i].size(); ++g)
        if (drv.active[i][g]) {
          const std::size_t slot = i * half + drv.bits[i][g];
          sets[slot].push_back(veronese_lift(drv.coords(i, g), monos));
          ++total_active;
        }

    const bool exact_ok =
        total_active <= kExactPointCap && static_cast<int>(t) <= kExactDimCap;
    const int attempt_count = kSearchAttemptsPerStage + (exact_ok ? 1 : 0);

    bool accepted = false;
    StageInfo info;
    info.ell = ell;
    std::string last_failure = "no attempt ran";
    for (int attempt = 0; attempt < attempt_count && !accepted; ++attempt) {
      const bool use_exact = exact_ok && attempt == 0;
      BisectResult cut;
      try {
        if (use_exact) {
          cut = bisect_exact(sets, tau, kExactPointCap);
        } else {
          const int search_index = exact_ok ? attempt - 1 : attempt;
          const std::uint64_t stage_seed = detail::mix_seed(
              detail::mix_seed(seed, static_cast<std::uint64_t>(ell)),
              static_cast<std::uint64_t>(search_index));
          cut = bisect_search(sets, stage_seed, search, tau);
        }
      } catch (const Error& err) {
        last_failure = err.what();
        continue;
      }

      // classify with the pulled-back polynomial itself, then recheck the
      // halving condition against those signs (the lifted-space certificate
      // can drift by an ulp near the band)
      const Polynomial p = plane_to_polynomial(cut.plane, monos, params.n);
      std::vector<SideCounts> recount(t);
      std::vector<std::vector<Sign>> signs(families.size());
      for (std::size_t i = 0; i < families.size(); ++i) {
        signs[i].assign(families[i].size(), Sign::Zero);
        for (std::size_t g = 0; g < families[i].size(); ++g) {
          if (!drv.active[i][g]) continue;
          const Sign sg = sign_region(p, drv.coords(i, g), tau);
          signs[i][g] = sg;
          SideCounts& rc = recount[i * half + drv.bits[i][g]];
          if (sg == Sign::Pos)
            ++rc.pos;
          else if (sg == Sign::Neg)
            ++rc.neg;
          else
            ++rc.on;
        }
      }
      bool halved = true;
      for (const SideCounts& rc : recount) {
        const int cap = rc.size() / 2;
        if (rc.pos > cap || rc.neg > cap) {
          halved = false;
          break;
        }
      }
      if (!halved) {
        last_failure = "cut failed the halving recount in stage " +
                       std::to_string(ell);
        continue;
      }

      for (std::size_t i = 0; i < families.size(); ++i)
        for (std::size_t g = 0; g < families[i].size(); ++g) {
          if (!drv.active[i][g]) continue;
          if (signs[i][g] == Sign::Neg)
            drv.bits[i][g] |= half;
          else if (signs[i][g] == Sign::Zero) {
            drv.active[i][g] = 0;
            drv.on_zero[i].push_back(g);
          }
        }
      polys.push_back(p);
      info.method = use_exact ? "exact" : "search";
      info.attempts = attempt + 1;
      info.perturbed = cut.perturbed;
      infos.push_back(info);
      accepted = true;
    }
    if (!accepted)
      throw PartitionSearchError(
          "partition stage " + std::to_string(ell) +
              " exhausted its cut attempts (" + last_failure + ")",
          drv.finalize(schedule, ell - 1, std::move(polys), std::move(infos)));
  }

  return drv.finalize(schedule, schedule.s, std::move(polys),
                      std::move(infos));
}

CellTable count_cells(std::span<const Family> families,
                      std::span<const Polynomial> polys, double tau) {
  require(!polys.empty(), "count_cells: needs at least one polynomial");
  const int s = static_cast<int>(polys.size());
  require(s <= kMaxTableStages, "count_cells: too many polynomials");
  CellTable table;
  table.s = s;
  table.counts.assign(families.size(),
                      std::vector<std::int64_t>(std::size_t{1} << s, 0));
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (const Variety& gamma : families[i].varieties()) {
      // the patterns realized by some witness point; one increment per
      // distinct pattern reproduces the sum of indicators over alpha
      std::set<std::uint32_t> hit;
      for (const Point& w : witness_points(gamma)) {
        std::uint32_t pattern = 0;
        bool banded = false;
        for (int l = 0; l < s; ++l) {
          const Sign sg = sign_region(polys[static_cast<std::size_t>(l)], w, tau);
          if (sg == Sign::Zero) {
            banded = true;
            break;
          }
          if (sg == Sign::Neg) pattern |= 1u << l;
        }
        if (!banded) hit.insert(pattern);
      }
      for (std::uint32_t pattern : hit) ++table.counts[i][pattern];
    }
  }
  return table;
}

std::vector<std::vector<std::size_t>> on_zero_indices(
    std::span<const Family> families, std::span<const Polynomial> polys,
    double tau) {
  std::vector<std::vector<std::size_t>> banded(families.size());
  if (polys.empty()) return banded;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& varieties = families[i].varieties();
    for (std::size_t v = 0; v < varieties.size(); ++v) {
      bool all_banded = true;
      for (const Point& w : witness_points(varieties[v])) {
        bool point_banded = false;
        for (const Polynomial& p : polys)
          if (sign_region(p, w, tau) == Sign::Zero) {
            point_banded = true;
            break;
          }
        if (!point_banded) {
          all_banded = false;
          break;
        }
      }
      if (all_banded) banded[i].push_back(v);
    }
  }
  return banded;
}

BoundReport verify_bounds(const PartitionResult& result,
                          std::span<const Family> families,
                          const PartitionParams& params,
                          int crossing_resolution) {
  require(families.size() == result.cell_table.family_count(),
          "verify_bounds: family count mismatch");
  require(crossing_resolution >= 2, "verify_bounds: resolution too small");
  const int s = result.cell_table.s;
  BoundReport report;
  std::string violation;
  Polynomial prod;
  bool have_prod = false;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const Family& fam = families[i];
    FamilyBoundReport fr;
    fr.family = fam.name();
    fr.size = static_cast<std::int64_t>(fam.size());
    fr.max_cell_count = result.cell_table.max_count(i);
    if (fam.all_points()) {
      fr.point_family = true;
      fr.cap = fr.size >> s;
      fr.within_cap = fr.max_cell_count <= fr.cap;
      fr.ratio = static_cast<double>(fr.max_cell_count) *
                 std::pow(static_cast<double>(params.D), params.n) /
                 (static_cast<double>(params.j) * static_cast<double>(fr.size));
      fr.cn = result.schedule.cn;
      if (!fr.within_cap) {
        report.all_within_caps = false;
        if (violation.empty())
          violation = "family " + fam.name() + " has a cell with " +
                      std::to_string(fr.max_cell_count) +
                      " points, above the cap " + std::to_string(fr.cap);
      }
    } else {
      fr.run_bound = result.product_degree + 1;
      for (const Variety& gamma : fam.varieties()) {
        if (gamma.kind() != VarietyKind::Parametric || gamma.k() != 1)
          continue;
        if (!have_prod) {
          prod = result.product();
          have_prod = true;
        }
        const CrossingCount cc =
            crossing_count(gamma, prod, crossing_resolution);
        fr.max_runs = std::max(fr.max_runs, cc.runs);
        if (cc.degenerate) ++fr.degenerate_curves;
      }
    }
    report.families.push_back(std::move(fr));
  }
  if (!report.all_within_caps)
    throw BoundViolationError(violation, std::move(report));
  return report;
}

}  // namespace polypart
