#include "polypart/phi_map.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polypart/errors.hpp"
#include "polypart/ham_sandwich.hpp"
#include "rng.hpp"

namespace polypart {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Polynomial TupleY::poly(int ell) const {
  require(ell >= 1 && ell <= s(), "TupleY::poly: stage out of range");
  const auto& coeff = coefficients[static_cast<std::size_t>(ell - 1)];
  const auto monos =
      choose_subspace(ell, j, n, deltas[static_cast<std::size_t>(ell - 1)]);
  require(coeff.size() == monos.size() + 1,
          "TupleY::poly: coefficient length must be j*2^(ell-1) + 1");
  Polynomial p(n);
  p.add_term(Monomial(std::vector<std::uint32_t>(static_cast<std::size_t>(n))),
             coeff[0]);
  for (std::size_t k = 0; k < monos.size(); ++k)
    p.add_term(monos[k], coeff[k + 1]);
  return p;
}

std::vector<Polynomial> TupleY::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(coefficients.size());
  for (int ell = 1; ell <= s(); ++ell) out.push_back(poly(ell));
  return out;
}

void TupleY::normalize() {
  for (auto& coeff : coefficients) {
    double nn = 0.0;
    for (double c : coeff) nn += c * c;
    nn = std::sqrt(nn);
    require(nn > 0.0, "TupleY::normalize: zero component");
    for (double& c : coeff) c /= nn;
  }
}

TupleY TupleY::random(int n, int j, std::vector<int> deltas,
                      std::uint64_t seed) {
  TupleY y;
  y.n = n;
  y.j = j;
  y.deltas = std::move(deltas);
  detail::Rng rng(seed);
  for (std::size_t ell = 1; ell <= y.deltas.size(); ++ell) {
    const std::size_t dim = (static_cast<std::size_t>(j) << (ell - 1)) + 1;
    std::vector<double> coeff(dim);
    for (double& c : coeff) c = rng.normal();
    y.coefficients.push_back(std::move(coeff));
  }
  y.normalize();
  return y;
}

double PhiValue::max_abs() const {
  double m = 0.0;
  for (const auto& row : values)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

PhiValue phi(const TupleY& y, std::span<const Family> families, double tau) {
  require(y.s() >= 1, "phi: needs at least one stage");
  PhiValue out;
  out.s = y.s();
  if (families.empty()) return out;
  const CellTable table = count_cells(families, y.polynomials(), tau);
  const double cells = static_cast<double>(std::size_t{1} << out.s);
  out.values.resize(families.size());
  for (std::size_t i = 0; i < families.size(); ++i) {
    // the mean is total / 2^s, exact in binary floating point
    const double mean = static_cast<double>(table.family_total(i)) / cells;
    auto& row = out.values[i];
    row.reserve(table.pattern_count());
    for (std::int64_t c : table.counts[i])
      row.push_back(static_cast<double>(c) - mean);
  }
  return out;
}

TupleY act(const TupleY& y, std::uint32_t beta) {
  TupleY out = y;
  for (std::size_t ell = 0; ell < out.coefficients.size(); ++ell)
    if ((beta >> ell) & 1u)
      for (double& c : out.coefficients[ell]) c = -c;
  return out;
}

PhiValue act_codomain(const PhiValue& v, std::uint32_t beta) {
  PhiValue out;
  out.s = v.s;
  out.values.resize(v.values.size());
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const auto& row = v.values[i];
    auto& dst = out.values[i];
    dst.resize(row.size());
    for (std::size_t alpha = 0; alpha < row.size(); ++alpha)
      dst[alpha] = row[alpha ^ beta];
  }
  return out;
}

bool generic_position(std::span<const Polynomial> polys,
                      std::span<const Family> families, double tau) {
  for (const Family& fam : families)
    for (const Variety& gamma : fam.varieties())
      for (const Point& w : witness_points(gamma))
        for (const Polynomial& p : polys)
          if (sign_region(p, w, tau) == Sign::Zero) return false;
  return true;
}

bool check_equivariance(const TupleY& y, std::span<const Family> families,
                        std::uint32_t beta, double tau) {
  const auto polys = y.polynomials();
  if (!generic_position(polys, families, tau))
    throw Error(ErrorKind::GenericPosition,
                "check_equivariance: a witness point lies in a tau band");
  const PhiValue lhs = phi(act(y, beta), families, tau);
  const PhiValue rhs = act_codomain(phi(y, families, tau), beta);
  if (lhs.values.size() != rhs.values.size()) return false;
  for (std::size_t i = 0; i < lhs.values.size(); ++i)
    if (lhs.values[i] != rhs.values[i]) return false;
  return true;
}

namespace {

// Smooth membership of witness w on side alpha_l of p_l, in (0, 1).
double side_weight(double value, bool negative, double sigma) {
  const double signed_value = negative ? -value : value;
  return 0.5 * (1.0 + smooth_sign(signed_value / sigma));
}

// Smoothed max-norm of phi: indicator products relaxed through the sigmoid,
// multiple witnesses combined by noisy-or.
double smooth_objective(std::span<const Family> families,
                        std::span<const Polynomial> polys, double sigma) {
  const int s = static_cast<int>(polys.size());
  const std::size_t cells = std::size_t{1} << s;
  double worst = 0.0;
  std::vector<double> counts(cells);
  std::vector<std::vector<double>> values;  // [witness][poly]
  for (const Family& fam : families) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (const Variety& gamma : fam.varieties()) {
      values.clear();
      for (const Point& w : witness_points(gamma)) {
        std::vector<double> row(static_cast<std::size_t>(s));
        for (int l = 0; l < s; ++l)
          row[static_cast<std::size_t>(l)] =
              polys[static_cast<std::size_t>(l)].evaluate(w);
        values.push_back(std::move(row));
      }
      for (std::size_t alpha = 0; alpha < cells; ++alpha) {
        double miss_all = 1.0;
        for (const auto& row : values) {
          double hit = 1.0;
          for (int l = 0; l < s; ++l)
            hit *= side_weight(row[static_cast<std::size_t>(l)],
                               (alpha >> l) & 1u, sigma);
          miss_all *= 1.0 - hit;
        }
        counts[alpha] += 1.0 - miss_all;
      }
    }
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= static_cast<double>(cells);
    for (double c : counts) worst = std::max(worst, std::abs(c - mean));
  }
  return worst;
}

// Exact residual as an integer multiple of 2^-s; infinity marks a tuple
// rejected for putting a witness inside a tau band.
double exact_residual(std::span<const Family> families,
                      std::span<const Polynomial> polys, double tau) {
  if (!generic_position(polys, families, tau))
    return std::numeric_limits<double>::infinity();
  const CellTable table = count_cells(families, polys, tau);
  const std::size_t cells = std::size_t{1} << table.s;
  std::int64_t num = 0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const std::int64_t total = table.family_total(i);
    for (std::int64_t c : table.counts[i])
      num = std::max(num,
                     std::abs(c * static_cast<std::int64_t>(cells) - total));
  }
  return static_cast<double>(num) / static_cast<double>(cells);
}

}  // namespace

PhiSearchResult search_phi_zero(std::span<const Family> families,
                                const PartitionParams& params,
                                std::uint64_t seed, double tau,
                                const PhiSearchConfig& config) {
  validate(params);
  const DegreeSchedule schedule = compute_schedule(params);
  require(schedule.s >= 1, "search_phi_zero: schedule has no stages");
  if (!families.empty())
    for (const Family& fam : families)
      require(fam.ambient_dim() == params.n,
              "search_phi_zero: ambient dimension mismatch");

  PhiSearchResult best;
  best.residual = std::numeric_limits<double>::infinity();
  best.y = TupleY::random(params.n, params.j, schedule.deltas,
                          detail::mix_seed(seed, 0));
  if (families.empty()) {
    best.residual = 0.0;
    return best;
  }

  TupleY fallback = best.y;  // returned when every tuple hit a tau band
  for (int r = 0; r < config.restarts; ++r) {
    detail::Rng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
    TupleY y = TupleY::random(params.n, params.j, schedule.deltas,
                              rng.bits());
    auto score = [&](const TupleY& cand) {
      const double res = exact_residual(families, cand.polynomials(), tau);
      if (res < best.residual) {
        best.residual = res;
        best.y = cand;
      }
      return res;
    };
    score(y);
    for (double factor : config.sigma_factors) {
      const double sigma = std::max(factor, 1e-9);
      double obj = smooth_objective(families, y.polynomials(), sigma);
      double step = config.initial_step;
      const int iters = config.iters_per_stage;
      for (int it = 0; it < iters && best.residual > 0.0; ++it) {
        const std::size_t ell =
            static_cast<std::size_t>(it) % y.coefficients.size();
        TupleY cand = y;
        for (double& c : cand.coefficients[ell]) c += step * rng.normal();
        cand.normalize();
        const double cand_obj =
            smooth_objective(families, cand.polynomials(), sigma);
        if (cand_obj < obj) {
          y = std::move(cand);
          obj = cand_obj;
          score(y);
          step = std::min(step * 1.3, 1.0);
        } else {
          step = std::max(step * 0.7, 1e-4);
        }
      }
      if (best.residual == 0.0) break;
    }
    best.trace.push_back(best.residual);
    if (best.residual == 0.0) break;
  }
  if (!std::isfinite(best.residual)) {
    // every candidate grazed a zero band; hand back the first tuple with the
    // band hits excluded from its counts
    best.y = fallback;
    const CellTable table = count_cells(families, best.y.polynomials(), tau);
    const std::size_t cells = std::size_t{1} << table.s;
    std::int64_t num = 0;
    for (std::size_t i = 0; i < families.size(); ++i) {
      const std::int64_t total = table.family_total(i);
      for (std::int64_t c : table.counts[i])
        num = std::max(num,
                       std::abs(c * static_cast<std::int64_t>(cells) - total));
    }
    best.residual = static_cast<double>(num) / static_cast<double>(cells);
  }
  return best;
}

}  // namespace polypart
