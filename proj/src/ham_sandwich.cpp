#include "polypart/ham_sandwich.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "rng.hpp"

namespace polypart {

namespace {

using Vec = std::vector<double>;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Ambient dimension, from the first non-empty set.
int point_dim(std::span<const PointSet> sets) {
  for (const PointSet& set : sets)
    if (!set.empty()) return static_cast<int>(set.front().size());
  return 0;
}

double data_scale(std::span<const PointSet> sets) {
  double m = 0.0;
  for (const PointSet& set : sets)
    for (const Point& p : set)
      for (double c : p) m = std::max(m, std::abs(c));
  return m > 1e-300 ? m : 1.0;
}

void check_dims(std::span<const PointSet> sets, int t) {
  if (t == 0) return;
  for (const PointSet& set : sets)
    for (const Point& p : set)
      if (static_cast<int>(p.size()) != t)
        throw std::invalid_argument("point dimension mismatch across sets");
}

// (x, 1) rows of all points, flattened per set.
std::vector<std::vector<Vec>> augmented(std::span<const PointSet> sets, int t) {
  std::vector<std::vector<Vec>> out(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out[i].reserve(sets[i].size());
    for (const Point& p : sets[i]) {
      Vec a(static_cast<std::size_t>(t) + 1);
      std::copy(p.begin(), p.end(), a.begin());
      a[static_cast<std::size_t>(t)] = 1.0;
      out[i].push_back(std::move(a));
    }
  }
  return out;
}

// Turns an augmented coefficient vector (normal..., offset) into a unit-normal
// hyperplane with a canonical orientation. Fails when the normal part is
// negligible (the "plane at infinity").
std::optional<Hyperplane> to_hyperplane(std::span<const double> v) {
  const std::size_t t = v.size() - 1;
  double nn = norm(v.subspan(0, t));
  if (nn < 1e-12 * std::max(1.0, norm(v))) return std::nullopt;
  Hyperplane h;
  h.normal.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(t));
  h.offset = v[t];
  double flip = 1.0;
  for (double c : h.normal) {
    if (c != 0.0) {
      flip = c < 0.0 ? -1.0 : 1.0;
      break;
    }
  }
  for (double& c : h.normal) c = flip * c / nn;
  h.offset = flip * h.offset / nn;
  return h;
}

// Orthonormalizes the rows (modified Gram-Schmidt, two passes), dropping
// near-dependent ones.
std::vector<Vec> orthonormal_rows(std::vector<Vec> rows) {
  std::vector<Vec> basis;
  for (Vec& r : rows) {
    const double original = norm(r);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) {
        const double c = dot(r, b);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
      }
    const double nn = norm(r);
    if (nn > 1e-10 * std::max(1.0, original)) {
      for (double& x : r) x /= nn;
      basis.push_back(std::move(r));
    }
  }
  return basis;
}

// Projects v onto the orthogonal complement of the given rows.
std::optional<Vec> project_out(Vec v, const std::vector<Vec>& rows) {
  const auto basis = orthonormal_rows(rows);
  for (const Vec& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
  if (norm(v) < 1e-12) return std::nullopt;
  return v;
}

// Null vector of the t x (t+1) system [q_i | 1] v = 0; empty when the points
// are affinely dependent (rank below t).
std::optional<Vec> hyperplane_through(const std::vector<Vec>& aug_points,
                                      double pivot_floor) {
  const std::size_t rows = aug_points.size();
  const std::size_t cols = aug_points.empty() ? 0 : aug_points.front().size();
  std::vector<Vec> a = aug_points;
  std::vector<std::size_t> pivot_col(rows, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t best = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    if (std::abs(a[best][col]) <= pivot_floor) continue;
    std::swap(a[rank], a[best]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = a[r][col] / a[rank][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  if (rank < rows) return std::nullopt;  // affinely dependent subset
  // one free column remains; set it to 1 and back-substitute
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  std::size_t free_col = SIZE_MAX;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_col = c;
  Vec v(cols, 0.0);
  v[free_col] = 1.0;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t pc = pivot_col[r];
    v[pc] = -a[r][free_col] / a[r][pc];
  }
  return v;
}

double certificate_violation(const BisectionCertificate& cert) {
  double total = 0.0;
  for (const SideCounts& c : cert.sets) {
    const int cap = c.size() / 2;
    total += std::max(0, c.pos - cap) + std::max(0, c.neg - cap);
  }
  return total;
}

struct SmoothProblem {
  const std::vector<std::vector<Vec>>* aug;
  double sigma = 1.0;

  double objective(const Vec& v) const {
    double f = 0.0;
    for (const auto& set : *aug) {
      double s = 0.0;
      for (const Vec& x : set) s += smooth_sign(dot(v, x) / sigma);
      f += s * s;
    }
    return f;
  }

  double objective_grad(const Vec& v, Vec& grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    double f = 0.0;
    Vec gset(v.size());
    for (const auto& set : *aug) {
      double s = 0.0;
      std::fill(gset.begin(), gset.end(), 0.0);
      for (const Vec& x : set) {
        const double th = smooth_sign(dot(v, x) / sigma);
        s += th;
        const double w = (1.0 - th * th) / sigma;
        for (std::size_t i = 0; i < v.size(); ++i) gset[i] += w * x[i];
      }
      f += s * s;
      for (std::size_t i = 0; i < v.size(); ++i) grad[i] += 2.0 * s * gset[i];
    }
    return f;
  }
};

void renormalize(Vec& v) {
  const double nn = norm(v);
  if (nn > 0.0)
    for (double& x : v) x /= nn;
}

}  // namespace

double Hyperplane::signed_distance(std::span<const double> x) const {
  double d = offset;
  for (std::size_t i = 0; i < normal.size(); ++i) d += normal[i] * x[i];
  return d;
}

bool BisectionCertificate::valid() const {
  for (const SideCounts& c : sets) {
    const int cap = c.size() / 2;
    if (c.pos > cap || c.neg > cap) return false;
  }
  return true;
}

BisectionCertificate evaluate_cut(const Hyperplane& plane,
                                  std::span<const PointSet> sets, double tau) {
  BisectionCertificate cert;
  cert.sets.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const Point& p : sets[i]) {
      const double d = plane.signed_distance(p);
      if (d > tau)
        ++cert.sets[i].pos;
      else if (d < -tau)
        ++cert.sets[i].neg;
      else
        ++cert.sets[i].on;
    }
  }
  return cert;
}

int resolve_thread_count(const SearchConfig& config) {
  if (config.max_threads > 0) return config.max_threads;
  if (const char* env = std::getenv("POLYPART_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

BisectResult bisect_exact_impl(std::span<const PointSet> sets, double tau,
                               std::size_t point_cap, bool perturbed) {
  const int t = point_dim(sets);
  check_dims(sets, t);
  if (static_cast<int>(sets.size()) > std::max(t, 1))
    throw std::invalid_argument("bisect_exact: more sets than dimensions");

  std::size_t total = 0;
  for (const PointSet& s : sets) total += s.size();
  if (total > point_cap)
    throw std::invalid_argument("bisect_exact: instance exceeds the point cap");
  if (total == 0 || t == 0) {
    Hyperplane h;
    h.normal.assign(static_cast<std::size_t>(std::max(t, 1)), 0.0);
    h.normal[0] = 1.0;
    BisectResult r{h, evaluate_cut(h, sets, tau), perturbed};
    return r;
  }

  const double scale = data_scale(sets);
  std::vector<Vec> aug_union;
  for (const PointSet& set : sets)
    for (const Point& p : set) {
      Vec a(static_cast<std::size_t>(t) + 1, 1.0);
      std::copy(p.begin(), p.end(), a.begin());
      aug_union.push_back(std::move(a));
    }

  // combination count guard
  double combos = 1.0;
  for (int i = 0; i < t; ++i)
    combos *= static_cast<double>(total - static_cast<std::size_t>(i)) /
              static_cast<double>(i + 1);
  if (combos > 1e7)
    throw Error(ErrorKind::Budget, "bisect_exact: candidate count too large");

  const double pivot_floor = 1e-10 * std::max(1.0, scale);
  std::vector<std::size_t> idx(static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t n_points = aug_union.size();

  auto try_candidate = [&](const Hyperplane& h) -> std::optional<BisectResult> {
    BisectionCertificate cert = evaluate_cut(h, sets, tau);
    if (cert.valid()) return BisectResult{h, std::move(cert), perturbed};
    return std::nullopt;
  };

  if (n_points >= static_cast<std::size_t>(t)) {
    while (true) {
      std::vector<Vec> subset;
      subset.reserve(idx.size());
      for (std::size_t i : idx) subset.push_back(aug_union[i]);
      if (auto v = hyperplane_through(subset, pivot_floor))
        if (auto h = to_hyperplane(*v))
          if (auto r = try_candidate(*h)) return std::move(*r);
      // next lexicographic combination
      int pos = t - 1;
      while (pos >= 0 &&
             idx[static_cast<std::size_t>(pos)] ==
                 n_points - static_cast<std::size_t>(t - pos))
        --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int k = pos + 1; k < t; ++k)
        idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
    }
  }

  // axis-aligned fallback planes through every point
  for (int axis = 0; axis < t; ++axis) {
    for (std::size_t i = 0; i < n_points; ++i) {
      Hyperplane h;
      h.normal.assign(static_cast<std::size_t>(t), 0.0);
      h.normal[static_cast<std::size_t>(axis)] = 1.0;
      h.offset = -aug_union[i][static_cast<std::size_t>(axis)];
      if (auto r = try_candidate(h)) return std::move(*r);
    }
  }

  if (!perturbed) {
    // deterministic seeded perturbation, then one retry
    detail::Rng rng(0x9e3779b97f4a7c15ULL);
    std::vector<PointSet> jittered(sets.begin(), sets.end());
    for (PointSet& set : jittered)
      for (Point& p : set)
        for (double& c : p) c += rng.uniform(-1.0, 1.0) * 1e-7 * scale;
    return bisect_exact_impl(jittered, tau, point_cap, /*perturbed=*/true);
  }
  throw Error(ErrorKind::NoCandidate,
              "bisect_exact: no enumerated hyperplane certifies (degenerate "
              "position persists after perturbation)");
}

}  // namespace

BisectResult bisect_exact(std::span<const PointSet> sets, double tau,
                          std::size_t point_cap) {
  return bisect_exact_impl(sets, tau, point_cap, /*perturbed=*/false);
}

namespace {

struct RestartOutcome {
  std::optional<BisectResult> certified;
  double best_violation = std::numeric_limits<double>::infinity();
  BisectResult best;
};

// The offsets certifying set i against normal direction v form a closed
// interval of thresholds: the median gap [p_(m/2), p_(m/2+1)] of the sorted
// projections for even m, the median alone for odd m. A cut exists for v
// exactly when all intervals intersect, i.e. when the infeasibility
// max_i lo_i - min_i hi_i is <= 0.
struct ThresholdIntervals {
  double max_lo = -std::numeric_limits<double>::infinity();
  double min_hi = std::numeric_limits<double>::infinity();
  // lifted points achieving the extremes, as subgradient directions
  const Vec* lo_point = nullptr;
  const Vec* hi_point = nullptr;
  // per odd set, the point whose projection is the median
  std::vector<const Vec*> odd_medians;

  double infeasibility() const { return max_lo - min_hi; }
};

ThresholdIntervals threshold_intervals(const std::vector<std::vector<Vec>>& aug,
                                       const Vec& normal) {
  ThresholdIntervals iv;
  std::vector<std::pair<double, const Vec*>> proj;
  for (const auto& set : aug) {
    if (set.empty()) continue;
    proj.clear();
    proj.reserve(set.size());
    // dot over the first t coordinates; the augmented 1 is not a coordinate
    for (const Vec& x : set) proj.emplace_back(dot(normal, x), &x);
    std::sort(proj.begin(), proj.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t m = proj.size();
    double lo, hi;
    const Vec *lo_pt, *hi_pt;
    if (m % 2 == 0) {
      lo = proj[m / 2 - 1].first;
      lo_pt = proj[m / 2 - 1].second;
      hi = proj[m / 2].first;
      hi_pt = proj[m / 2].second;
    } else {
      lo = hi = proj[m / 2].first;
      lo_pt = hi_pt = proj[m / 2].second;
      iv.odd_medians.push_back(proj[m / 2].second);
    }
    if (lo > iv.max_lo) {
      iv.max_lo = lo;
      iv.lo_point = lo_pt;
    }
    if (hi < iv.min_hi) {
      iv.min_hi = hi;
      iv.hi_point = hi_pt;
    }
  }
  return iv;
}

RestartOutcome run_restart(std::span<const PointSet> sets,
                           const std::vector<std::vector<Vec>>& aug, int t,
                           double scale, std::uint64_t seed, int restart,
                           const SearchConfig& config, double tau) {
  RestartOutcome outcome;
  detail::Rng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(restart)));
  Vec v(static_cast<std::size_t>(t) + 1);
  for (double& x : v) x = rng.normal();
  renormalize(v);

  SmoothProblem problem{&aug, 1.0};
  Vec grad(v.size()), cand(v.size());
  for (double factor : config.sigma_factors) {
    problem.sigma = std::max(factor * scale, 1e-12);
    double step = config.initial_step;
    double obj = problem.objective(v);
    for (int it = 0; it < config.iters_per_stage; ++it) {
      const double f0 = problem.objective_grad(v, grad);
      obj = f0;
      double gv = dot(grad, v);
      double gn = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        grad[i] -= gv * v[i];  // tangent projection
        gn += grad[i] * grad[i];
      }
      gn = std::sqrt(gn);
      if (gn < 1e-14) break;
      bool moved = false;
      while (step >= 1e-7) {
        for (std::size_t i = 0; i < v.size(); ++i)
          cand[i] = v[i] - step * grad[i] / gn;
        renormalize(cand);
        if (problem.objective(cand) < obj) {
          v = cand;
          moved = true;
          step = std::min(step * 1.5, 2.0);
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
  }

  auto consider = [&](const Hyperplane& h) -> bool {
    BisectionCertificate cert = evaluate_cut(h, sets, tau);
    const double viol = certificate_violation(cert);
    if (viol < outcome.best_violation) {
      outcome.best_violation = viol;
      outcome.best = BisectResult{h, cert, false};
    }
    if (cert.valid()) {
      outcome.certified = BisectResult{h, std::move(cert), false};
      return true;
    }
    return false;
  };

  // second phase: refine the normal direction against the certificate
  // itself, descending the threshold-interval infeasibility by subgradient
  // steps (the extremes move with their achieving points)
  Vec normal(v.begin(), v.end() - 1);
  if (norm(normal) < 1e-12)
    for (double& c : normal) c = rng.normal();
  renormalize(normal);
  Vec best_normal = normal;
  double best_h = threshold_intervals(aug, normal).infeasibility();
  double eta = 0.25;
  for (int it = 0; it < config.refine_iters && best_h > 0.0; ++it) {
    const ThresholdIntervals iv = threshold_intervals(aug, normal);
    const double h = iv.infeasibility();
    if (h < best_h) {
      best_h = h;
      best_normal = normal;
    }
    if (h <= 0.0 || !iv.lo_point || !iv.hi_point) break;
    Vec g(normal.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = (*iv.lo_point)[i] - (*iv.hi_point)[i];
    const double gv = dot(g, normal);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= gv * normal[i];
    const double gn = norm(g);
    if (gn < 1e-14) break;
    for (std::size_t i = 0; i < normal.size(); ++i)
      normal[i] -= eta * g[i] / gn;
    renormalize(normal);
    eta = std::max(eta * 0.97, 1e-5);
  }

  const ThresholdIntervals iv = threshold_intervals(aug, best_normal);
  if (iv.odd_medians.empty()) {
    if (iv.max_lo <= iv.min_hi) {
      Hyperplane h;
      h.normal = best_normal;
      h.offset = -(0.5 * (iv.max_lo + iv.min_hi));
      if (consider(h)) return outcome;
    }
  } else if (iv.odd_medians.size() <= static_cast<std::size_t>(t)) {
    // odd sets admit only their median as threshold, so pass the plane
    // exactly through every odd median point
    double theta = 0.0;
    for (const Vec* q : iv.odd_medians) theta += dot(best_normal, *q);
    theta /= static_cast<double>(iv.odd_medians.size());
    Vec vaug = best_normal;
    vaug.push_back(-theta);
    std::vector<Vec> pinned;
    pinned.reserve(iv.odd_medians.size());
    for (const Vec* q : iv.odd_medians) pinned.push_back(*q);
    if (auto snapped = project_out(vaug, pinned))
      if (auto h = to_hyperplane(*snapped))
        if (consider(*h)) return outcome;
  }

  if (auto h = to_hyperplane(v)) consider(*h);
  return outcome;
}

}  // namespace

BisectResult bisect_search(std::span<const PointSet> sets, std::uint64_t seed,
                           const SearchConfig& config, double tau) {
  const int t = point_dim(sets);
  check_dims(sets, t);
  if (static_cast<int>(sets.size()) > std::max(t, 1))
    throw std::invalid_argument("bisect_search: more sets than dimensions");
  std::size_t total = 0;
  for (const PointSet& s : sets) total += s.size();
  if (total == 0 || t == 0) {
    Hyperplane h;
    h.normal.assign(static_cast<std::size_t>(std::max(t, 1)), 0.0);
    h.normal[0] = 1.0;
    return BisectResult{h, evaluate_cut(h, sets, tau), false};
  }

  const double scale = data_scale(sets);
  const auto aug = augmented(sets, t);

  double best_violation = std::numeric_limits<double>::infinity();
  BisectResult best;
  const int threads = std::max(1, resolve_thread_count(config));

  for (int base = 0; base < config.restarts;) {
    const int batch = std::min(threads, config.restarts - base);
    std::vector<std::future<RestartOutcome>> futures;
    futures.reserve(static_cast<std::size_t>(batch));
    for (int k = 0; k < batch; ++k)
      futures.push_back(std::async(
          batch == 1 ? std::launch::deferred : std::launch::async,
          [&, r = base + k] {
            return run_restart(sets, aug, t, scale, seed, r, config, tau);
          }));
    std::optional<BisectResult> winner;
    for (auto& f : futures) {
      RestartOutcome outcome = f.get();
      if (outcome.best_violation < best_violation) {
        best_violation = outcome.best_violation;
        best = outcome.best;
      }
      if (!winner && outcome.certified) winner = std::move(outcome.certified);
    }
    if (winner) return std::move(*winner);
    base += batch;
  }
  throw SearchFailedError(
      "bisect_search: budget exhausted (best certificate violation " +
          std::to_string(best_violation) + ")",
      best_violation, std::move(best));
}

}  // namespace polypart
