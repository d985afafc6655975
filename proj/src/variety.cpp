#include "polypart/variety.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polypart {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

Sign exact_sign(double v) {
  if (v > 0.0) return Sign::Pos;
  if (v < 0.0) return Sign::Neg;
  return Sign::Zero;
}

}  // namespace

Variety Variety::point(Point coords) {
  require(!coords.empty(), "point variety needs coordinates");
  Variety g;
  g.kind_ = VarietyKind::Point;
  g.k_ = 0;
  g.ambient_ = static_cast<int>(coords.size());
  g.coords_ = std::move(coords);
  return g;
}

Variety Variety::line(Point base, Point direction, double t_lo, double t_hi,
                      int samples) {
  require(!base.empty() && base.size() == direction.size(),
          "line needs matching base and direction");
  require(samples >= 1, "line needs at least one sample");
  require(t_lo <= t_hi, "line parameter range is reversed");
  double len = 0.0;
  for (double d : direction) len += d * d;
  require(len > 0.0, "line direction must be nonzero");
  Variety g;
  g.kind_ = VarietyKind::Parametric;
  g.form_ = CurveForm::Line;
  g.k_ = 1;
  g.ambient_ = static_cast<int>(base.size());
  g.base_ = std::move(base);
  g.direction_ = std::move(direction);
  g.t_lo_ = t_lo;
  g.t_hi_ = t_hi;
  g.samples_ = samples;
  return g;
}

Variety Variety::circle(Point center, double radius, int samples) {
  require(center.size() == 2, "planar circle needs a 2d center");
  Point u{1.0, 0.0}, v{0.0, 1.0};
  return circle(std::move(center), radius, std::move(u), std::move(v), samples);
}

Variety Variety::circle(Point center, double radius, Point u, Point v,
                        int samples) {
  require(!center.empty(), "circle needs a center");
  require(center.size() == u.size() && center.size() == v.size(),
          "circle basis dimension mismatch");
  require(radius > 0.0, "circle radius must be positive");
  require(samples >= 1, "circle needs at least one sample");
  Variety g;
  g.kind_ = VarietyKind::Parametric;
  g.form_ = CurveForm::Circle;
  g.k_ = 1;
  g.ambient_ = static_cast<int>(center.size());
  g.center_ = std::move(center);
  g.axis_u_ = std::move(u);
  g.axis_v_ = std::move(v);
  g.radius_ = radius;
  g.t_lo_ = 0.0;
  g.t_hi_ = 2.0 * std::numbers::pi;
  g.samples_ = samples;
  g.closed_ = true;
  return g;
}

Variety Variety::graph(Polynomial f, double t_lo, double t_hi, int samples) {
  require(f.dim() == 1, "graph curve needs a univariate polynomial");
  require(samples >= 1, "graph needs at least one sample");
  require(t_lo <= t_hi, "graph parameter range is reversed");
  Variety g;
  g.kind_ = VarietyKind::Parametric;
  g.form_ = CurveForm::Graph;
  g.k_ = 1;
  g.ambient_ = 2;
  g.graph_poly_ = std::move(f);
  g.t_lo_ = t_lo;
  g.t_hi_ = t_hi;
  g.samples_ = samples;
  return g;
}

Variety Variety::implicit(std::vector<Polynomial> equations,
                          std::vector<Point> seeds, double tau) {
  require(!equations.empty(), "implicit variety needs equations");
  require(!seeds.empty(), "implicit variety needs seed points");
  const int n = equations.front().dim();
  for (const Polynomial& p : equations)
    require(p.dim() == n, "implicit equations disagree on dimension");
  for (const Point& seed : seeds) {
    require(static_cast<int>(seed.size()) == n,
            "implicit seed dimension mismatch");
    for (const Polynomial& p : equations)
      require(std::abs(p.evaluate(seed)) <= tau,
              "implicit seed violates a defining equation");
  }
  Variety g;
  g.kind_ = VarietyKind::Implicit;
  g.k_ = std::max(0, n - static_cast<int>(equations.size()));
  g.ambient_ = n;
  g.equations_ = std::move(equations);
  g.seeds_ = std::move(seeds);
  return g;
}

Point Variety::at(double t) const {
  if (kind_ != VarietyKind::Parametric)
    throw std::invalid_argument("at() requires a parametric variety");
  Point x(static_cast<std::size_t>(ambient_));
  switch (form_) {
    case CurveForm::Line:
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = base_[i] + t * direction_[i];
      break;
    case CurveForm::Circle: {
      const double c = std::cos(t), s = std::sin(t);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = center_[i] + radius_ * (c * axis_u_[i] + s * axis_v_[i]);
      break;
    }
    case CurveForm::Graph: {
      const double arg[1] = {t};
      x[0] = t;
      x[1] = graph_poly_.evaluate(arg);
      break;
    }
  }
  return x;
}

Family::Family(std::string name, std::vector<Variety> varieties)
    : name_(std::move(name)), varieties_(std::move(varieties)) {
  require(!varieties_.empty(), "family must be non-empty");
  const int k = varieties_.front().k();
  const int n = varieties_.front().ambient_dim();
  for (const Variety& g : varieties_) {
    require(g.k() == k, "family mixes intrinsic dimensions");
    require(g.ambient_dim() == n, "family mixes ambient dimensions");
  }
}

bool Family::all_points() const {
  for (const Variety& g : varieties_)
    if (g.kind() != VarietyKind::Point) return false;
  return true;
}

std::vector<Point> witness_points(const Variety& gamma) {
  switch (gamma.kind()) {
    case VarietyKind::Point:
      return {gamma.coordinates()};
    case VarietyKind::Implicit:
      return gamma.seeds();
    case VarietyKind::Parametric:
      break;
  }
  const int m = gamma.sample_count();
  const double lo = gamma.t_lo(), hi = gamma.t_hi();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(m));
  if (m == 1) {
    out.push_back(gamma.at(0.5 * (lo + hi)));
    return out;
  }
  // closed curves wrap, so the closing endpoint would duplicate the first
  const double denom = gamma.closed() ? static_cast<double>(m)
                                      : static_cast<double>(m - 1);
  for (int i = 0; i < m; ++i)
    out.push_back(gamma.at(lo + (hi - lo) * static_cast<double>(i) / denom));
  return out;
}

int indicator(const Variety& gamma, std::span<const Polynomial> polys,
              std::uint32_t alpha, double tau) {
  if (polys.empty()) throw std::invalid_argument("indicator needs polynomials");
  for (const Point& w : witness_points(gamma)) {
    bool all = true;
    for (std::size_t l = 0; l < polys.size(); ++l) {
      const bool want_neg = (alpha >> l) & 1u;
      const Sign s = sign_region(polys[l], w, tau);
      if (s != (want_neg ? Sign::Neg : Sign::Pos)) {
        all = false;
        break;
      }
    }
    if (all) return 1;
  }
  return 0;
}

namespace {

Sign sign_on_curve(const Variety& curve, const Polynomial& poly, double t) {
  return exact_sign(poly.evaluate(curve.at(t)));
}

// Locates a sign change inside (a, b) to 1e-9 in parameter space.
double refine_crossing(const Variety& curve, const Polynomial& poly, double a,
                       Sign sa, double b) {
  while (b - a > 1e-9) {
    const double mid = 0.5 * (a + b);
    const Sign sm = sign_on_curve(curve, poly, mid);
    if (sm == Sign::Zero) return mid;
    if (sm == sa)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

CrossingCount crossing_count(const Variety& curve, const Polynomial& poly,
                             int resolution) {
  if (curve.kind() != VarietyKind::Parametric || curve.k() != 1)
    throw std::invalid_argument("crossing_count needs a parametric curve");
  if (resolution < 1)
    throw std::invalid_argument("crossing_count needs resolution >= 1");

  const double lo = curve.t_lo(), hi = curve.t_hi();
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(resolution) + 1);
  if (resolution == 1) {
    ts.push_back(0.5 * (lo + hi));
  } else {
    const double denom = curve.closed() ? static_cast<double>(resolution)
                                        : static_cast<double>(resolution - 1);
    for (int i = 0; i < resolution; ++i)
      ts.push_back(lo + (hi - lo) * static_cast<double>(i) / denom);
    if (curve.closed()) ts.push_back(hi);  // revisit the start to close runs
  }

  CrossingCount result;
  bool any_nonzero = false;
  Sign current = Sign::Zero;  // Zero doubles as "no open run"
  Sign first_run_sign = Sign::Zero;
  bool first_sample_zero = false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Sign s = sign_on_curve(curve, poly, ts[i]);
    if (s == Sign::Zero) {
      current = Sign::Zero;
      if (i == 0) first_sample_zero = true;
      continue;
    }
    any_nonzero = true;
    if (current == Sign::Zero) {
      ++result.runs;
    } else if (s != current) {
      ++result.runs;
      result.crossings.push_back(
          refine_crossing(curve, poly, ts[i - 1], current, ts[i]));
    }
    current = s;
    if (first_run_sign == Sign::Zero) first_run_sign = s;
  }
  if (!any_nonzero) {
    result.degenerate = true;
    result.runs = 0;
    return result;
  }
  // on a closed curve the final run continues into the first one
  if (curve.closed() && result.runs > 1 && !first_sample_zero &&
      current == first_run_sign)
    --result.runs;
  return result;
}

}  // namespace polypart
