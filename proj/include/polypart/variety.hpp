// Variety families and their sign-pattern indicators over finite witness sets.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polypart/polynomial.hpp"

namespace polypart {

enum class VarietyKind { Point, Parametric, Implicit };

// Concrete parametrizations shipped for k = 1 curves.
enum class CurveForm { Line, Circle, Graph };

class Variety {
 public:
  static Variety point(Point coords);

  // t in [t_lo, t_hi] maps to base + t * direction; inclusive endpoint samples.
  static Variety line(Point base, Point direction, double t_lo, double t_hi,
                      int samples);

  // Planar circle; the angle runs over [0, 2*pi) with equally spaced samples
  // (no duplicated closing point). The two-argument basis overload places the
  // circle in the span of u and v for ambient dimension >= 3.
  static Variety circle(Point center, double radius, int samples);
  static Variety circle(Point center, double radius, Point u, Point v,
                        int samples);

  // Graph curve t -> (t, f(t)) in the plane; f is univariate.
  static Variety graph(Polynomial f, double t_lo, double t_hi, int samples);

  // Seeds must satisfy every defining equation within the tau band.
  static Variety implicit(std::vector<Polynomial> equations,
                          std::vector<Point> seeds, double tau);

  VarietyKind kind() const { return kind_; }
  CurveForm form() const { return form_; }  // parametric only
  int k() const { return k_; }
  int ambient_dim() const { return ambient_; }

  // Parametric accessors.
  int sample_count() const { return samples_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  bool closed() const { return closed_; }
  Point at(double t) const;

  // Point / implicit accessors.
  const Point& coordinates() const { return coords_; }
  const std::vector<Polynomial>& equations() const { return equations_; }
  const std::vector<Point>& seeds() const { return seeds_; }

 private:
  Variety() = default;

  VarietyKind kind_ = VarietyKind::Point;
  CurveForm form_ = CurveForm::Line;
  int k_ = 0;
  int ambient_ = 0;

  Point coords_;                 // point kind
  Point base_, direction_;       // line
  Point center_, axis_u_, axis_v_;  // circle
  double radius_ = 0.0;
  Polynomial graph_poly_;        // graph
  double t_lo_ = 0.0, t_hi_ = 0.0;
  int samples_ = 0;
  bool closed_ = false;

  std::vector<Polynomial> equations_;  // implicit kind
  std::vector<Point> seeds_;
};

// A named finite set of varieties of equal intrinsic and ambient dimension.
class Family {
 public:
  Family(std::string name, std::vector<Variety> varieties);

  const std::string& name() const { return name_; }
  const std::vector<Variety>& varieties() const { return varieties_; }
  std::size_t size() const { return varieties_.size(); }
  int k() const { return varieties_.front().k(); }
  int ambient_dim() const { return varieties_.front().ambient_dim(); }
  bool all_points() const;

 private:
  std::string name_;
  std::vector<Variety> varieties_;
};

// Finite discretization: the point itself, evenly spaced parameter samples
// mapped through the curve, or the implicit seeds.
std::vector<Point> witness_points(const Variety& gamma);

// 1 when some witness point realizes the sign prescribed by every bit of
// alpha (bit l-1 clear: p_l > tau; set: p_l < -tau). Exact for point
// varieties, sampling-limited otherwise.
int indicator(const Variety& gamma, std::span<const Polynomial> polys,
              std::uint32_t alpha, double tau);

struct CrossingCount {
  int runs = 0;         // maximal constant-sign segments along the curve
  bool degenerate = false;  // every sample landed exactly on Z(poly)
  std::vector<double> crossings;  // refined parameters of detected sign flips
};

// Counts sign runs of poly along a k = 1 parametric curve, refining each
// detected sign change by bisection to 1e-9 in parameter space. A sample
// evaluating exactly to zero terminates the current run.
CrossingCount crossing_count(const Variety& curve, const Polynomial& poly,
                             int resolution);

}  // namespace polypart
