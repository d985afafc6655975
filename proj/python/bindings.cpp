// Python bindings: thin wrappers that speak in plain lists and dicts so the
// module needs no numpy and results serialize naturally.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "polypart/f2_dickson.hpp"
#include "polypart/ham_sandwich.hpp"
#include "polypart/partition.hpp"
#include "polypart/phi_map.hpp"
#include "polypart/polynomial.hpp"
#include "polypart/schedule.hpp"
#include "polypart/variety.hpp"

namespace py = pybind11;
using namespace polypart;

namespace {

// a polynomial travels as [(exponents, coefficient), ...]
using TermList = std::vector<std::pair<std::vector<std::uint32_t>, double>>;

Polynomial poly_from_terms(int n, const TermList& terms) {
  Polynomial p(n);
  for (const auto& [exps, coeff] : terms) {
    if (static_cast<int>(exps.size()) != n)
      throw std::invalid_argument("term exponents must hold n entries");
    p.add_term(Monomial(exps), coeff);
  }
  return p;
}

TermList terms_of(const Polynomial& p) {
  TermList out;
  for (const auto& [mono, coeff] : p.terms())
    out.emplace_back(mono.exponents(), coeff);
  return out;
}

std::vector<Polynomial> polys_from_terms(int n,
                                         const std::vector<TermList>& lists) {
  std::vector<Polynomial> polys;
  polys.reserve(lists.size());
  for (const TermList& terms : lists) polys.push_back(poly_from_terms(n, terms));
  return polys;
}

std::vector<Family> point_families(const std::vector<std::vector<Point>>& raw) {
  std::vector<Family> families;
  families.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<Variety> pts;
    pts.reserve(raw[i].size());
    for (const Point& p : raw[i]) pts.push_back(Variety::point(p));
    families.emplace_back("f" + std::to_string(i), std::move(pts));
  }
  return families;
}

int infer_dim(const std::vector<std::vector<Point>>& raw) {
  for (const auto& fam : raw)
    if (!fam.empty()) return static_cast<int>(fam.front().size());
  throw std::invalid_argument("families hold no points");
}

py::dict schedule_dict(const DegreeSchedule& sched) {
  py::dict out;
  out["deltas"] = sched.deltas;
  out["s"] = sched.s;
  out["total_degree"] = sched.total_degree;
  out["cn"] = sched.cn;
  return out;
}

py::dict bisect_dict(const BisectResult& result) {
  py::list cert;
  for (const SideCounts& c : result.certificate.sets) {
    py::dict side;
    side["pos"] = c.pos;
    side["neg"] = c.neg;
    side["on"] = c.on;
    cert.append(std::move(side));
  }
  py::dict out;
  out["normal"] = result.plane.normal;
  out["offset"] = result.plane.offset;
  out["certificate"] = std::move(cert);
  out["valid"] = result.certificate.valid();
  out["perturbed"] = result.perturbed;
  return out;
}

py::dict partition_dict(const PartitionResult& result) {
  py::list polys;
  for (const Polynomial& p : result.polys) polys.append(terms_of(p));
  py::list stages;
  for (const StageInfo& stage : result.stages) {
    py::dict rec;
    rec["ell"] = stage.ell;
    rec["method"] = stage.method;
    rec["attempts"] = stage.attempts;
    rec["perturbed"] = stage.perturbed;
    stages.append(std::move(rec));
  }
  py::dict out;
  out["deltas"] = result.schedule.deltas;
  out["s"] = result.schedule.s;
  out["cn"] = result.schedule.cn;
  out["polynomials"] = std::move(polys);
  out["product_degree"] = result.product_degree;
  out["counts"] = result.cell_table.counts;
  out["on_zero"] = result.on_zero_set;
  out["stages"] = std::move(stages);
  return out;
}

py::object reduced_terms_or_none(const F2Poly& reduced, std::size_t cap) {
  if (reduced.term_count() > cap) return py::none();
  py::list out;
  for (const auto& term : reduced.terms()) out.append(py::tuple(py::cast(term)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-family polynomial partitioning: degree schedules, "
            "ham-sandwich cuts in lifted coordinates, cell counts, and the "
            "Dickson obstruction over F2.";
  m.attr("__version__") = "0.1.0";
  m.attr("DEFAULT_TAU") = kDefaultTau;

  m.def("compute_delta", &compute_delta, py::arg("ell"), py::arg("j"),
        py::arg("n"),
        "Smallest degree delta with delta^n >= n! * j * 2^(ell-1).");
  m.def(
      "compute_schedule",
      [](int n, int j, int D) {
        return schedule_dict(compute_schedule({n, j, D}));
      },
      py::arg("n"), py::arg("j"), py::arg("D"),
      "Per-stage degrees, stage count, and the cell-count constant.");
  m.def("cell_bound_constant", &cell_bound_constant, py::arg("n"));

  m.def(
      "monomial_basis",
      [](int n, int delta) {
        py::list out;
        for (const Monomial& mono : monomial_basis(n, delta))
          out.append(py::tuple(py::cast(mono.exponents())));
        return out;
      },
      py::arg("n"), py::arg("delta"),
      "Exponent vectors of degree <= delta in graded lex order.");
  m.def(
      "evaluate",
      [](const TermList& terms, const Point& x) {
        return poly_from_terms(static_cast<int>(x.size()), terms).evaluate(x);
      },
      py::arg("terms"), py::arg("x"));
  m.def(
      "sign_region",
      [](const TermList& terms, const Point& x, double tau) {
        const Sign sg = sign_region(
            poly_from_terms(static_cast<int>(x.size()), terms), x, tau);
        return sg == Sign::Pos ? 1 : sg == Sign::Neg ? -1 : 0;
      },
      py::arg("terms"), py::arg("x"), py::arg("tau") = kDefaultTau,
      "1, -1, or 0 for the tau band.");
  m.def(
      "veronese_lift",
      [](const Point& x, const std::vector<std::vector<std::uint32_t>>& exps) {
        std::vector<Monomial> monos;
        monos.reserve(exps.size());
        for (const auto& e : exps) monos.emplace_back(e);
        return veronese_lift(x, monos);
      },
      py::arg("x"), py::arg("monomials"));

  m.def(
      "bisect_exact",
      [](const std::vector<PointSet>& sets, double tau) {
        return bisect_dict(bisect_exact(sets, tau));
      },
      py::arg("sets"), py::arg("tau") = kDefaultTau,
      "Brute-force simultaneous bisection of up to t point sets in R^t.");
  m.def(
      "bisect_search",
      [](const std::vector<PointSet>& sets, std::uint64_t seed, double tau,
         int restarts, int max_threads) {
        SearchConfig config;
        if (restarts > 0) config.restarts = restarts;
        config.max_threads = max_threads;
        return bisect_dict(bisect_search(sets, seed, config, tau));
      },
      py::arg("sets"), py::arg("seed") = 0, py::arg("tau") = kDefaultTau,
      py::arg("restarts") = 0, py::arg("max_threads") = 0,
      "Annealed search for a certified simultaneous bisection.");

  m.def(
      "partition_points",
      [](const std::vector<std::vector<Point>>& raw, int D,
         std::uint64_t seed, double tau) {
        const auto families = point_families(raw);
        const PartitionParams params{infer_dim(raw),
                                     static_cast<int>(raw.size()), D};
        return partition_dict(partition_points(families, params, seed, tau));
      },
      py::arg("families"), py::arg("D"), py::arg("seed") = 0,
      py::arg("tau") = kDefaultTau,
      "Stagewise partition of colored point families; every cell ends up "
      "with at most floor(|family| / 2^s) points of each color.");
  m.def(
      "count_cells",
      [](const std::vector<std::vector<Point>>& raw,
         const std::vector<TermList>& polys, double tau) {
        const auto families = point_families(raw);
        const auto table = count_cells(
            families, polys_from_terms(infer_dim(raw), polys), tau);
        return table.counts;
      },
      py::arg("families"), py::arg("polynomials"),
      py::arg("tau") = kDefaultTau,
      "Per-family, per-sign-pattern counts against a fixed tuple of cuts.");

  m.def(
      "search_phi_zero",
      [](const std::vector<std::vector<Point>>& raw, int D,
         std::uint64_t seed, double tau) {
        const auto families = point_families(raw);
        const PartitionParams params{infer_dim(raw),
                                     static_cast<int>(raw.size()), D};
        const auto found = search_phi_zero(families, params, seed, tau);
        py::list polys;
        for (const Polynomial& p : found.y.polynomials())
          polys.append(terms_of(p));
        py::dict out;
        out["residual"] = found.residual;
        out["deltas"] = found.y.deltas;
        out["coefficients"] = found.y.coefficients;
        out["polynomials"] = std::move(polys);
        out["trace"] = found.trace;
        return out;
      },
      py::arg("families"), py::arg("D"), py::arg("seed") = 0,
      py::arg("tau") = kDefaultTau,
      "Search the product of spheres for a tuple equalizing all cell counts; "
      "residual 0 means perfectly balanced cells.");

  m.def(
      "crossing_count",
      [](const Point& base, const Point& direction, double t_lo, double t_hi,
         const TermList& poly, int resolution) {
        const auto line = Variety::line(base, direction, t_lo, t_hi, 2);
        const auto cc = crossing_count(
            line, poly_from_terms(static_cast<int>(base.size()), poly),
            resolution);
        py::dict out;
        out["runs"] = cc.runs;
        out["degenerate"] = cc.degenerate;
        out["crossings"] = cc.crossings;
        return out;
      },
      py::arg("base"), py::arg("direction"), py::arg("t_lo"), py::arg("t_hi"),
      py::arg("poly"), py::arg("resolution") = 1024,
      "Sign runs of a polynomial along a parametrized line.");

  m.def(
      "dickson_product",
      [](int s) {
        const F2Poly q = dickson_product(s);
        py::list out;
        for (const auto& term : q.terms()) out.append(py::tuple(py::cast(term)));
        return out;
      },
      py::arg("s"), "Terms of the top Dickson polynomial over F2.");
  m.def(
      "dickson_symmetric",
      [](int s) {
        const F2Poly q = dickson_symmetric(s);
        py::list out;
        for (const auto& term : q.terms()) out.append(py::tuple(py::cast(term)));
        return out;
      },
      py::arg("s"));
  m.def(
      "obstruction_check",
      [](int s, int j) {
        const auto report = obstruction_check(s, j);
        py::dict out;
        out["s"] = report.s;
        out["j"] = report.j;
        out["nonzero"] = report.nonzero;
        out["witness_present"] = report.witness_present;
        out["surviving_terms"] = report.surviving_terms;
        out["witness"] = py::tuple(py::cast(report.witness));
        out["reduced"] = reduced_terms_or_none(report.reduced, 4096);
        return out;
      },
      py::arg("s"), py::arg("j"),
      "Reduce the j-th power of the Dickson polynomial modulo the sphere "
      "index ideal; a surviving witness certifies the obstruction.");
}
