#include "polypart/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "polypart/errors.hpp"

namespace polypart {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& why) {
  throw Error(ErrorKind::Parse, where + ": " + why);
}

const ordered_json& field(const ordered_json& obj, const char* key,
                          const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const ordered_json& obj, const char* key,
              const std::string& where) {
  const ordered_json& v = field(obj, key, where);
  if (!v.is_number_integer())
    parse_fail(where, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const ordered_json& obj, const char* key,
                    const std::string& where) {
  const ordered_json& v = field(obj, key, where);
  if (!v.is_number())
    parse_fail(where, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

Point point_from_json(const ordered_json& arr, int n,
                      const std::string& where) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    parse_fail(where, "expected an array of " + std::to_string(n) +
                          " coordinates");
  Point p;
  p.reserve(arr.size());
  for (const auto& c : arr) {
    if (!c.is_number()) parse_fail(where, "coordinates must be numbers");
    p.push_back(c.get<double>());
  }
  return p;
}

std::vector<Point> points_from_json(const ordered_json& arr, int n,
                                    const std::string& where) {
  if (!arr.is_array() || arr.empty())
    parse_fail(where, "expected a non-empty array of points");
  std::vector<Point> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(
        point_from_json(arr[i], n, where + ", point " + std::to_string(i)));
  return out;
}

std::pair<double, double> range_from_json(const ordered_json& arr,
                                          const std::string& where) {
  if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number() ||
      !arr[1].is_number())
    parse_fail(where, "t_range must be [lo, hi]");
  return {arr[0].get<double>(), arr[1].get<double>()};
}

template <typename Factory>
Variety checked_variety(const std::string& where, Factory&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& err) {
    parse_fail(where, err.what());
  }
}

Family parse_family(const ordered_json& rec, int n, double tau,
                    const std::string& where) {
  const ordered_json& name_json = field(rec, "name", where);
  if (!name_json.is_string()) parse_fail(where, "\"name\" must be a string");
  const std::string name = name_json.get<std::string>();
  const ordered_json& kind_json = field(rec, "kind", where);
  if (!kind_json.is_string()) parse_fail(where, "\"kind\" must be a string");
  const std::string kind = kind_json.get<std::string>();

  std::vector<Variety> varieties;
  if (kind == "points") {
    for (const Point& p : points_from_json(field(rec, "points", where), n,
                                           where + ", \"points\""))
      varieties.push_back(Variety::point(p));
  } else if (kind == "lines") {
    const ordered_json& arr = field(rec, "lines", where);
    if (!arr.is_array() || arr.empty())
      parse_fail(where, "\"lines\" must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string lw = where + ", line " + std::to_string(i);
      const ordered_json& line = arr[i];
      const Point base = point_from_json(field(line, "point", lw), n, lw);
      const Point dir = point_from_json(field(line, "direction", lw), n, lw);
      const auto [lo, hi] = range_from_json(field(line, "t_range", lw), lw);
      const int samples = int_field(line, "samples", lw);
      varieties.push_back(checked_variety(
          lw, [&] { return Variety::line(base, dir, lo, hi, samples); }));
    }
  } else if (kind == "circles") {
    const ordered_json& arr = field(rec, "circles", where);
    if (!arr.is_array() || arr.empty())
      parse_fail(where, "\"circles\" must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cw = where + ", circle " + std::to_string(i);
      const ordered_json& circ = arr[i];
      const Point center = point_from_json(field(circ, "center", cw), n, cw);
      const double radius = number_field(circ, "radius", cw);
      const int samples = int_field(circ, "samples", cw);
      if (circ.contains("basis")) {
        const ordered_json& basis = circ["basis"];
        if (!basis.is_array() || basis.size() != 2)
          parse_fail(cw, "\"basis\" must hold two vectors");
        const Point u = point_from_json(basis[0], n, cw + ", basis[0]");
        const Point v = point_from_json(basis[1], n, cw + ", basis[1]");
        varieties.push_back(checked_variety(cw, [&] {
          return Variety::circle(center, radius, u, v, samples);
        }));
      } else {
        if (n != 2)
          parse_fail(cw, "circles outside the plane need a \"basis\"");
        varieties.push_back(checked_variety(
            cw, [&] { return Variety::circle(center, radius, samples); }));
      }
    }
  } else if (kind == "graphs") {
    if (n != 2) parse_fail(where, "graph curves need n = 2");
    const ordered_json& arr = field(rec, "graphs", where);
    if (!arr.is_array() || arr.empty())
      parse_fail(where, "\"graphs\" must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string gw = where + ", graph " + std::to_string(i);
      const ordered_json& graph = arr[i];
      const Polynomial f =
          polynomial_from_json(field(graph, "f", gw), 1, gw + ", \"f\"");
      const auto [lo, hi] = range_from_json(field(graph, "t_range", gw), gw);
      const int samples = int_field(graph, "samples", gw);
      varieties.push_back(checked_variety(
          gw, [&] { return Variety::graph(f, lo, hi, samples); }));
    }
  } else if (kind == "implicit") {
    const ordered_json& arr = field(rec, "varieties", where);
    if (!arr.is_array() || arr.empty())
      parse_fail(where, "\"varieties\" must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string vw = where + ", variety " + std::to_string(i);
      const ordered_json& rec_v = arr[i];
      const ordered_json& eqs = field(rec_v, "equations", vw);
      if (!eqs.is_array() || eqs.empty())
        parse_fail(vw, "\"equations\" must be a non-empty array");
      std::vector<Polynomial> equations;
      for (std::size_t e = 0; e < eqs.size(); ++e)
        equations.push_back(polynomial_from_json(
            eqs[e], n, vw + ", equation " + std::to_string(e)));
      const std::vector<Point> seeds = points_from_json(
          field(rec_v, "seeds", vw), n, vw + ", \"seeds\"");
      if (rec_v.contains("k")) {
        const int k = int_field(rec_v, "k", vw);
        const int derived =
            std::max(0, n - static_cast<int>(equations.size()));
        if (k != derived)
          parse_fail(vw, "declared dimension k disagrees with the equations");
      }
      if (rec_v.contains("m")) {
        const int m = int_field(rec_v, "m", vw);
        if (m < static_cast<int>(equations.size()))
          parse_fail(vw, "more equations than the declared m");
      }
      if (rec_v.contains("d")) {
        const int d = int_field(rec_v, "d", vw);
        for (const Polynomial& p : equations)
          if (p.degree() > d)
            parse_fail(vw, "an equation exceeds the declared degree d");
      }
      varieties.push_back(checked_variety(
          vw, [&] { return Variety::implicit(equations, seeds, tau); }));
    }
  } else {
    parse_fail(where, "unknown kind \"" + kind + "\"");
  }

  try {
    return Family(name, std::move(varieties));
  } catch (const std::invalid_argument& err) {
    parse_fail(where, err.what());
  }
}

}  // namespace

InputData parse_families(const ordered_json& doc, double tau) {
  const std::string where = "input";
  InputData data;
  data.n = int_field(doc, "n", where);
  if (data.n < 1) parse_fail(where, "\"n\" must be positive");
  const ordered_json& fams = field(doc, "families", where);
  if (!fams.is_array() || fams.empty())
    parse_fail(where, "\"families\" must be a non-empty array");
  for (std::size_t i = 0; i < fams.size(); ++i) {
    std::string fw = "family " + std::to_string(i);
    if (fams[i].is_object() && fams[i].contains("name") &&
        fams[i]["name"].is_string())
      fw += " (\"" + fams[i]["name"].get<std::string>() + "\")";
    Family fam = parse_family(fams[i], data.n, tau, fw);
    if (fam.ambient_dim() != data.n)
      parse_fail(fw, "ambient dimension disagrees with \"n\"");
    data.families.push_back(std::move(fam));
  }
  return data;
}

InputData load_families(const std::filesystem::path& path, double tau) {
  return parse_families(read_json(path), tau);
}

ordered_json polynomial_json(const Polynomial& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    ordered_json term;
    term["exponents"] = mono.exponents();
    term["coefficient"] = coeff;
    terms.push_back(std::move(term));
  }
  ordered_json out;
  out["n"] = p.dim();
  out["terms"] = std::move(terms);
  return out;
}

Polynomial polynomial_from_json(const ordered_json& record, int n,
                                const std::string& where) {
  if (record.contains("n") && record["n"].is_number_integer() &&
      record["n"].get<int>() != n)
    parse_fail(where, "polynomial is over " +
                          std::to_string(record["n"].get<int>()) +
                          " variables, expected " + std::to_string(n));
  const ordered_json& terms = field(record, "terms", where);
  if (!terms.is_array()) parse_fail(where, "\"terms\" must be an array");
  Polynomial p(n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tw = where + ", term " + std::to_string(i);
    const ordered_json& exps = field(terms[i], "exponents", tw);
    if (!exps.is_array() || static_cast<int>(exps.size()) != n)
      parse_fail(tw, "\"exponents\" must hold " + std::to_string(n) +
                         " entries");
    std::vector<std::uint32_t> e;
    e.reserve(exps.size());
    for (const auto& x : exps) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
        parse_fail(tw, "exponents must be non-negative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    p.add_term(Monomial(std::move(e)), number_field(terms[i], "coefficient", tw));
  }
  return p;
}

Polynomial load_polynomial(const std::filesystem::path& path, int n) {
  return polynomial_from_json(read_json(path), n, path.string());
}

ordered_json schedule_json(const DegreeSchedule& schedule) {
  ordered_json out;
  out["deltas"] = schedule.deltas;
  out["s"] = schedule.s;
  out["total_degree"] = schedule.total_degree;
  out["cn"] = schedule.cn;
  return out;
}

ordered_json cell_table_json(
    const CellTable& table, std::span<const Family> families,
    std::span<const std::vector<std::size_t>> on_zero) {
  ordered_json patterns = ordered_json::array();
  for (std::size_t alpha = 0; alpha < table.pattern_count(); ++alpha)
    patterns.push_back(
        SignPattern{static_cast<std::uint32_t>(alpha), table.s}.to_string());
  ordered_json fams = ordered_json::array();
  for (std::size_t i = 0; i < table.family_count(); ++i) {
    ordered_json rec;
    if (i < families.size()) rec["name"] = families[i].name();
    rec["counts"] = table.counts[i];
    rec["total"] = table.family_total(i);
    if (i < on_zero.size())
      rec["on_zero_set"] = on_zero[i];
    fams.push_back(std::move(rec));
  }
  ordered_json out;
  out["s"] = table.s;
  out["patterns"] = std::move(patterns);
  out["families"] = std::move(fams);
  return out;
}

ordered_json bound_report_json(const BoundReport& report) {
  ordered_json fams = ordered_json::array();
  for (const FamilyBoundReport& fr : report.families) {
    ordered_json rec;
    rec["name"] = fr.family;
    rec["kind"] = fr.point_family ? "points" : "varieties";
    rec["size"] = fr.size;
    rec["max_cell_count"] = fr.max_cell_count;
    if (fr.point_family) {
      rec["cap"] = fr.cap;
      rec["within_cap"] = fr.within_cap;
      rec["ratio"] = fr.ratio;
      rec["cn"] = fr.cn;
    } else {
      rec["max_runs"] = fr.max_runs;
      rec["run_bound"] = fr.run_bound;
      rec["degenerate_curves"] = fr.degenerate_curves;
    }
    fams.push_back(std::move(rec));
  }
  ordered_json out;
  out["families"] = std::move(fams);
  out["all_within_caps"] = report.all_within_caps;
  return out;
}

double count_residual(const CellTable& table) {
  const std::int64_t cells =
      static_cast<std::int64_t>(std::size_t{1} << table.s);
  std::int64_t num = 0;
  for (std::size_t i = 0; i < table.family_count(); ++i) {
    const std::int64_t total = table.family_total(i);
    for (std::int64_t c : table.counts[i])
      num = std::max(num, std::abs(c * cells - total));
  }
  return static_cast<double>(num) / static_cast<double>(cells);
}

void write_report(const std::filesystem::path& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Parse, "cannot open " + path.string() +
                                      " for writing");
  out << doc.dump(2) << '\n';
}

ordered_json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  ordered_json doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(ErrorKind::Parse, path.string() + ": invalid JSON");
  return doc;
}

void write_raster(const std::filesystem::path& csv_path,
                  std::span<const Polynomial> polys, const RasterSpec& spec,
                  double tau) {
  if (polys.empty())
    throw std::invalid_argument("write_raster: needs polynomials");
  for (const Polynomial& p : polys)
    if (p.dim() != 2)
      throw std::invalid_argument("write_raster: polynomials must be planar");
  if (spec.resolution < 2)
    throw std::invalid_argument("write_raster: resolution must be >= 2");

  std::ofstream out(csv_path);
  if (!out)
    throw Error(ErrorKind::Parse,
                "cannot open " + csv_path.string() + " for writing");
  const int r = spec.resolution;
  Point x(2);
  for (int row = 0; row < r; ++row) {
    x[1] = spec.ymin + (spec.ymax - spec.ymin) * row / double(r - 1);
    std::string line;
    for (int col = 0; col < r; ++col) {
      x[0] = spec.xmin + (spec.xmax - spec.xmin) * col / double(r - 1);
      int id = 0;
      for (std::size_t l = 0; l < polys.size(); ++l) {
        const Sign sg = sign_region(polys[l], x, tau);
        if (sg == Sign::Zero) {
          id = -1;
          break;
        }
        if (sg == Sign::Neg) id |= 1 << l;
      }
      if (col) line.push_back(',');
      line += std::to_string(id);
    }
    out << line << '\n';
  }

  ordered_json meta;
  meta["xmin"] = spec.xmin;
  meta["xmax"] = spec.xmax;
  meta["ymin"] = spec.ymin;
  meta["ymax"] = spec.ymax;
  meta["resolution"] = r;
  meta["rows"] = "y ascending, x ascending within a row, grid nodes inclusive";
  meta["id"] = "sum of alpha_l * 2^(l-1); -1 inside a tau band";
  meta["s"] = static_cast<int>(polys.size());
  meta["tau"] = tau;
  write_report(csv_path.string() + ".meta.json", meta);
}

}  // namespace polypart
