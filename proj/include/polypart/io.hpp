// JSON ingestion of family documents, report assembly, and raster export.
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "polypart/partition.hpp"
#include "polypart/phi_map.hpp"
#include "polypart/variety.hpp"

namespace polypart {

using ordered_json = nlohmann::ordered_json;

struct InputData {
  int n = 0;
  std::vector<Family> families;
};

// Parses {"n": ..., "families": [...]}; tau validates implicit seeds.
// Malformed input raises ErrorKind::Parse naming the offending record.
InputData parse_families(const ordered_json& doc, double tau);
InputData load_families(const std::filesystem::path& path, double tau);

// {"n": ..., "terms": [{"exponents": [...], "coefficient": ...}, ...]} with
// terms in graded lex order.
ordered_json polynomial_json(const Polynomial& p);
Polynomial polynomial_from_json(const ordered_json& record, int n,
                                const std::string& where);
Polynomial load_polynomial(const std::filesystem::path& path, int n);

ordered_json schedule_json(const DegreeSchedule& schedule);
ordered_json cell_table_json(const CellTable& table,
                             std::span<const Family> families,
                             std::span<const std::vector<std::size_t>> on_zero);
ordered_json bound_report_json(const BoundReport& report);

// Largest deviation of any cell count from its family mean, in count units.
double count_residual(const CellTable& table);

// Serializes with two-space indentation and a trailing newline; reports are
// byte-identical for identical inputs, so no timestamps or durations belong
// in them.
void write_report(const std::filesystem::path& path, const ordered_json& doc);
ordered_json read_json(const std::filesystem::path& path);

struct RasterSpec {
  double xmin = 0.0, xmax = 1.0;
  double ymin = 0.0, ymax = 1.0;
  int resolution = 256;  // grid nodes per axis, endpoints included
};

// CSV of sign-pattern ids over the grid (-1 inside a tau band), row by row
// with y ascending, plus a sidecar <path>.meta.json describing the layout.
// Every polynomial must be bivariate.
void write_raster(const std::filesystem::path& csv_path,
                  std::span<const Polynomial> polys, const RasterSpec& spec,
                  double tau);

}  // namespace polypart
