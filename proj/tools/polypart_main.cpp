// Batch front-end: ingest family documents, run the partition / phi-search /
// dickson / crossing commands, and emit reports and rasters.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polypart/errors.hpp"
#include "polypart/f2_dickson.hpp"
#include "polypart/io.hpp"
#include "polypart/partition.hpp"
#include "polypart/phi_map.hpp"
#include "polypart/schedule.hpp"

namespace {

using polypart::ordered_json;

ordered_json params_json(const polypart::PartitionParams& params) {
  ordered_json out;
  out["n"] = params.n;
  out["j"] = params.j;
  out["D"] = params.D;
  return out;
}

ordered_json search_json(const polypart::SearchConfig& config) {
  ordered_json out;
  out["restarts"] = config.restarts;
  out["iters_per_stage"] = config.iters_per_stage;
  out["sigma_factors"] = config.sigma_factors;
  out["initial_step"] = config.initial_step;
  out["refine_iters"] = config.refine_iters;
  out["max_threads"] = config.max_threads;
  return out;
}

ordered_json phi_config_json(const polypart::PhiSearchConfig& config) {
  ordered_json out;
  out["restarts"] = config.restarts;
  out["iters_per_stage"] = config.iters_per_stage;
  out["sigma_factors"] = config.sigma_factors;
  out["initial_step"] = config.initial_step;
  return out;
}

ordered_json stages_json(const polypart::PartitionResult& result) {
  ordered_json stages = ordered_json::array();
  for (const polypart::StageInfo& info : result.stages) {
    ordered_json rec;
    rec["ell"] = info.ell;
    rec["method"] = info.method;
    rec["attempts"] = info.attempts;
    rec["perturbed"] = info.perturbed;
    stages.push_back(std::move(rec));
  }
  return stages;
}

struct PartitionOptions {
  std::string input;
  std::string out;
  std::string raster;
  std::vector<double> raster_box = {0.0, 1.0, 0.0, 1.0};
  int resolution = 256;
  int degree = 1;
  int n = 0;  // 0: take from the input document
  int j = 0;
  std::uint64_t seed = 0;
  double tau = polypart::kDefaultTau;
  polypart::SearchConfig search;
};

int run_partition(const PartitionOptions& opt) {
  const polypart::InputData input =
      polypart::load_families(opt.input, opt.tau);
  if (opt.n != 0 && opt.n != input.n)
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "--n disagrees with the input document");

  // point families get partitioned; curve families are only counted per cell
  // and checked against the crossing bound afterwards
  std::vector<polypart::Family> point_families;
  for (const polypart::Family& fam : input.families)
    if (fam.all_points()) point_families.push_back(fam);
  if (point_families.empty())
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "partition needs at least one family of points");
  if (opt.j != 0 && opt.j != static_cast<int>(point_families.size()))
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "--j disagrees with the number of point families");
  const polypart::PartitionParams params{
      input.n, static_cast<int>(point_families.size()), opt.degree};
  if (!opt.raster.empty() && input.n != 2)
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "raster output needs n = 2");
  const polypart::DegreeSchedule schedule = polypart::compute_schedule(params);

  polypart::PartitionResult result;
  std::string status = "ok";
  std::string error_msg;
  int exit_status = 0;
  try {
    result = polypart::partition_points(point_families, params, opt.seed,
                                        opt.tau, opt.search);
  } catch (const polypart::PartitionSearchError& err) {
    result = err.partial;
    status = "search_failed";
    error_msg = err.what();
    exit_status = polypart::exit_code(err.kind());
  }

  // the driver tables only the partitioned families; recount all of them
  if (result.polys.empty()) {
    polypart::CellTable table;
    table.s = 0;
    for (const polypart::Family& fam : input.families)
      table.counts.push_back({static_cast<std::int64_t>(fam.size())});
    result.cell_table = std::move(table);
  } else {
    result.cell_table =
        polypart::count_cells(input.families, result.polys, opt.tau);
  }
  result.on_zero_set =
      polypart::on_zero_indices(input.families, result.polys, opt.tau);

  ordered_json bounds;
  try {
    bounds = polypart::bound_report_json(
        polypart::verify_bounds(result, input.families, params));
  } catch (const polypart::BoundViolationError& err) {
    bounds = polypart::bound_report_json(err.report);
    if (status == "ok") {
      status = "bound_violation";
      error_msg = err.what();
      exit_status = polypart::exit_code(err.kind());
    }
  }

  ordered_json report;
  report["command"] = "partition";
  report["input"] = opt.input;
  report["params"] = params_json(params);
  report["seed"] = opt.seed;
  report["tau"] = opt.tau;
  report["search"] = search_json(opt.search);
  report["status"] = status;
  if (!error_msg.empty()) report["error"] = error_msg;
  report["schedule"] = polypart::schedule_json(schedule);
  report["completed_stages"] = result.schedule.s;
  report["stages"] = stages_json(result);
  ordered_json polys = ordered_json::array();
  for (const polypart::Polynomial& p : result.polys)
    polys.push_back(polypart::polynomial_json(p));
  report["polynomials"] = std::move(polys);
  report["product_degree"] = result.product_degree;
  report["cell_table"] = polypart::cell_table_json(
      result.cell_table, input.families, result.on_zero_set);
  report["residual"] = polypart::count_residual(result.cell_table);
  report["bounds"] = std::move(bounds);

  if (!opt.out.empty()) polypart::write_report(opt.out, report);
  else std::cout << report.dump(2) << '\n';

  if (!opt.raster.empty()) {
    if (result.polys.empty()) {
      std::cerr << "# raster skipped: the partition has no polynomials\n";
    } else {
      polypart::RasterSpec spec;
      spec.xmin = opt.raster_box[0];
      spec.xmax = opt.raster_box[1];
      spec.ymin = opt.raster_box[2];
      spec.ymax = opt.raster_box[3];
      spec.resolution = opt.resolution;
      polypart::write_raster(opt.raster, result.polys, spec, opt.tau);
    }
  }
  return exit_status;
}

struct PhiOptions {
  std::string input;
  std::string out;
  int degree = 1;
  int n = 0;
  int j = 0;
  std::uint64_t seed = 0;
  double tau = polypart::kDefaultTau;
  polypart::PhiSearchConfig config;
};

int run_phi_search(const PhiOptions& opt) {
  const polypart::InputData input =
      polypart::load_families(opt.input, opt.tau);
  if (opt.n != 0 && opt.n != input.n)
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "--n disagrees with the input document");
  if (opt.j != 0 && opt.j != static_cast<int>(input.families.size()))
    throw polypart::Error(polypart::ErrorKind::Parse,
                          "--j disagrees with the input family count");
  const polypart::PartitionParams params{
      input.n, static_cast<int>(input.families.size()), opt.degree};
  const polypart::DegreeSchedule schedule = polypart::compute_schedule(params);
  const polypart::PhiSearchResult found = polypart::search_phi_zero(
      input.families, params, opt.seed, opt.tau, opt.config);

  ordered_json report;
  report["command"] = "phi-search";
  report["input"] = opt.input;
  report["params"] = params_json(params);
  report["seed"] = opt.seed;
  report["tau"] = opt.tau;
  report["search"] = phi_config_json(opt.config);
  report["schedule"] = polypart::schedule_json(schedule);
  report["residual"] = found.residual;
  report["trace"] = found.trace;
  report["coefficients"] = found.y.coefficients;
  ordered_json polys = ordered_json::array();
  for (const polypart::Polynomial& p : found.y.polynomials())
    polys.push_back(polypart::polynomial_json(p));
  report["polynomials"] = std::move(polys);
  const polypart::CellTable table = polypart::count_cells(
      input.families, found.y.polynomials(), opt.tau);
  report["cell_table"] = polypart::cell_table_json(table, input.families, {});

  if (!opt.out.empty()) polypart::write_report(opt.out, report);
  else std::cout << report.dump(2) << '\n';
  return 0;
}

struct DicksonOptions {
  int s = 1;
  int j = 1;
  std::uint64_t budget = polypart::kDefaultTermBudget;
  std::string out;
};

int run_dickson(const DicksonOptions& opt) {
  const polypart::ObstructionReport rep =
      polypart::obstruction_check(opt.s, opt.j, opt.budget);
  polypart::F2Poly witness_poly(opt.s);
  witness_poly.toggle(rep.witness);

  std::cout << "s=" << rep.s << " j=" << rep.j << '\n'
            << "nonzero=" << (rep.nonzero ? "true" : "false") << '\n'
            << "witness_present=" << (rep.witness_present ? "true" : "false")
            << '\n'
            << "witness=" << witness_poly.to_string() << '\n'
            << "surviving_terms=" << rep.surviving_terms << '\n';
  if (rep.surviving_terms <= 64 && !rep.reduced.is_zero())
    std::cout << "reduced=" << rep.reduced.to_string() << '\n';

  if (!opt.out.empty()) {
    const polypart::MonomialIdeal ideal =
        polypart::MonomialIdeal::sphere_product_index(opt.s, opt.j);
    ordered_json report;
    report["command"] = "dickson";
    report["s"] = rep.s;
    report["j"] = rep.j;
    report["ideal_exponents"] = ideal.thresholds;
    report["nonzero"] = rep.nonzero;
    report["witness_present"] = rep.witness_present;
    report["witness"] = witness_poly.to_string();
    report["surviving_terms"] = rep.surviving_terms;
    if (rep.surviving_terms <= 4096) {
      ordered_json terms = ordered_json::array();
      for (const auto& t : rep.reduced.terms()) terms.push_back(t);
      report["reduced_terms"] = std::move(terms);
    }
    polypart::write_report(opt.out, report);
  }
  return 0;
}

struct CrossingOptions {
  std::string input;
  std::string poly;
  std::string out;
  int resolution = 1024;
  double tau = polypart::kDefaultTau;
};

int run_crossing(const CrossingOptions& opt) {
  const polypart::InputData input =
      polypart::load_families(opt.input, opt.tau);
  const polypart::Polynomial poly =
      polypart::load_polynomial(opt.poly, input.n);

  ordered_json fams = ordered_json::array();
  for (const polypart::Family& fam : input.families) {
    ordered_json curves = ordered_json::array();
    int max_runs = 0;
    for (std::size_t g = 0; g < fam.size(); ++g) {
      const polypart::Variety& gamma = fam.varieties()[g];
      if (gamma.kind() != polypart::VarietyKind::Parametric || gamma.k() != 1)
        continue;
      const polypart::CrossingCount cc =
          polypart::crossing_count(gamma, poly, opt.resolution);
      ordered_json rec;
      rec["index"] = g;
      rec["runs"] = cc.runs;
      rec["degenerate"] = cc.degenerate;
      rec["crossings"] = cc.crossings;
      curves.push_back(std::move(rec));
      max_runs = std::max(max_runs, cc.runs);
    }
    ordered_json frec;
    frec["name"] = fam.name();
    frec["curves"] = std::move(curves);
    frec["max_runs"] = max_runs;
    fams.push_back(std::move(frec));
  }

  ordered_json report;
  report["command"] = "crossing";
  report["input"] = opt.input;
  report["polynomial"] = polypart::polynomial_json(poly);
  report["degree"] = poly.degree();
  report["run_bound"] = poly.degree() + 1;
  report["resolution"] = opt.resolution;
  report["families"] = std::move(fams);

  if (!opt.out.empty()) polypart::write_report(opt.out, report);
  else std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-family polynomial partitioning toolkit"};
  app.require_subcommand(1);

  PartitionOptions part;
  CLI::App* partition = app.add_subcommand(
      "partition", "Run the stagewise partition on point families");
  partition->add_option("--input", part.input, "Family document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  partition->add_option("--degree", part.degree, "Total degree budget D")
      ->required();
  partition->add_option("--seed", part.seed, "Search seed");
  partition->add_option("--tau", part.tau, "Zero-band half width");
  partition->add_option("--n", part.n, "Expected ambient dimension");
  partition->add_option("--j", part.j, "Expected number of point families");
  partition->add_option("--out", part.out, "Report path (stdout when empty)");
  partition->add_option("--restarts", part.search.restarts, "Search restarts");
  partition->add_option("--iters", part.search.iters_per_stage,
                        "Iterations per annealing stage");
  partition->add_option("--threads", part.search.max_threads,
                        "Worker cap (0: POLYPART_THREADS or hardware)");
  partition->add_option("--raster", part.raster, "Raster CSV path (n = 2)");
  partition
      ->add_option("--raster-box", part.raster_box,
                   "Raster bounds: xmin xmax ymin ymax")
      ->expected(4);
  partition->add_option("--resolution", part.resolution,
                        "Raster grid nodes per axis");

  PhiOptions phi;
  CLI::App* phi_search = app.add_subcommand(
      "phi-search", "Search for a tuple equalizing all cell counts");
  phi_search->add_option("--input", phi.input, "Family document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  phi_search->add_option("--degree", phi.degree, "Total degree budget D")
      ->required();
  phi_search->add_option("--seed", phi.seed, "Search seed");
  phi_search->add_option("--tau", phi.tau, "Zero-band half width");
  phi_search->add_option("--n", phi.n, "Expected ambient dimension");
  phi_search->add_option("--j", phi.j, "Expected family count");
  phi_search->add_option("--out", phi.out, "Report path (stdout when empty)");
  phi_search->add_option("--restarts", phi.config.restarts, "Search restarts");
  phi_search->add_option("--iters", phi.config.iters_per_stage,
                         "Iterations per annealing stage");

  DicksonOptions dickson;
  CLI::App* dickson_cmd = app.add_subcommand(
      "dickson", "Certify the Dickson-power obstruction over F_2");
  dickson_cmd->add_option("--s", dickson.s, "Number of stages")->required();
  dickson_cmd->add_option("--j", dickson.j, "Number of families")->required();
  dickson_cmd->add_option("--budget", dickson.budget, "Term budget");
  dickson_cmd->add_option("--out", dickson.out, "Report path (optional)");

  CrossingOptions crossing;
  CLI::App* crossing_cmd = app.add_subcommand(
      "crossing", "Count sign runs of a polynomial along curve families");
  crossing_cmd->add_option("--input", crossing.input, "Family document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  crossing_cmd->add_option("--poly", crossing.poly, "Polynomial record (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  crossing_cmd->add_option("--resolution", crossing.resolution,
                           "Samples along each curve");
  crossing_cmd->add_option("--tau", crossing.tau, "Zero-band half width");
  crossing_cmd->add_option("--out", crossing.out,
                           "Report path (stdout when empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int status = 1;
  try {
    if (partition->parsed()) status = run_partition(part);
    else if (phi_search->parsed()) status = run_phi_search(phi);
    else if (dickson_cmd->parsed()) status = run_dickson(dickson);
    else if (crossing_cmd->parsed()) status = run_crossing(crossing);
  } catch (const polypart::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return polypart::exit_code(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - started;
  // timing goes to stderr so report files stay byte-identical across runs
  std::cerr << "# completed in " << elapsed.count() << " s\n";
  return status;
}
