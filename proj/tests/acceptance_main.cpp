// Gate suite: runs the seven acceptance checks and prints one verdict line
// per criterion. Exit status 0 means every requested criterion passed.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polypart/f2_dickson.hpp"
#include "polypart/ham_sandwich.hpp"
#include "polypart/io.hpp"
#include "polypart/partition.hpp"
#include "polypart/phi_map.hpp"
#include "polypart/polynomial.hpp"
#include "polypart/schedule.hpp"
#include "polypart/variety.hpp"
#include "../src/rng.hpp"

namespace {

using namespace polypart;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Family uniform_family(const std::string& name, int n, int count,
                      std::uint64_t seed) {
  detail::Rng rng(seed);
  std::vector<Variety> pts;
  pts.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    Point p(static_cast<std::size_t>(n));
    for (double& c : p) c = rng.uniform();
    pts.push_back(Variety::point(std::move(p)));
  }
  return Family(name, std::move(pts));
}

// the partition instance shared by criteria 3, 6 and 7
constexpr std::uint64_t kRedSeed = 20260823;
constexpr std::uint64_t kBlueSeed = 20260824;
constexpr std::uint64_t kCutSeed = 7;

std::vector<Family> shared_families() {
  return {uniform_family("red", 2, 64, kRedSeed),
          uniform_family("blue", 2, 64, kBlueSeed)};
}

// 1: the schedule inequalities hold exactly across the stated grids
Outcome criterion1() {
  Outcome out;
  const auto start = Clock::now();

  for (int n = 1; n <= 4 && out.pass; ++n)
    for (int j = 1; j <= 4 && out.pass; ++j)
      for (int ell = 1; ell <= 12 && out.pass; ++ell) {
        const int d = compute_delta(ell, j, n);
        const exact::u128 target = exact::checked_shl(
            exact::checked_mul(exact::factorial(n), exact::u128(j)), ell - 1);
        const std::string at = "(n=" + std::to_string(n) +
                               ", j=" + std::to_string(j) +
                               ", l=" + std::to_string(ell) + ")";
        out.expect(exact::compare_pow(exact::u128(d), n, target) >= 0,
                   "lower bound fails at " + at);
        out.expect(
            exact::compare_pow(exact::u128(d), n, exact::checked_shl(target, n)) < 0,
            "upper bound fails at " + at);
        out.expect(d == 1 || exact::compare_pow(exact::u128(d - 1), n, target) < 0,
                   "delta not minimal at " + at);
      }

  for (int n = 1; n <= 3 && out.pass; ++n) {
    const double cn = cell_bound_constant(n);
    for (int j = 1; j <= 3 && out.pass; ++j)
      for (int D = 1; D <= 200 && out.pass; ++D) {
        const auto sched = compute_schedule({n, j, D});
        const std::string at = "(n=" + std::to_string(n) +
                               ", j=" + std::to_string(j) +
                               ", D=" + std::to_string(D) + ")";
        out.expect(sched.total_degree <= D, "schedule overshoots " + at);
        out.expect(sched.total_degree + compute_delta(sched.s + 1, j, n) > D,
                   "stage count not maximal at " + at);
        out.expect(std::ldexp(1.0, -sched.s) <
                       cn * j / std::pow(double(D), double(n)),
                   "cell-count inequality fails at " + at);
      }
  }

  const double elapsed = seconds_since(start);
  out.expect(elapsed < 1.0,
             "took " + std::to_string(elapsed) + " s, limit 1 s");
  return out;
}

// 2: both Dickson constructions agree and the obstruction survives reduction
Outcome criterion2() {
  Outcome out;
  const auto start = Clock::now();

  for (int s = 1; s <= 5 && out.pass; ++s)
    out.expect(dickson_product(s) == dickson_symmetric(s),
               "product and symmetric forms differ at s=" + std::to_string(s));

  // the worked reduction: u1^2 u2 + u1 u2^2 mod <u1^2, u2^3> = u1 u2^2
  F2Poly hand(2);
  hand.toggle({2, 1});
  hand.toggle({1, 2});
  F2Poly expected(2);
  expected.toggle({1, 2});
  out.expect(reduce_mod_ideal(hand, MonomialIdeal{{2, 3}}) == expected,
             "hand-checked reduction mismatch");

  for (int s = 1; s <= 4 && out.pass; ++s)
    for (int j = 1; j <= 3 && out.pass; ++j) {
      const auto report = obstruction_check(s, j);
      const std::string at = "(s=" + std::to_string(s) +
                             ", j=" + std::to_string(j) + ")";
      out.expect(report.nonzero, "reduction vanished at " + at);
      out.expect(report.witness_present, "witness monomial missing at " + at);
      out.expect(report.surviving_terms >= 1, "no surviving terms at " + at);
    }

  const double elapsed = seconds_since(start);
  out.expect(elapsed < 10.0,
             "took " + std::to_string(elapsed) + " s, limit 10 s");
  return out;
}

void check_partition_instance(Outcome& out, std::vector<Family> families,
                              const PartitionParams& params,
                              const std::vector<int>& want_deltas,
                              std::int64_t cap, const std::string& label) {
  try {
    const auto result = partition_points(families, params, kCutSeed);
    out.expect(result.schedule.deltas == want_deltas,
               label + ": unexpected schedule");
    out.expect(result.cell_table.pattern_count() ==
                   std::size_t(1) << result.schedule.s,
               label + ": wrong cell count");
    for (std::size_t i = 0; i < families.size(); ++i)
      out.expect(result.cell_table.max_count(i) <= cap,
                 label + ": family " + families[i].name() +
                     " has a cell above " + std::to_string(cap));
    out.expect(result.product_degree <= params.D,
               label + ": degree budget exceeded");
    (void)verify_bounds(result, families, params);
  } catch (const Error& e) {
    out.expect(false, label + ": " + e.what());
  }
}

// 3: the colored partition halves both point families at every stage
Outcome criterion3() {
  Outcome out;
  const auto start = Clock::now();

  check_partition_instance(out, shared_families(), {2, 2, 12}, {2, 3, 4}, 8,
                           "two families");
  check_partition_instance(out, {uniform_family("gray", 2, 128, 20260825)},
                           {2, 1, 9}, {2, 2, 3}, 16, "single family");

  const double elapsed = seconds_since(start);
  out.expect(elapsed < 120.0,
             "took " + std::to_string(elapsed) + " s, limit 2 min");
  return out;
}

// 4: searched cuts satisfy the oracle validator; on a line they match the
// median certificate
Outcome criterion4() {
  Outcome out;
  detail::Rng rng(1234);

  for (int inst = 0; inst < 100 && out.pass; ++inst) {
    const int t = 1 + inst % 3;
    std::vector<PointSet> sets(static_cast<std::size_t>(t));
    for (auto& set : sets) {
      const std::size_t m = 1 + rng.index(std::size_t(32 / t));
      for (std::size_t i = 0; i < m; ++i) {
        Point p(static_cast<std::size_t>(t));
        for (double& c : p) c = rng.uniform(-1.0, 1.0);
        set.push_back(std::move(p));
      }
    }

    const std::string at = "instance " + std::to_string(inst);
    try {
      const auto oracle = bisect_exact(sets, kDefaultTau);
      out.expect(oracle.certificate.valid(), at + ": oracle cut invalid");
      const auto searched =
          bisect_search(sets, 9000 + std::uint64_t(inst), {}, kDefaultTau);
      out.expect(searched.certificate.valid(), at + ": searched cut invalid");

      if (t == 1) {
        const int m = int(sets[0].size());
        const SideCounts median{m / 2, m / 2, m % 2};
        const SideCounts& got = searched.certificate.sets[0];
        out.expect(got.pos == median.pos && got.neg == median.neg &&
                       got.on == median.on,
                   at + ": cut does not match the median certificate");
      }
    } catch (const Error& e) {
      out.expect(false, at + ": " + e.what());
    }
  }
  return out;
}

// 5: the cell-count map commutes with the sign-flip action
Outcome criterion5() {
  Outcome out;
  detail::Rng rng(777);

  for (int inst = 0; inst < 200 && out.pass; ++inst) {
    const int n = 1 + inst % 3;
    const int j = 1 + inst % 2;
    const int s = 1 + inst % 3;
    std::vector<int> deltas;
    for (int ell = 1; ell <= s; ++ell)
      deltas.push_back(compute_delta(ell, j, n));

    const auto y = TupleY::random(n, j, deltas, rng.bits());
    const auto beta = std::uint32_t(rng.index(std::size_t(1) << s));

    // resample until no witness sits inside a tau band
    bool checked = false;
    for (int attempt = 0; attempt < 8 && !checked; ++attempt) {
      std::vector<Family> families;
      for (int i = 0; i < j; ++i) {
        std::vector<Variety> pts;
        const int m = 3 + int(rng.index(8));
        for (int g = 0; g < m; ++g) {
          Point p(static_cast<std::size_t>(n));
          for (double& c : p) c = rng.uniform(-1.0, 1.0);
          pts.push_back(Variety::point(std::move(p)));
        }
        families.emplace_back("f" + std::to_string(i), std::move(pts));
      }
      if (!generic_position(y.polynomials(), families, kDefaultTau)) continue;
      checked = true;
      out.expect(check_equivariance(y, families, beta, kDefaultTau),
                 "equivariance fails at instance " + std::to_string(inst));
    }
    out.expect(checked, "no generic instance found for " + std::to_string(inst));
  }
  return out;
}

// 6: along random lines the partition product changes sign at most degree
// many times
Outcome criterion6() {
  Outcome out;

  const auto families = shared_families();
  Polynomial product;
  try {
    product = partition_points(families, {2, 2, 12}, kCutSeed).product();
  } catch (const Error& e) {
    out.expect(false, std::string("partition failed: ") + e.what());
    return out;
  }
  out.expect(product.degree() <= 9, "product degree above 9");

  detail::Rng rng(4321);
  for (int inst = 0; inst < 100 && out.pass; ++inst) {
    const Point base{rng.uniform(), rng.uniform()};
    const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const Point dir{std::cos(angle), std::sin(angle)};
    const auto line = Variety::line(base, dir, -2.0, 2.0, 65);
    const auto cc = crossing_count(line, product, 512);
    out.expect(cc.runs <= product.degree() + 1,
               "line " + std::to_string(inst) + " sees " +
                   std::to_string(cc.runs) + " runs, bound " +
                   std::to_string(product.degree() + 1));
    out.expect(!cc.degenerate, "line " + std::to_string(inst) +
                                   " lies inside the zero set");
  }
  return out;
}

// 7: rerunning the partition through the command line reproduces the report
// byte for byte
Outcome criterion7(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.expect(false, "no --cli path given");
    return out;
  }
  const auto start = Clock::now();

  const auto dir = fs::temp_directory_path() / "polypart_acceptance";
  fs::create_directories(dir);
  const auto input = dir / "families.json";
  const auto report_a = dir / "report_a.json";
  const auto report_b = dir / "report_b.json";

  ordered_json doc;
  doc["n"] = 2;
  doc["families"] = ordered_json::array();
  for (const Family& fam : shared_families()) {
    ordered_json rec;
    rec["name"] = fam.name();
    rec["kind"] = "points";
    ordered_json pts = ordered_json::array();
    for (const Variety& gamma : fam.varieties())
      pts.push_back(gamma.coordinates());
    rec["points"] = std::move(pts);
    doc["families"].push_back(std::move(rec));
  }
  write_report(input, doc);

  const auto run = [&](const fs::path& report) {
    const std::string command = "\"" + cli + "\" partition --input \"" +
                                input.string() + "\" --degree 12 --seed 7" +
                                " --out \"" + report.string() + "\" 2>/dev/null";
    return std::system(command.c_str());
  };

  out.expect(run(report_a) == 0, "first run exited nonzero");
  out.expect(run(report_b) == 0, "second run exited nonzero");

  if (out.pass) {
    const auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    const std::string a = slurp(report_a), b = slurp(report_b);
    out.expect(!a.empty(), "first report is empty");
    out.expect(a == b, "reports differ between runs");

    const auto parsed = read_json(report_a);
    out.expect(parsed["status"] == "ok", "partition run did not succeed");
  }

  const double elapsed = seconds_since(start);
  out.expect(elapsed < 150.0,
             "took " + std::to_string(elapsed) + " s, limit 150 s");
  return out;
}

const char* kLabels[7] = {
    "schedule inequalities",  "dickson obstruction",
    "colored point partition", "oracle equivalence",
    "equivariance",           "crossing bound",
    "determinism",
};

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) which = std::atoi(argv[++i]);
    else if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    else {
      std::cerr << "usage: polypart_acceptance [--criterion N] [--cli PATH]\n";
      return 1;
    }
  }
  if (which < 0 || which > 7) {
    std::cerr << "criterion must lie in 1..7 (0 runs all)\n";
    return 1;
  }

  bool all_pass = true;
  for (int k = 1; k <= 7; ++k) {
    if (which != 0 && which != k) continue;
    Outcome out;
    switch (k) {
      case 1: out = criterion1(); break;
      case 2: out = criterion2(); break;
      case 3: out = criterion3(); break;
      case 4: out = criterion4(); break;
      case 5: out = criterion5(); break;
      case 6: out = criterion6(); break;
      case 7: out = criterion7(cli); break;
    }
    std::cout << "criterion " << k << " (" << kLabels[k - 1] << "): "
              << (out.pass ? "PASS" : "FAIL: " + out.detail) << "\n";
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
