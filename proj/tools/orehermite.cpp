// orehermite: Hermite forms of matrices of differential operators.
//
//   orehermite hermite --input FILE --algorithm {elim|linsys} --emit {h|u|both}
//                      [--verify] [--jobs N] [--json]
//   orehermite check   --input FILE --u FILE --h FILE [--json]
//   orehermite random  --n N --degd D --degt E --seed S [--unimodular-steps K]
//
// Exit status: 0 success, 1 verification failure or rank deficiency,
// 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "oreherm/oreherm.hpp"

namespace {

using nlohmann::json;
using namespace oreherm;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OreMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return parse_matrix(in);
  } catch (const ParseError& e) {
    throw UsageError("parse error in " + path + ", " + e.what());
  }
}

json matrix_json(const OreMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(print_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_json(const VerificationReport& r) {
  return {{"productOk", r.product_ok},
          {"shapeOk", r.shape_ok},
          {"unimodularOk", r.unimodular_ok},
          {"degreeBoundsOk", r.degree_bounds_ok},
          {"passed", r.passed()},
          {"details", r.details}};
}

void print_report(std::ostream& out, const VerificationReport& r) {
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "productOk: " << yn(r.product_ok) << "\n"
      << "shapeOk: " << yn(r.shape_ok) << "\n"
      << "unimodularOk: " << yn(r.unimodular_ok) << "\n"
      << "degreeBoundsOk: " << yn(r.degree_bounds_ok) << "\n";
  for (const auto& d : r.details) out << "# " << d << "\n";
  out << (r.passed() ? "PASS" : "FAIL") << "\n";
}

struct HermiteOptions {
  std::string input;
  std::string algorithm = "elim";
  std::string emit = "h";
  bool verify = false;
  unsigned jobs = 1;
  bool json = false;
};

int run_hermite(const HermiteOptions& o) {
  const OreMatrix a = read_matrix(o.input);
  if (!a.is_square()) throw UsageError("hermite needs a square matrix");
  HermiteResult r;
  LinsysStats stats;
  try {
    r = o.algorithm == "elim" ? hermite_elimination(a) : hermite_via_linsys(a, &stats, o.jobs);
  } catch (RankDeficient& e) {
    if (e.dependent_rows.empty()) {
      // the degree search cannot say which rows; elimination can
      try {
        hermite_elimination(a);
      } catch (const RankDeficient& named) {
        e = named;
      }
    }
    if (o.json)
      std::cout << json{{"error", "rank_deficient"},
                        {"message", e.what()},
                        {"dependentRows", e.dependent_rows}}
                       .dump(2)
                << "\n";
    std::cerr << "orehermite: " << e.what() << "\n";
    return kFailed;
  }

  VerificationReport rep;
  if (o.verify) rep = verify_hermite(a, r.U, r.H);

  if (o.json) {
    json doc{{"algorithm", o.algorithm},
             {"n", a.rows()},
             {"derivation", to_string(a.derivation())},
             {"diagonalDegrees", r.diag_degrees.degs}};
    if (o.emit != "u") doc["H"] = matrix_json(r.H);
    if (o.emit != "h") doc["U"] = matrix_json(r.U);
    if (o.algorithm == "linsys") {
      const SystemStats& f = stats.final_system;
      doc["probes"] = stats.probes;
      doc["probeBudget"] = stats.probe_budget;
      doc["system"] = {{"ahatRows", f.ahat_rows},   {"ahatCols", f.ahat_cols},
                       {"equations", f.equations},  {"unknowns", f.unknowns},
                       {"inputDegT", f.input_deg_t}, {"solutionDegT", f.solution_deg_t}};
    }
    if (o.verify) doc["verification"] = report_json(rep);
    std::cout << doc.dump(2) << "\n";
  } else {
    if (o.emit == "both") std::cout << "# U\n" << print_matrix(r.U) << "# H\n";
    if (o.emit == "u")
      std::cout << print_matrix(r.U);
    else
      std::cout << print_matrix(r.H);
    if (o.algorithm == "linsys")
      std::cerr << "# probes " << stats.probes << " of " << stats.probe_budget << ", system "
                << stats.final_system.ahat_rows << " x " << stats.final_system.ahat_cols << "\n";
    if (o.verify) print_report(std::cerr, rep);
  }
  return o.verify && !rep.passed() ? kFailed : kOk;
}

int run_check(const std::string& input, const std::string& upath, const std::string& hpath,
              bool as_json) {
  const OreMatrix a = read_matrix(input);
  const OreMatrix u = read_matrix(upath);
  const OreMatrix h = read_matrix(hpath);
  const VerificationReport rep = verify_hermite(a, u, h);
  if (as_json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    print_report(std::cout, rep);
  return rep.passed() ? kOk : kFailed;
}

int run_random(std::size_t n, int degd, int degt, std::uint64_t seed, std::size_t steps) {
  if (n == 0) throw UsageError("--n must be positive");
  if (degd < 0 || degt < 0) throw UsageError("--degd and --degt must be non-negative");
  OreMatrix a = random_full_rank(n, degd, degt, seed);
  if (steps > 0) a = random_unimodular(n, steps, seed) * a;
  std::cout << "# random --n " << n << " --degd " << degd << " --degt " << degt << " --seed "
            << seed;
  if (steps > 0) std::cout << " --unimodular-steps " << steps;
  std::cout << "\n" << print_matrix(a);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite normal forms of matrices of differential operators"};
  app.require_subcommand(1);

  HermiteOptions ho;
  auto* hermite = app.add_subcommand("hermite", "compute the Hermite form U A = H");
  hermite->add_option("--input", ho.input, "instance file")->required();
  hermite->add_option("--algorithm", ho.algorithm)->check(CLI::IsMember({"elim", "linsys"}));
  hermite->add_option("--emit", ho.emit)->check(CLI::IsMember({"h", "u", "both"}));
  hermite->add_flag("--verify", ho.verify, "check U A = H, shape, unimodularity and degrees");
  hermite->add_option("--jobs", ho.jobs, "concurrent degree probes (linsys)")
      ->check(CLI::Range(1u, 256u));
  hermite->add_flag("--json", ho.json);

  std::string cin_path, cu_path, ch_path;
  bool cjson = false;
  auto* check = app.add_subcommand("check", "verify a claimed decomposition");
  check->set_help_flag("--help", "print this help message and exit");  // frees --h
  check->add_option("--input", cin_path)->required();
  check->add_option("--u", cu_path)->required();
  check->add_option("--h", ch_path)->required();
  check->add_flag("--json", cjson);

  std::size_t rn = 0, steps = 0;
  int rd = 0, re = 0;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "print a seeded full-rank instance");
  random->add_option("--n", rn)->required();
  random->add_option("--degd", rd)->required();
  random->add_option("--degt", re)->required();
  random->add_option("--seed", seed)->required();
  random->add_option("--unimodular-steps", steps, "premultiply by a random unimodular matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*hermite) return run_hermite(ho);
    if (*check) return run_check(cin_path, cu_path, ch_path, cjson);
    return run_random(rn, rd, re, seed, steps);
  } catch (const ParseError& e) {
    std::cerr << "orehermite: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "orehermite: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "orehermite: " << e.what() << "\n";
    return kFailed;
  }
}
