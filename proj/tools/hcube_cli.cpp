// hcube: command-line front end.
//
// Every subcommand writes one JSON document to stdout. Exit codes:
//   0  success / the checked bound holds
//   1  a checked inequality or identity was violated
//   2  usage, parse, I/O or guard error

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hcube/core.hpp"
#include "hcube/counting.hpp"
#include "hcube/io.hpp"
#include "hcube/lemma_lab.hpp"
#include "hcube/report.hpp"
#include "hcube/transform.hpp"
#include "hcube/verifier.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

constexpr double kLemmaTol = 1e-9;

void emit(const hcube::Json& j) { std::cout << j.dump(2) << '\n'; }

hcube::Method parse_method(const std::string& name) {
  if (name == "fast") return hcube::Method::fast;
  if (name == "brute") return hcube::Method::brute;
  throw hcube::UsageError("unknown method '" + name + "' (expected fast|brute)");
}

hcube::SetFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file '" + path + "'");
  return hcube::parse_family(in);
}

struct Options {
  int n = 0;
  int m = 0;
  int k = 0;
  int t = 0;
  int grid = 1000;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string family;
  std::string functions;
  std::string method = "fast";
  std::string distribution = "uniform";
  std::string write_family;
  double density = 0.5;
  bool signed_values = false;
  bool witness = false;
  bool table = false;
};

int run_exponent(const Options& o) {
  const auto params = hcube::exponent(o.n);
  emit(hcube::to_json(params));
  if (o.table) std::cerr << "n=" << params.n << "  p_n=" << params.p << "  c(n)=n/p_n=" << params.c << '\n';
  return kOk;
}

int run_count(const Options& o) {
  const auto family = read_family(o.family);
  const auto rep = hcube::bound_report(family, o.n, parse_method(o.method));
  auto j = hcube::to_json(rep, o.method.c_str());
  j["m"] = family.m();
  emit(j);
  if (o.table) std::cerr << "|X|=" << rep.family_size << "  count=" << rep.count << "  holds=" << rep.holds << '\n';
  return rep.holds ? kOk : kViolation;
}

int run_verify(const Options& o) {
  hcube::VerifyReport rep;
  if (o.witness) {
    if (o.trials < 1) throw hcube::DomainError("trials must be >= 1");
    rep = hcube::run_witness(o.n, o.m);
  } else {
    hcube::TrialConfig config;
    config.n = o.n;
    config.m = o.m;
    config.trials = o.trials;
    config.seed = o.seed;
    config.density = o.density;
    config.signed_values = o.signed_values;
    const auto dist = hcube::parse_distribution(o.distribution);
    if (!dist) throw hcube::UsageError("unknown distribution '" + o.distribution + "'");
    config.distribution = *dist;
    rep = hcube::run_trials(config);
  }
  auto j = hcube::to_json(rep);
  j["mode"] = o.witness ? "witness" : "random";
  emit(j);
  if (o.table) std::cerr << "trials=" << rep.trials << "  max_ratio=" << rep.max_ratio << "  failures=" << rep.failures << '\n';
  return rep.failures == 0 ? kOk : kViolation;
}

int run_extremal(const Options& o) {
  const auto family = hcube::extremal_family(o.n, o.t);
  if (!o.write_family.empty()) {
    std::ofstream out(o.write_family);
    if (!out) throw std::runtime_error("cannot write '" + o.write_family + "'");
    out << hcube::serialize_family(family);
  }
  const auto rep = hcube::bound_report(family, o.n);
  hcube::Json j{{"n", o.n},
                {"t", o.t},
                {"m", family.m()},
                {"family_size", rep.family_size},
                {"count", rep.count.str()},
                {"ratio", rep.ratio ? hcube::Json(*rep.ratio) : hcube::Json(nullptr)},
                {"c", rep.exponent},
                {"holds", rep.holds}};
  emit(j);
  if (o.table) std::cerr << "m=" << family.m() << "  |X|=" << rep.family_size << "  count=" << rep.count << '\n';
  return rep.holds ? kOk : kViolation;
}

int run_lemma_solve(const Options& o) {
  const auto params = hcube::exponent(o.n);
  const auto rep = hcube::solve_critical_system(o.n, o.k, params);
  emit(hcube::to_json(rep));
  if (!rep.valid()) return kOk;
  const bool ok = rep.residual_eq1 < kLemmaTol && rep.last_value >= -kLemmaTol;
  return ok ? kOk : kViolation;
}

int run_lemma_scan(const Options& o) {
  const auto params = hcube::exponent(o.n);
  const auto scan = hcube::scan_last_value(params, o.grid);
  auto j = hcube::to_json(scan);
  j["tolerance"] = kLemmaTol;
  hcube::Json solves = hcube::Json::array();
  bool ok = scan.min_value >= -kLemmaTol;
  for (int k = 1; k < o.n; ++k) {
    const auto rep = hcube::solve_critical_system(o.n, k, params);
    if (rep.valid()) ok = ok && rep.residual_eq1 < kLemmaTol && rep.last_value >= -kLemmaTol;
    solves.push_back(hcube::to_json(rep));
  }
  j["critical_points"] = std::move(solves);
  emit(j);
  if (o.table) std::cerr << "n=" << o.n << "  min last_value=" << scan.min_value << " at k=" << scan.argmin_k << '\n';
  return ok ? kOk : kViolation;
}

int run_corner(const Options& o) {
  std::ifstream in(o.functions);
  if (!in) throw std::runtime_error("cannot open function file '" + o.functions + "'");
  const auto bundle = hcube::parse_function_file(in);
  const int n = static_cast<int>(bundle.functions.size());
  const auto params = hcube::exponent(n);
  const auto method = parse_method(o.method);
  const double lhs = hcube::corner_convolution(bundle.functions, method);
  auto check = hcube::check_main_inequality(bundle.functions, params);
  hcube::Json j{{"n", n},
                {"m", bundle.m},
                {"method", o.method},
                {"p", params.p},
                {"corner", lhs},
                {"rhs", check.rhs},
                {"ratio", check.ratio ? hcube::Json(*check.ratio) : hcube::Json(nullptr)},
                {"pass", check.pass}};
  emit(j);
  return check.pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset convolution on the Hamming cube, disjoint-union counting and sharp-exponent checks"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--table", o.table, "Also print a human-readable summary to stderr");

  auto* exponent = app.add_subcommand("exponent", "Sharp exponent p_n and c(n) = n/p_n");
  exponent->add_option("--n", o.n, "Number of functions (>= 2)")->required();

  auto* count = app.add_subcommand("count", "Count disjoint-union tuples of a family and compare with |X|^{n/p_n}");
  count->add_option("--family", o.family, "Family file")->required();
  count->add_option("--n", o.n, "Tuple length n (>= 2)")->required();
  count->add_option("--method", o.method, "fast|brute");

  auto* verify = app.add_subcommand("verify", "Random trials of the corner-convolution inequality");
  verify->add_option("--n", o.n, "Number of functions")->required();
  verify->add_option("--m", o.m, "Cube dimension (1..12)")->required();
  verify->add_option("--trials", o.trials, "Number of trials (>= 1)");
  verify->add_option("--seed", o.seed, "64-bit seed");
  verify->add_option("--distribution", o.distribution, "uniform|exponential|sparse");
  verify->add_option("--density", o.density, "Nonzero probability for the sparse distribution");
  verify->add_flag("--signed", o.signed_values, "Flip signs at random");
  verify->add_flag("--witness", o.witness, "Evaluate the equality witness instead of random trials");

  auto* extremal = app.add_subcommand("extremal", "Layered family of sizes t and (n-1)t over n*t points");
  extremal->add_option("--n", o.n, "Tuple length n")->required();
  extremal->add_option("--t", o.t, "Layer size t")->required();
  extremal->add_option("--write-family", o.write_family, "Also write the family to this file");

  auto* lemma = app.add_subcommand("lemma", "Critical-point system and final inequality of the one-dimensional lemma");
  lemma->require_subcommand(1);
  auto* solve = lemma->add_subcommand("solve", "Solve the two-value critical system for (n, k)");
  solve->add_option("--n", o.n, "n >= 2")->required();
  solve->add_option("--k", o.k, "1 <= k <= n-1")->required();
  auto* scan = lemma->add_subcommand("scan", "Grid scan of the final inequality over k and z");
  scan->add_option("--n", o.n, "n >= 2")->required();
  scan->add_option("--grid", o.grid, "Grid points per k");

  auto* corner = app.add_subcommand("corner", "Corner convolution and inequality check for a function file");
  corner->add_option("--functions", o.functions, "Function file")->required();
  corner->add_option("--method", o.method, "fast|brute");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (exponent->parsed()) return run_exponent(o);
    if (count->parsed()) return run_count(o);
    if (verify->parsed()) return run_verify(o);
    if (extremal->parsed()) return run_extremal(o);
    if (solve->parsed()) return run_lemma_solve(o);
    if (scan->parsed()) return run_lemma_scan(o);
    if (corner->parsed()) return run_corner(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
