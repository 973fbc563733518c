// Command-line front end: family ingestion, compatibility reports,
// interleaver construction, perturbations, edge scans, oracle runs, and the
// built-in counterexample family f = r^2 - t^2, g = t^2 + 2t - 3,
// h = t^2 - 2t - 3.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "polyfam/compat.hpp"
#include "polyfam/interlace.hpp"
#include "polyfam/io.hpp"
#include "polyfam/oracle.hpp"

namespace {

using namespace polyfam;

constexpr int kExitCompatible = 0;
constexpr int kExitIncompatible = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

int exit_code_for(CompatReport::Verdict v) {
  switch (v) {
    case CompatReport::Verdict::Compatible: return kExitCompatible;
    case CompatReport::Verdict::Incompatible: return kExitIncompatible;
    case CompatReport::Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

Familyd load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DimensionError("cannot open family file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DimensionError(std::string("malformed JSON: ") + e.what());
  }
  return family_from_json(j);
}

void emit_report(const CompatReport& rep, const std::string& format) {
  if (format == "text") {
    std::cout << "verdict: " << verdict_name(rep.verdict) << "\n";
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    for (const auto& [k, v] : rep.margins) std::cout << k << ": " << v << "\n";
    std::cout << "triples_checked: " << rep.triples_checked << "\n";
  } else {
    std::cout << report_to_json(rep).dump(2) << "\n";
  }
}

// The worked family: pairs are compatible exactly for r in [1, 3], the
// triple only at r = sqrt(3), where a convex combination vanishes.
Familyd example_cs_family(double r_squared) {
  Polyd f{r_squared, 0.0, -1.0};
  Polyd g{-3.0, 2.0, 1.0};
  Polyd h{-3.0, -2.0, 1.0};
  return Familyd({f, g, h}, {"f", "g", "h"});
}

struct ExampleRow {
  double r;
  CompatReport fg, fh, gh;
  CompatReport triple;
};

ExampleRow run_example_cs(double r_squared, const Tolerances& tol) {
  Familyd fam = example_cs_family(r_squared);
  ExampleRow row;
  row.r = std::sqrt(std::max(r_squared, 0.0));
  row.fg = pair_compatible(fam.members[0], fam.members[1], tol);
  row.fh = pair_compatible(fam.members[0], fam.members[2], tol);
  row.gh = pair_compatible(fam.members[1], fam.members[2], tol);
  row.triple = family_compatible(fam, tol);
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compatibility analysis for families of real-rooted polynomials"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  Tolerances tol;
  if (const char* profile = std::getenv("POLYFAM_TOL_PROFILE")) {
    try {
      tol = Tolerances::profile(profile);
    } catch (const ToleranceError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  std::string format = "json";
  app.add_option("--tau-zero", tol.tau_zero, "relative coefficient-zero threshold");
  app.add_option("--tau-root", tol.tau_root, "root clustering radius");
  app.add_option("--tau-sign", tol.tau_sign, "sign-test margin");
  app.add_option("--tau-proper", tol.tau_proper, "properness residual threshold");
  app.add_option("--epsilon", tol.epsilon_perturb, "default perturbation epsilon");
  app.add_option("--max-retries", tol.max_retries, "retry budget for epsilon-shrinking loops");
  app.add_option("--seed", tol.seed, "seed for all internal sampling");
  app.add_flag("--exact", tol.exact, "exact rational zero-combination search");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));

  std::string family_path;
  auto* check = app.add_subcommand("check", "decide compatibility of a family file");
  check->add_option("family", family_path, "family JSON file")->required();

  auto* interleaver_cmd = app.add_subcommand("interleaver", "construct a common interleaver");
  interleaver_cmd->add_option("family", family_path, "family JSON file")->required();

  double perturb_epsilon = -1.0;
  std::string perturb_mode = "mean";
  auto* perturb = app.add_subcommand("perturb", "apply a perturbation procedure");
  perturb->add_option("family", family_path, "family JSON file")->required();
  perturb->add_option("--epsilon", perturb_epsilon, "perturbation epsilon (default: tolerance policy)");
  perturb->add_option("--mode", perturb_mode, "mean | interior")
      ->check(CLI::IsMember({"mean", "interior"}));

  std::vector<int> edge{0, 1};
  int scan_k = 33;
  auto* scan = app.add_subcommand("scan", "root trajectories along one simplex edge");
  scan->add_option("family", family_path, "family JSON file")->required();
  scan->add_option("--edge", edge, "member indices i j")->expected(2);
  scan->add_option("-k,--samples", scan_k, "number of sample points");

  std::int64_t oracle_n = 1000;
  auto* oracle_cmd = app.add_subcommand("oracle", "dense convex-combination sampling");
  oracle_cmd->add_option("family", family_path, "family JSON file")->required();
  oracle_cmd->add_option("-n,--samples", oracle_n, "number of samples");

  double r_value = -1.0, r2_value = -1.0;
  double r_from = 0.0, r_to = 0.0;
  int steps = 0;
  auto* example = app.add_subcommand("example-cs", "the built-in counterexample family");
  example->add_option("--r", r_value, "radius r of f = r^2 - t^2");
  example->add_option("--r2", r2_value, "set r^2 directly (exact rational inputs)");
  example->add_option("--r-from", r_from, "sweep start");
  example->add_option("--r-to", r_to, "sweep end");
  example->add_option("--steps", steps, "sweep step count");

  try {
    app.parse(argc, argv);
    tol.validate();
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const ToleranceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*check) {
      Familyd fam = load_family(family_path);
      CompatReport rep = family_compatible(fam, tol);
      emit_report(rep, format);
      return exit_code_for(rep.verdict);
    }

    if (*interleaver_cmd) {
      Familyd fam = load_family(family_path);
      InterleaverResult res = common_interleaver(fam, tol);
      json j;
      if (res.ok()) {
        j["witness"] = poly_to_json(*res.witness);
        std::cout << j.dump(2) << "\n";
        return kExitCompatible;
      }
      switch (res.failure) {
        case InterleaverResult::Failure::NotProper: j["failure"] = "NotProper"; break;
        case InterleaverResult::Failure::NotPairwiseConsistent:
          j["failure"] = "NotPairwiseConsistent";
          break;
        default: j["failure"] = "RetryBudgetExhausted"; break;
      }
      std::cout << j.dump(2) << "\n";
      return res.failure == InterleaverResult::Failure::RetryBudgetExhausted
                 ? kExitInconclusive
                 : kExitIncompatible;
    }

    if (*perturb) {
      Familyd fam = load_family(family_path);
      double eps = perturb_epsilon > 0.0 ? perturb_epsilon : tol.epsilon_perturb;
      try {
        Familyd out = perturb_mode == "interior"
                          ? simplex_interior_perturbation(fam, eps, tol)
                          : perturb_family_mean(fam, eps, tol);
        std::cout << family_to_json(out).dump(2) << "\n";
        return kExitCompatible;
      } catch (const RetryBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncompatible;
      }
    }

    if (*scan) {
      Familyd fam = load_family(family_path);
      if (edge[0] < 0 || edge[1] < 0 || edge[0] >= fam.size() || edge[1] >= fam.size())
        throw DimensionError("edge indices out of range");
      auto rows = edge_scan(fam.members[size_t(edge[0])], fam.members[size_t(edge[1])], scan_k, tol);
      write_trajectory_csv(std::cout, rows, fam.ambient_degree());
      return kExitCompatible;
    }

    if (*oracle_cmd) {
      Familyd fam = load_family(family_path);
      OracleReport rep = sample_convex_combinations(fam, oracle_n, tol.seed, tol);
      std::cout << oracle_report_to_json(rep).dump(2) << "\n";
      return rep.violations.empty() ? kExitCompatible : kExitIncompatible;
    }

    if (*example) {
      bool sweep = steps > 0;
      if (sweep) {
        if (!(r_to > r_from) ) throw DimensionError("sweep needs --r-from < --r-to");
        std::cout << "r,pair_fg,pair_fh,pair_gh,triple\n";
        for (int i = 0; i < steps; ++i) {
          double r = r_from + (r_to - r_from) * double(i) / double(steps - 1);
          ExampleRow row = run_example_cs(r * r, tol);
          std::cout << r << "," << verdict_name(row.fg.verdict) << ","
                    << verdict_name(row.fh.verdict) << "," << verdict_name(row.gh.verdict) << ","
                    << verdict_name(row.triple.verdict) << "\n";
        }
        return kExitCompatible;
      }
      double r2;
      if (r2_value >= 0.0)
        r2 = r2_value;
      else if (r_value >= 0.0)
        r2 = r_value * r_value;
      else
        throw DimensionError("example-cs needs --r, --r2, or a sweep range");
      ExampleRow row = run_example_cs(r2, tol);
      json j;
      j["r"] = row.r;
      j["r_squared"] = r2;
      j["pairs"] = {{"fg", verdict_name(row.fg.verdict)},
                    {"fh", verdict_name(row.fh.verdict)},
                    {"gh", verdict_name(row.gh.verdict)}};
      j["triple"] = report_to_json(row.triple);
      if (format == "text") {
        std::cout << "pairs: fg=" << verdict_name(row.fg.verdict)
                  << " fh=" << verdict_name(row.fh.verdict)
                  << " gh=" << verdict_name(row.gh.verdict) << "\n"
                  << "triple: " << verdict_name(row.triple.verdict) << "\n";
        if (!row.triple.note.empty()) std::cout << "note: " << row.triple.note << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
      return exit_code_for(row.triple.verdict);
    }
  } catch (const NotRealRootedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
