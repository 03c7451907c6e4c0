#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sdisc/suites.hpp"
#include "sdisc/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

sdisc::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sdisc::ParseError("cannot open '" + path + "'");
  sdisc::json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw sdisc::ParseError("cannot write '" + path + "'");
  out << text << "\n";
}

struct RunArgs {
  std::string config_path;
  std::string suite;
  std::string dims;
  int n = -1;
  int trials = -1;
  int64_t seed = -1;
  double tol = -1;
  double soul_scale = -1;
  double radius = -1;
  int k = -1;
  std::string report;
  int threads = 0;
};

sdisc::SuiteConfig merge_config(const RunArgs& a) {
  sdisc::SuiteConfig cfg;
  if (!a.config_path.empty()) cfg = sdisc::config_from_json(load_json(a.config_path));
  // env var below the flags, above the config file
  if (const char* env = std::getenv("SDISC_REPORT")) cfg.report_path = env;
  if (!a.suite.empty()) cfg.suite = a.suite;
  if (!a.dims.empty()) {
    int pm, pp, q;
    if (std::sscanf(a.dims.c_str(), "%d,%d,%d", &pm, &pp, &q) != 3)
      throw sdisc::ParseError("--dims expects P-,P+,Q");
    cfg.dims = sdisc::Space{pm, pp, q};
  }
  if (a.n >= 0) cfg.n_pairs = a.n;
  if (a.trials >= 0) cfg.trials = a.trials;
  if (a.seed >= 0) cfg.seed = uint64_t(a.seed);
  if (a.tol >= 0) cfg.tol_scale = a.tol;
  if (a.soul_scale >= 0) cfg.soul_scale = a.soul_scale;
  if (a.radius >= 0) cfg.radius = a.radius;
  if (a.k >= 0) cfg.k = a.k;
  if (!a.report.empty()) cfg.report_path = a.report;
  return cfg;
}

int cmd_run(const RunArgs& args) {
#ifdef _OPENMP
  if (args.threads > 0) omp_set_num_threads(args.threads);
#endif
  const sdisc::SuiteConfig cfg = merge_config(args);
  const sdisc::Report report = sdisc::run_suite(cfg);
  const sdisc::json j = sdisc::report_to_json(report);
  if (!cfg.report_path.empty())
    write_text(cfg.report_path, j.dump(2));
  else
    std::cout << j.dump(2) << "\n";

  for (const auto& c : report.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  max_err=" << c.max_abs_error
              << "  threshold=" << c.threshold << "\n";
  if (!report.findings.empty())
    std::cerr << report.findings.size() << " finding(s) recorded in the report\n";
  std::cerr << (report.pass ? "PASS" : "FAIL") << " (" << report.checks.size()
            << " checks, " << report.wall_time_s << " s)\n";
  return report.pass ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superdisc property harness"};
  app.set_version_flag("--version", sdisc::kVersion);
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run a property suite and write a JSON report");
  run->add_option("--config", run_args.config_path, "JSON config file (same keys as flags)");
  run->add_option("--suite", run_args.suite,
                  "grassmann|supermatrix|disc|symplectic|quantize|all");
  run->add_option("--dims", run_args.dims, "space dimensions P-,P+,Q");
  run->add_option("--n", run_args.n, "Grassmann generator pairs");
  run->add_option("--trials", run_args.trials, "samples per check");
  run->add_option("--seed", run_args.seed, "random seed");
  run->add_option("--tol", run_args.tol, "scale factor on every check threshold");
  run->add_option("--soul-scale", run_args.soul_scale, "soul coefficient magnitude");
  run->add_option("--radius", run_args.radius, "disc body radius, in (0,1)");
  run->add_option("--k", run_args.k, "quantization level 1/hbar");
  run->add_option("--report", run_args.report,
                  "report path (default stdout; SDISC_REPORT overrides)");
  run->add_option("--threads", run_args.threads, "OpenMP thread count");

  std::string ev_op, ev_in, ev_in2, ev_out;
  auto* ev = app.add_subcommand("eval", "apply one operation to a JSON fixture");
  ev->add_option("--op", ev_op,
                 "phi|moebius|lift|sdet|str|inverse|exp|dagger|cocycle|check-group")
      ->required();
  ev->add_option("--in", ev_in, "input fixture")->required();
  ev->add_option("--in2", ev_in2, "second fixture (moebius, cocycle)");
  ev->add_option("--out", ev_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (ev->parsed()) {
      const sdisc::json input = load_json(ev_in);
      sdisc::json second;
      const bool has_second = !ev_in2.empty();
      if (has_second) second = load_json(ev_in2);
      const sdisc::json result =
          sdisc::eval_fixture(ev_op, input, has_second ? &second : nullptr);
      if (!ev_out.empty())
        write_text(ev_out, result.dump(2));
      else
        std::cout << result.dump(2) << "\n";
      return kExitPass;
    }
  } catch (const sdisc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
