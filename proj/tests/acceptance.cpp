// Acceptance gate: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "sdisc/suites.hpp"

using namespace sdisc;

namespace {

struct Criterion {
  std::string id;
  std::string label;
  std::string suite;
  std::vector<std::string> checks;
};

SuiteConfig scale_config(const std::string& suite, int trials) {
  SuiteConfig cfg;  // defaults: dims (3,3|2), n=2, soul 0.1, radius 0.7, seed 42
  cfg.suite = suite;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  // per-suite sample counts from the acceptance scale
  const std::map<std::string, int> trials = {{"grassmann", 25},
                                             {"supermatrix", 25},
                                             {"disc", 50},
                                             {"symplectic", 15},
                                             {"quantize", 10}};

  std::map<std::string, Report> reports;
  for (const auto& [suite, t] : trials) reports[suite] = run_suite(scale_config(suite, t));

  const std::vector<Criterion> criteria = {
      {"AC1", "phi identities (Phi^2 = 1, J Phi^dag J = Phi)", "disc",
       {"phi_involution", "phi_j_dagger"}},
      {"AC2", "equivariance Phi(gZ) = g Phi(Z) g^-1", "disc", {"equivariance"}},
      {"AC3", "coset section (moebius to Z, pseudounitary, conjugates J)", "disc",
       {"lift_section", "lift_pseudounitary", "lift_conjugates_j"}},
      {"AC4", "group closure and exponential", "disc",
       {"exp_pseudounitary", "group_closure"}},
      {"AC5", "Berezinian multiplicativity and sdet(exp) = exp(Str)", "supermatrix",
       {"sdet_multiplicative", "sdet_exp_str"}},
      {"AC6", "fractional powers (sqrt roundtrip, Newton vs integral)", "supermatrix",
       {"sqrt_squares_back", "pow_newton_vs_integral"}},
      {"AC7", "Poisson realization, cocycle Jacobi, origin Gram rank", "symplectic",
       {"poisson_realization", "cocycle_jacobi", "origin_gram_rank"}},
      {"AC8", "polarization residual of weighted sections", "quantize", {"polarization"}},
      {"AC9", "quantized commutator scalar and global constant", "quantize",
       {"fhat_commutator_scalar", "fhat_commutator_constant"}},
      {"AC10", "projective representation and central term", "quantize",
       {"projective_constancy", "projective_central_match", "group_cocycle"}},
      {"AC11", "classical reduction against the plain-matrix oracle", "*",
       {"classical_reduction"}},
      {"AC12", "resolvent and square-root identities", "disc",
       {"resolvent_identity", "sqrt_identity_quadrature"}},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    bool pass = true;
    double max_err = 0.0;
    int samples = 0;
    for (const auto& [suite, report] : reports) {
      if (c.suite != "*" && c.suite != suite) continue;
      for (const CheckResult& r : report.checks) {
        for (const std::string& name : c.checks) {
          if (r.name != name) continue;
          pass = pass && r.pass;
          max_err = std::max(max_err, r.max_abs_error);
          samples += r.samples;
        }
      }
    }
    if (!pass) ++failures;
    std::printf("%-5s %-58s %s  (max_err=%.3g, samples=%d)\n", c.id.c_str(),
                c.label.c_str(), pass ? "PASS" : "FAIL", max_err, samples);
  }

  // supporting detail: Gram sigma_min and measured conventions
  for (const CheckResult& r : reports["symplectic"].checks)
    if (r.name == "origin_gram_rank" && !r.details.is_null())
      std::printf("      origin gram: dimension=%d sigma_min=%.6g sigma_max=%.6g\n",
                  r.details[0]["dimension"].get<int>(),
                  r.details[0]["sigma_min"].get<double>(),
                  r.details[0]["sigma_max"].get<double>());
  std::printf("      conventions: %s %s\n",
              reports["symplectic"].conventions.dump().c_str(),
              reports["quantize"].conventions.dump().c_str());

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = wall < 300.0;
  if (!in_budget) ++failures;
  std::printf("%-5s %-58s %s  (%.1f s)\n", "TIME", "full acceptance run under 5 minutes",
              in_budget ? "PASS" : "FAIL", wall);

  bool all_checks = true;
  for (const auto& [suite, report] : reports) all_checks = all_checks && report.pass;
  std::printf("%-5s %-58s %s\n", "ALL", "every suite check green at acceptance scale",
              all_checks ? "PASS" : "FAIL");
  if (!all_checks) ++failures;

  return failures;
}
