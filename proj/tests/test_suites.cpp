#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdisc/suites.hpp"

using namespace sdisc;

namespace {
SuiteConfig smoke_config(const std::string& suite) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.trials = 2;
  cfg.seed = 7;
  return cfg;
}
}  // namespace

TEST_CASE("unknown suite names are rejected") {
  auto cfg = smoke_config("warp");
  CHECK_THROWS_AS(run_suite(cfg), ParseError);
}

TEST_CASE("config validation") {
  auto cfg = smoke_config("disc");
  cfg.trials = 0;
  CHECK_THROWS_AS(run_suite(cfg), ParseError);
  cfg = smoke_config("disc");
  cfg.radius = 1.5;
  CHECK_THROWS_AS(run_suite(cfg), ParseError);
  cfg = smoke_config("disc");
  cfg.k = 0;
  CHECK_THROWS_AS(run_suite(cfg), ParseError);
  cfg = smoke_config("disc");
  cfg.soul_scale = 0.9;  // harness cap
  CHECK_THROWS_AS(run_suite(cfg), ParseError);
}

TEST_CASE("config json round trip") {
  SuiteConfig cfg;
  cfg.suite = "symplectic";
  cfg.dims = Space{2, 2, 1};
  cfg.n_pairs = 1;
  cfg.trials = 3;
  cfg.seed = 99;
  cfg.tol_scale = 2.0;
  cfg.soul_scale = 0.2;
  cfg.radius = 0.5;
  cfg.k = 2;
  auto back = config_from_json(config_to_json(cfg));
  CHECK(back.suite == cfg.suite);
  CHECK(back.dims == cfg.dims);
  CHECK(back.n_pairs == cfg.n_pairs);
  CHECK(back.trials == cfg.trials);
  CHECK(back.seed == cfg.seed);
  CHECK(back.tol_scale == cfg.tol_scale);
  CHECK(back.k == cfg.k);
}

TEST_CASE("each suite passes a smoke run and reports are deterministic") {
  for (const char* name : {"grassmann", "supermatrix", "disc", "symplectic", "quantize"}) {
    CAPTURE(name);
    auto r1 = run_suite(smoke_config(name));
    CHECK(r1.pass);
    CHECK(!r1.checks.empty());
    auto r2 = run_suite(smoke_config(name));
    auto j1 = report_to_json(r1), j2 = report_to_json(r2);
    j1.erase("wall_time_s");
    j2.erase("wall_time_s");
    CHECK(j1.dump() == j2.dump());
  }
}

TEST_CASE("per-check sample counts and thresholds are recorded") {
  auto r = run_suite(smoke_config("disc"));
  for (const auto& c : r.checks) {
    CHECK(c.samples >= 1);
    CHECK(c.threshold >= 0.0);
  }
  // tol scales thresholds
  auto cfg = smoke_config("disc");
  cfg.tol_scale = 10.0;
  auto r10 = run_suite(cfg);
  CHECK(r10.checks[0].threshold == 10.0 * r.checks[0].threshold);
}

TEST_CASE("symplectic suite emits per-sample records and conventions") {
  auto r = run_suite(smoke_config("symplectic"));
  CHECK(r.conventions.contains("poisson_s_moment"));
  CHECK(r.conventions.contains("poisson_s_cocycle"));
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name == "poisson_realization") {
      found = true;
      REQUIRE(!c.details.is_null());
      const auto& first = c.details[0][0];
      CHECK(first.contains("u_seed"));
      CHECK(first.contains("v_seed"));
      CHECK(first.contains("z_seed"));
      CHECK(first.contains("residual"));
    }
  CHECK(found);
}

TEST_CASE("degenerate truncations run every suite") {
  // empty blocks exercise the zero-sized body paths
  for (auto [pm, pp, q, n] : {std::tuple{2, 0, 1, 1}, std::tuple{0, 2, 1, 1},
                              std::tuple{0, 0, 2, 1}, std::tuple{1, 0, 0, 1}}) {
    CAPTURE(pm);
    CAPTURE(pp);
    CAPTURE(q);
    auto cfg = smoke_config("all");
    cfg.dims = Space{pm, pp, q};
    cfg.n_pairs = n;
    cfg.trials = 1;
    auto r = run_suite(cfg);
    CHECK(r.pass);
  }
}

TEST_CASE("eval_fixture operations") {
  const Space sp{3, 3, 2};
  auto z = random_disc_point(11, sp, 2, 0.6, 0.1);
  auto g = random_group_element(12, sp, 2, 0.3);

  // phi of the origin is J
  auto z0 = zero_disc_point(sp, 2);
  auto out = eval_fixture("phi", to_json(z0));
  std::string kind;
  auto m = supermatrix_from_json(out, &kind);
  CHECK(max_coeff_dist(m, j_matrix(sp, 2)) < 1e-13);

  // moebius with the identity is byte-stable
  auto idj = to_json(GroupElement{SuperMatrix::identity(sp, 2)});
  auto zj = to_json(z);
  auto moved = eval_fixture("moebius", idj, &zj);
  CHECK(moved.dump() == to_json(z).dump());

  // sdet of the identity fixture is one
  auto one = eval_fixture("sdet", to_json(SuperMatrix::identity(sp, 2)));
  CHECK(max_coeff_dist(grassmann_from_json(one), Grassmann(2, 1)) == 0.0);

  auto resid = eval_fixture("check-group", to_json(g));
  CHECK(resid["pseudounitary_residual"].get<double>() < 1e-9);

  CHECK_THROWS_AS(eval_fixture("warp", to_json(z)), ParseError);
  CHECK_THROWS_AS(eval_fixture("moebius", to_json(g)), ParseError);
}
