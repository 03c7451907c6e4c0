#include "sdisc/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>

#include "sdisc/classical.hpp"
#include "sdisc/quadrature.hpp"
#include "sdisc/rng.hpp"
#include "sdisc/version.hpp"

namespace sdisc {

void SuiteConfig::validate() const {
  static const char* names[] = {"grassmann", "supermatrix", "disc",
                                "symplectic", "quantize", "all"};
  if (std::find_if(std::begin(names), std::end(names),
                   [&](const char* s) { return suite == s; }) == std::end(names))
    throw ParseError("unknown suite '" + suite + "'");
  if (trials < 1) throw ParseError("trials must be >= 1");
  if (!(radius > 0.0 && radius < 1.0)) throw ParseError("radius must lie in (0, 1)");
  if (k < 1) throw ParseError("quantization level k must be >= 1");
  if (n_pairs < 0 || n_pairs > kMaxGeneratorPairs)
    throw ParseError("n out of range");
  if (dims.p_minus < 0 || dims.p_plus < 0 || dims.q < 0)
    throw ParseError("dims must be nonnegative");
  if (soul_scale < 0.0 || soul_scale > 0.5)
    throw ParseError("soul_scale must lie in [0, 0.5]");
}

SuiteConfig config_from_json(const json& j) {
  SuiteConfig c;
  c.suite = j.value("suite", c.suite);
  c.dims.p_minus = j.value("p_minus", c.dims.p_minus);
  c.dims.p_plus = j.value("p_plus", c.dims.p_plus);
  c.dims.q = j.value("q", c.dims.q);
  c.n_pairs = j.value("n", c.n_pairs);
  c.trials = j.value("trials", c.trials);
  c.seed = j.value("seed", c.seed);
  c.tol_scale = j.value("tol", c.tol_scale);
  c.soul_scale = j.value("soul_scale", c.soul_scale);
  c.radius = j.value("radius", c.radius);
  c.k = j.value("k", c.k);
  c.report_path = j.value("report", c.report_path);
  return c;
}

json config_to_json(const SuiteConfig& c) {
  return json{{"suite", c.suite},   {"p_minus", c.dims.p_minus},
              {"p_plus", c.dims.p_plus}, {"q", c.dims.q},
              {"n", c.n_pairs},     {"trials", c.trials},
              {"seed", c.seed},     {"tol", c.tol_scale},
              {"soul_scale", c.soul_scale}, {"radius", c.radius},
              {"k", c.k},           {"report", c.report_path}};
}

namespace {

struct TrialOutcome {
  double error = 0.0;
  json detail;
  std::string finding;
};

class Recorder {
 public:
  explicit Recorder(const SuiteConfig& cfg, Report& report) : cfg_(cfg), report_(report) {}

  const SuiteConfig& config() const { return cfg_; }

  // Runs `samples` seeded trials (possibly in parallel), records the max
  // error against the scaled threshold.  fn returns the trial error and may
  // fill the outcome's detail/finding.
  template <class F>
  void check(const std::string& name, int samples, double threshold, F&& fn) {
    std::vector<TrialOutcome> outcomes(samples);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < samples; ++t) {
      try {
        outcomes[t].error = fn(trial_seed(cfg_.seed, uint64_t(t), name), t, outcomes[t]);
      } catch (const std::exception& ex) {
        outcomes[t].error = std::numeric_limits<double>::infinity();
        outcomes[t].finding = ex.what();
      }
    }
    finish(name, samples, threshold, outcomes);
  }

  // serial variant for checks that aggregate across trials themselves
  template <class F>
  void check_serial(const std::string& name, int samples, double threshold, F&& fn) {
    std::vector<TrialOutcome> outcomes(samples);
    for (int t = 0; t < samples; ++t) {
      try {
        outcomes[t].error = fn(trial_seed(cfg_.seed, uint64_t(t), name), t, outcomes[t]);
      } catch (const std::exception& ex) {
        outcomes[t].error = std::numeric_limits<double>::infinity();
        outcomes[t].finding = ex.what();
      }
    }
    finish(name, samples, threshold, outcomes);
  }

  void record_convention(const std::string& key, const json& value) {
    report_.conventions[key] = value;
  }

 private:
  void finish(const std::string& name, int samples, double threshold,
              const std::vector<TrialOutcome>& outcomes) {
    CheckResult r;
    r.name = name;
    r.samples = samples;
    r.threshold = threshold * cfg_.tol_scale;
    json details = json::array();
    for (int t = 0; t < samples; ++t) {
      r.max_abs_error = std::max(r.max_abs_error, outcomes[t].error);
      if (!outcomes[t].detail.is_null()) details.push_back(outcomes[t].detail);
      if (!outcomes[t].finding.empty())
        report_.findings.push_back(name + "[" + std::to_string(t) +
                                   "]: " + outcomes[t].finding);
    }
    if (!details.empty()) r.details = std::move(details);
    r.pass = r.max_abs_error <= r.threshold;
    report_.checks.push_back(std::move(r));
  }

  const SuiteConfig& cfg_;
  Report& report_;
};

// ---------------------------------------------------------------------------
// shared generators

Grassmann random_element(Rng& rng, int n, double scale = 1.0) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) g.set_coeff(m, rng.box(scale));
  return g;
}

Grassmann random_homogeneous(Rng& rng, int n, bool odd, double scale = 1.0) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m)
    if ((std::popcount(m) & 1) == (odd ? 1 : 0)) g.set_coeff(m, rng.box(scale));
  return g;
}

Grassmann random_entry_typed(Rng& rng, int n, bool odd, double body_scale,
                             double soul_scale) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) {
    const bool m_odd = std::popcount(m) & 1;
    if (m_odd != odd) continue;
    g.set_coeff(m, m == 0 ? rng.box(body_scale) : rng.box(soul_scale));
  }
  return g;
}

SuperMatrix random_typed_matrix(Rng& rng, const Space& s, int n, MatType t,
                                double body_scale, double soul_scale) {
  SuperMatrix m(s, s, n, t);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      const bool cross = s.odd_slot(i) != s.odd_slot(j);
      const bool odd_entry = (t == MatType::Odd) ? !cross : cross;
      m.at(i, j) = random_entry_typed(rng, n, odd_entry, body_scale, soul_scale);
    }
  return m;
}

// section of degree <= max_degree with a nonzero constant term; variables
// only reference nonempty blocks
SectionPtr random_section(uint64_t seed, const Space& s, int max_degree) {
  Rng rng(seed, stream_id("suite_section"));
  std::vector<Monomial> terms;
  terms.push_back({Complex(1.0, 0.3) + rng.box(0.3), {}});
  const bool has_w = s.p_minus > 0 && s.p_plus > 0;
  const bool has_theta = s.p_minus > 0 && s.q > 0;
  if (has_w || has_theta)
    for (int i = 0; i < 3; ++i) {
      const int d = 1 + rng.index(std::max(1, max_degree));
      Monomial m{rng.box(1.0), {}};
      for (int j = 0; j < d; ++j) {
        VarRef v;
        v.theta = has_theta && (!has_w || rng.u01() < 0.35);
        v.row = rng.index(s.p_minus);
        v.col = v.theta ? rng.index(s.q) : rng.index(s.p_plus);
        v.power = 1;
        m.vars.push_back(v);
      }
      terms.push_back(std::move(m));
    }
  return monomial_section(std::move(terms));
}

// matched w-only polynomial for the classical comparison
std::pair<SectionPtr, classical::Poly> matched_polynomials(uint64_t seed, const Space& s,
                                                           int max_degree) {
  Rng rng(seed, stream_id("classical_poly"));
  std::vector<Monomial> terms;
  classical::Poly poly;
  terms.push_back({Complex(1.0, 0.1), {}});
  poly.terms.push_back({Complex(1.0, 0.1), {}});
  if (s.p_minus > 0 && s.p_plus > 0)
    for (int i = 0; i < 3; ++i) {
      const int d = 1 + rng.index(std::max(1, max_degree));
      Monomial m{rng.box(1.0), {}};
      classical::Poly::Term ct{m.coeff, {}};
      for (int j = 0; j < d; ++j) {
        const int r = rng.index(s.p_minus);
        const int c = rng.index(s.p_plus);
        m.vars.push_back(VarRef{false, r, c, 1});
        ct.vars.push_back({r, c, 1});
      }
      terms.push_back(std::move(m));
      poly.terms.push_back(std::move(ct));
    }
  return {monomial_section(std::move(terms)), std::move(poly)};
}

TangentVector random_tangent(uint64_t seed, const Space& s, int n) {
  auto p = random_disc_point(seed, s, n, 0.9, 0.3);
  return {p.w, p.theta};
}

GroupElement block_diagonal_group(const LieElement& u) {
  auto blocks = disc_blocks(u.m);
  SuperMatrix zb(blocks.b.rows(), blocks.b.cols(), u.n_pairs(), MatType::Even);
  SuperMatrix zc(blocks.c.rows(), blocks.c.cols(), u.n_pairs(), MatType::Even);
  return {exp(from_disc_blocks(blocks.a, zb, zc, blocks.d))};
}

double rel_dist(const Grassmann& a, const Grassmann& b) {
  return max_coeff_dist(a, b) / std::max(1.0, max_abs_coeff(b));
}

// empty-matrix-safe max abs entry
double body_max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

void grassmann_suite(Recorder& rec) {
  const SuiteConfig& cfg = rec.config();
  const int n = cfg.n_pairs;

  rec.check("associativity", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_element(rng, n), y = random_element(rng, n), z = random_element(rng, n);
    double e = max_coeff_dist((x * y) * z, x * (y * z));
    return std::max(e, max_coeff_dist(x * (y + z), x * y + x * z));
  });

  rec.check("graded_commutativity", cfg.trials, 1e-12, [&](uint64_t s, int t, TrialOutcome&) {
    Rng rng(s);
    const bool ox = t % 2, oy = (t / 2) % 2;
    auto x = random_homogeneous(rng, n, ox), y = random_homogeneous(rng, n, oy);
    const double sign = (ox && oy) ? -1.0 : 1.0;
    return max_coeff_dist(x * y, sign * (y * x));
  });

  rec.check("star_antihomomorphism", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_element(rng, n), y = random_element(rng, n);
    double e = max_coeff_dist(star(x * y), star(y) * star(x));
    return std::max(e, max_coeff_dist(star(star(x)), x));
  });

  rec.check("soul_nilpotency", cfg.trials, 0.0, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_element(rng, n, 2.0);
    auto p = Grassmann(n, 1);
    for (int k = 0; k < 2 * n + 1; ++k) p = p * x.soul();
    return max_abs_coeff(p);
  });

  rec.check("inverse_roundtrip", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = Grassmann(n, 1) + random_homogeneous(rng, n, false, 0.5).soul();
    return max_coeff_dist(x * inverse(x), Grassmann(n, 1));
  });

  rec.check("pow_roundtrip", cfg.trials, 1e-11, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = Grassmann(n, rng.uniform(0.5, 3.0)) + random_homogeneous(rng, n, false, 0.4).soul();
    const double a = rng.uniform(-0.9, 0.9);
    double e = max_coeff_dist(pow(x, a) * pow(x, -a), Grassmann(n, 1));
    auto h = pow(x, 0.5);
    return std::max(e, max_coeff_dist(h * h, x));
  });

  rec.check("jet_derivative", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto c = [&](double v) { return Grassmann(n, v); };
    auto x = c(rng.uniform(-1.0, 1.0)) + random_homogeneous(rng, n, false, 0.5).soul();
    auto v = random_homogeneous(rng, n, false, 1.0);
    Jet1 xj{x, v};
    auto num = RingOps<Jet1>::scalar(n, 2.0) + xj + 3.0 * (xj * xj);
    auto den = RingOps<Jet1>::scalar(n, 4.0) + xj * xj;
    auto f = num * RingOps<Jet1>::inverse(den);
    auto iden = inverse(c(4) + x * x);
    auto fprime =
        (c(1) + 6.0 * x) * iden - (c(2) + x + 3.0 * (x * x)) * iden * iden * (2.0 * x);
    return max_coeff_dist(f.d, fprime * v);
  });
}

void supermatrix_suite(Recorder& rec) {
  const SuiteConfig& cfg = rec.config();
  const Space sp = cfg.dims;
  const int n = cfg.n_pairs;

  rec.check("associativity_vs_reference", cfg.trials, 1e-10,
            [&](uint64_t s, int, TrialOutcome&) {
              Rng rng(s);
              auto a = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
              auto b = random_typed_matrix(rng, sp, n, MatType::Odd, 1.0, 0.3);
              auto c = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
              return max_coeff_dist((a * b) * c, ref::mul(a, ref::mul(b, c)));
            });

  rec.check("str_kills_supercommutators", cfg.trials, 1e-10,
            [&](uint64_t s, int t, TrialOutcome&) {
              Rng rng(s);
              const MatType ta = t % 2 ? MatType::Odd : MatType::Even;
              const MatType tb = (t / 2) % 2 ? MatType::Odd : MatType::Even;
              auto a = random_typed_matrix(rng, sp, n, ta, 1.0, 0.3);
              auto b = random_typed_matrix(rng, sp, n, tb, 1.0, 0.3);
              return max_abs_coeff(str(commutator_s(a, b)));
            });

  rec.check("str_j_equals_str", cfg.trials, 0.0, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto m = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    return max_coeff_dist(str_j(m), str(m));
  });

  rec.check("dagger_antihomomorphism", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto a = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    auto b = random_typed_matrix(rng, sp, n, MatType::Odd, 1.0, 0.3);
    return max_coeff_dist(dagger(a * b), dagger(b) * dagger(a));
  });

  rec.check("inverse_roundtrip", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto m = SuperMatrix::identity(sp, n) +
             random_typed_matrix(rng, sp, n, MatType::Even, 0.3, 0.3);
    const auto one = SuperMatrix::identity(sp, n);
    double e = max_coeff_dist(m * inverse(m), one);
    return std::max(e, max_coeff_dist(inverse(m) * m, one));
  });

  rec.check("sdet_multiplicative", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto m = exp(random_typed_matrix(rng, sp, n, MatType::Even, 0.4, 0.2));
    auto k = exp(random_typed_matrix(rng, sp, n, MatType::Even, 0.4, 0.2));
    return rel_dist(sdet(m * k), sdet(m) * sdet(k));
  });

  rec.check("sdet_exp_str", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_typed_matrix(rng, sp, n, MatType::Even, 0.4, 0.25);
    return rel_dist(sdet(exp(x)), exp(str(x)));
  });

  rec.check("sqrt_squares_back", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto z = random_disc_point(s, sp, n, cfg.radius, cfg.soul_scale).z();
    auto m = SuperMatrix::identity(z.cols(), n) - dagger(z) * z;
    m.set_type(MatType::Even);
    auto h = pow(m, 0.5);
    return max_coeff_dist(h * h, m);
  });

  rec.check("pow_newton_vs_integral", cfg.trials, 1e-7, [&](uint64_t s, int, TrialOutcome&) {
    auto z = random_disc_point(s, sp, n, cfg.radius, cfg.soul_scale).z();
    auto m = SuperMatrix::identity(z.cols(), n) - dagger(z) * z;
    m.set_type(MatType::Even);
    double e = 0.0;
    for (double a : {0.5, -0.5}) e = std::max(e, max_coeff_dist(pow(m, a), pow_integral(m, a)));
    return e;
  });

  rec.check("exp_inverse", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_typed_matrix(rng, sp, n, MatType::Even, 0.6, 0.3);
    return max_coeff_dist(exp(x) * exp(-x), SuperMatrix::identity(sp, n));
  });

  rec.check("commutator_jacobi", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto a = random_typed_matrix(rng, sp, n, MatType::Even, 0.8, 0.3);
    auto b = random_typed_matrix(rng, sp, n, MatType::Even, 0.8, 0.3);
    auto c = random_typed_matrix(rng, sp, n, MatType::Even, 0.8, 0.3);
    auto jac = commutator_s(commutator_s(a, b), c) + commutator_s(commutator_s(b, c), a) +
               commutator_s(commutator_s(c, a), b);
    return max_abs_coeff(jac);
  });

  rec.check("kernel_equivalence", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto a = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    auto b = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    double e = max_coeff_dist(kernels::smul_serial(a, b), kernels::smul_parallel(a, b));
    auto x = random_element(rng, n), y = random_element(rng, n);
    return std::max(e, max_coeff_dist(kernels::gmul_serial(x, y), kernels::gmul_parallel(x, y)));
  });

  rec.check("classical_reduction", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    const Space flat{sp.p_minus, sp.p_plus, 0};
    Rng rng(s);
    auto a = random_typed_matrix(rng, flat, 0, MatType::Even, 1.0, 0.0);
    auto b = random_typed_matrix(rng, flat, 0, MatType::Even, 1.0, 0.0);
    const Eigen::MatrixXcd pa = body(a), pb = body(b);
    double e = body_max_abs(body(a * b) - pa * pb);
    e = std::max(e, std::abs(str(a).body() - pa.trace()));
    auto m = SuperMatrix::identity(flat, 0) + a * Complex(0.2);
    const Eigen::MatrixXcd pm =
        Eigen::MatrixXcd::Identity(flat.dim(), flat.dim()) + pa * 0.2;
    e = std::max(e, body_max_abs(body(inverse(m)) - pm.inverse()));
    e = std::max(e, std::abs(sdet(m).body() - pm.determinant()));
    return e;
  });
}

void disc_suite(Recorder& rec) {
  const SuiteConfig& cfg = rec.config();
  const Space sp = cfg.dims;
  const int n = cfg.n_pairs;
  const auto one = SuperMatrix::identity(sp, n);
  const auto j = j_matrix(sp, n);

  auto rnd_z = [&](uint64_t s) {
    return random_disc_point(s, sp, n, cfg.radius, cfg.soul_scale);
  };
  auto rnd_g = [&](uint64_t s) { return random_group_element(s, sp, n, 0.3); };

  rec.check("phi_involution", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto f = phi(rnd_z(s));
    return max_coeff_dist(f * f, one);
  });

  rec.check("phi_j_dagger", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto f = phi(rnd_z(s));
    return max_coeff_dist(j * dagger(f) * j, f);
  });

  rec.check("phi_two_routes", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto z = rnd_z(s);
    return max_coeff_dist(phi(z), phi_rearranged(z));
  });

  rec.check("moebius_composition", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto g1 = rnd_g(splitmix64(s)), g2 = rnd_g(splitmix64(s + 1));
    auto z = rnd_z(s);
    auto lhs = moebius(g1, moebius(g2, z));
    auto rhs = moebius(GroupElement{g1.m * g2.m}, z);
    return max_coeff_dist(lhs.z(), rhs.z());
  });

  rec.check("action_closure", cfg.trials, 0.0, [&](uint64_t s, int, TrialOutcome& out) {
    auto img = moebius(rnd_g(s), rnd_z(splitmix64(s)));
    auto m = is_in_disc(img);
    out.detail = json{{"margin", m.margin}};
    return m.inside ? 0.0 : 1.0;
  });

  rec.check("lift_section", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto z = rnd_z(s);
    return max_coeff_dist(moebius(lift(z), zero_disc_point(sp, n)).z(), z.z());
  });

  rec.check("lift_pseudounitary", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    return check_pseudounitary(lift(rnd_z(s)));
  });

  rec.check("lift_conjugates_j", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto z = rnd_z(s);
    auto g = lift(z);
    return max_coeff_dist(g.m * j * inverse(g.m), phi(z));
  });

  rec.check("equivariance", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    auto g = rnd_g(s);
    auto z = rnd_z(splitmix64(s));
    return max_coeff_dist(phi(moebius(g, z)), g.m * phi(z) * inverse(g.m));
  });

  rec.check("exp_pseudounitary", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    return check_pseudounitary(rnd_g(s));
  });

  rec.check("group_closure", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    return check_pseudounitary(GroupElement{rnd_g(s).m * rnd_g(splitmix64(s)).m});
  });

  rec.check("resolvent_identity", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    auto z = rnd_z(s).z();
    auto zd = dagger(z);
    const auto one_m = SuperMatrix::identity(z.rows(), n);
    const auto one_r = SuperMatrix::identity(z.cols(), n);
    auto lhs = inverse(one_r - zd * z);
    auto rhs = one_r + zd * inverse(one_m - z * zd) * z;
    return max_coeff_dist(lhs, rhs);
  });

  rec.check("sqrt_identity_quadrature", cfg.trials, 1e-6, [&](uint64_t s, int, TrialOutcome&) {
    static const auto gl = gauss_legendre_01(64);
    auto z = rnd_z(s).z();
    auto zd = dagger(z);
    const auto one_m = SuperMatrix::identity(z.rows(), n);
    const auto one_r = SuperMatrix::identity(z.cols(), n);
    auto lhs = pow(one_r - zd * z, -0.5);
    SuperMatrix integral(z.rows(), z.rows(), n, MatType::Even);
    for (size_t i = 0; i < gl.first.size(); ++i)
      integral += pow(one_m - z * zd * Complex(gl.first[i]), -0.5) * Complex(gl.second[i]);
    auto rhs = one_r + zd * (pow(one_m - z * zd, -0.5) - integral * Complex(0.5)) * z;
    return max_coeff_dist(lhs, rhs);
  });

  rec.check("rng_determinism", cfg.trials, 0.0, [&](uint64_t s, int, TrialOutcome&) {
    auto a = rnd_z(s), b = rnd_z(s);
    auto u = random_lie_element(s, sp, n, 0.3), v = random_lie_element(s, sp, n, 0.3);
    const bool same = exactly_equal(a.z(), b.z()) && exactly_equal(u.m, v.m);
    return same ? 0.0 : 1.0;
  });

  rec.check("lie_constraint", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    return lie_residual(random_lie_element(s, sp, n, 0.3));
  });

  rec.check("classical_reduction", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    const Space flat{sp.p_minus, sp.p_plus, 0};
    auto z = random_disc_point(s, flat, 0, cfg.radius, 0.0);
    auto g = random_group_element(splitmix64(s), flat, 0, 0.3);
    const Eigen::MatrixXcd zb = body(z.z());
    const Eigen::MatrixXcd gb = body(g.m);
    double e = body_max_abs(body(phi(z)) - classical::phi(zb));
    e = std::max(e, body_max_abs(body(moebius(g, z).z()) -
                                 classical::moebius(gb, flat.p_minus, zb)));
    e = std::max(e, body_max_abs(body(lift(z).m) - classical::lift(zb)));
    return e;
  });
}

void symplectic_suite(Recorder& rec) {
  const SuiteConfig& cfg = rec.config();
  const Space sp = cfg.dims;
  const int n = cfg.n_pairs;

  const PoissonConvention conv = measure_poisson_convention(sp, n);
  rec.record_convention("poisson_s_moment", conv.s_moment);
  rec.record_convention("poisson_s_cocycle", conv.s_cocycle);

  auto rnd_z = [&](uint64_t s) {
    return random_disc_point(s, sp, n, cfg.radius, cfg.soul_scale);
  };
  auto rnd_u = [&](uint64_t s) { return random_lie_element(s, sp, n, 0.3); };

  rec.check("vector_field_jet_vs_closed", cfg.trials, 1e-10,
            [&](uint64_t s, int, TrialOutcome&) {
              auto u = rnd_u(s);
              auto z = rnd_z(splitmix64(s));
              return max_coeff_dist(vector_field(u, z).z(),
                                    vector_field_closed<Grassmann>(u, z.z()));
            });

  rec.check("cocycle_two_routes", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    auto u = rnd_u(s), v = rnd_u(splitmix64(s));
    double e = max_coeff_dist(cocycle(u, v), cocycle_explicit(u, v));
    return std::max(e, max_abs_coeff(cocycle(u, u)));
  });

  rec.check("origin_omega_vs_cocycle", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    auto u = rnd_u(s), v = rnd_u(splitmix64(s));
    auto z0 = zero_disc_point(sp, n);
    return max_coeff_dist(omega(u, v, z0), cocycle(u, v) * conv.s_cocycle);
  });

  rec.check("poisson_realization", cfg.trials, 1e-8,
            [&](uint64_t s, int t, TrialOutcome& out) {
              const uint64_t us = s, vs = splitmix64(s);
              auto u = rnd_u(us), v = rnd_u(vs);
              double e = 0.0;
              json records = json::array();
              for (uint64_t i = 0; i < 5; ++i) {
                const uint64_t zs = trial_seed(cfg.seed, i + 5 * uint64_t(t), "poisson_z");
                auto z = rnd_z(zs);
                const double r = poisson_residual(u, v, z, conv);
                records.push_back(json{{"u_seed", us}, {"v_seed", vs}, {"z_seed", zs},
                                       {"residual", r}});
                e = std::max(e, r);
              }
              out.detail = std::move(records);
              return e;
            });

  rec.check("cocycle_jacobi", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    auto u = rnd_u(s), v = rnd_u(splitmix64(s)), w = rnd_u(splitmix64(s + 7));
    LieElement uv{commutator_s(u.m, v.m)}, vw{commutator_s(v.m, w.m)},
        wu{commutator_s(w.m, u.m)};
    return max_abs_coeff(cocycle(uv, w) + cocycle(vw, u) + cocycle(wu, v));
  });

  rec.check_serial("origin_gram_rank", 1, 0.0, [&](uint64_t, int, TrialOutcome& out) {
    auto gram = origin_gram(sp, n);
    out.detail = json{{"dimension", gram.dimension},
                      {"sigma_min", gram.sigma_min},
                      {"sigma_max", gram.sigma_max}};
    return gram.full_rank ? 0.0 : 1.0;
  });

  rec.check("hamiltonian_sign", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    // dF_u(V_v) = -Omega(V_u, V_v) with the sign fixed at the origin
    auto u = rnd_u(s), v = rnd_u(splitmix64(s));
    auto z = rnd_z(splitmix64(s + 3));
    return max_coeff_dist(moment_map_derivative(u, v, z), -omega(u, v, z));
  });

  rec.check("gauge_invariance", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    auto u = rnd_u(s), v = rnd_u(splitmix64(s));
    auto z = rnd_z(splitmix64(s + 1));
    auto g = lift(z);
    GroupElement gauged{g.m * block_diagonal_group(rnd_u(splitmix64(s + 2))).m};
    return max_coeff_dist(omega_at(u, v, g), omega_at(u, v, gauged));
  });

  rec.check("adjoint_equivariance", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    auto u = rnd_u(s), v = rnd_u(splitmix64(s));
    auto g = random_group_element(splitmix64(s + 1), sp, n, 0.3);
    auto z = rnd_z(splitmix64(s + 2));
    auto gi = inverse(g.m);
    LieElement au{gi * u.m * g.m}, av{gi * v.m * g.m};
    return max_coeff_dist(omega(u, v, moebius(g, z)), omega(au, av, z));
  });

  rec.check("classical_reduction", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    const Space flat{sp.p_minus, sp.p_plus, 0};
    auto z = random_disc_point(s, flat, 0, cfg.radius, 0.0);
    auto u = random_lie_element(splitmix64(s), flat, 0, 0.3);
    auto v = random_lie_element(splitmix64(s + 1), flat, 0, 0.3);
    const Eigen::MatrixXcd zb = body(z.z());
    const Eigen::MatrixXcd ub = body(u.m), vb = body(v.m);
    double e = std::abs(omega(u, v, z).body() -
                        classical::omega(ub, vb, zb, flat.p_minus));
    e = std::max(e, std::abs(moment_map(u, z).body() -
                             classical::moment_map(ub, zb, flat.p_minus)));
    e = std::max(e, std::abs(cocycle(u, v).body() -
                             classical::cocycle(ub, vb, flat.p_minus)));
    return e;
  });
}

void quantize_suite(Recorder& rec) {
  const SuiteConfig& cfg = rec.config();
  const Space sp = cfg.dims;
  const int n = cfg.n_pairs;

  const RhoConvention rconv = measure_rho_convention(sp, n, QuantLevel{cfg.k});
  rec.record_convention("rho_composes_reversed", rconv.composes_reversed);
  rec.record_convention("rho_central_exponent", rconv.central_exponent);
  rec.record_convention("rho_central_args_swapped", rconv.central_args_swapped);

  auto rnd_z = [&](uint64_t s) {
    return random_disc_point(s, sp, n, cfg.radius, cfg.soul_scale);
  };
  auto rnd_u = [&](uint64_t s) { return random_lie_element(s, sp, n, 0.3); };
  auto rnd_g = [&](uint64_t s) { return random_group_element(s, sp, n, 0.3); };

  rec.check("polarization", cfg.trials, 1e-8, [&](uint64_t s, int, TrialOutcome&) {
    auto sec = random_section(s, sp, 2);
    double e = 0.0;
    for (int k : {1, 2})
      for (uint64_t i = 0; i < 5; ++i) {
        auto z = rnd_z(splitmix64(s + i));
        auto dzbar = random_tangent(splitmix64(s + 100 + i), sp, n);
        e = std::max(e, polarization_residual(z, sec, QuantLevel{k}, dzbar));
      }
    return e;
  });

  // the commutator defect: constancy in Z per sample, and one global
  // proportionality constant against the cocycle across samples and k
  {
    const int samples = cfg.trials;
    std::vector<Complex> ratios(samples);
    std::vector<double> variations(samples);
    std::vector<double> signs(samples);
    std::vector<double> full_scalar_err(samples);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < samples; ++t) {
      const uint64_t s = trial_seed(cfg.seed, uint64_t(t), "fhat_commutator");
      uint64_t us = s;
      LieElement u = rnd_u(us), v = rnd_u(splitmix64(us));
      for (int guard = 0; guard < 16 && std::abs(cocycle(u, v).body()) < 0.02; ++guard) {
        us = splitmix64(us + 1);
        u = rnd_u(us);
        v = rnd_u(splitmix64(us));
      }
      const int k = 1 + t % 2;
      auto sec = random_section(splitmix64(s + 5), sp, 2);
      auto chk = fhat_commutator_check(u, v, sec, QuantLevel{k}, splitmix64(s + 9));
      ratios[t] = chk.ratio_vs_cocycle;
      variations[t] = chk.z_variation;
      signs[t] = chk.bracket_sign;
      full_scalar_err[t] =
          max_coeff_dist(chk.scalar, cocycle(u, v) * Complex(0, chk.bracket_sign *
                                                                    -1.0 / k));
    }
    rec.check_serial("fhat_commutator_scalar", samples, 1e-7,
                     [&](uint64_t, int t, TrialOutcome&) { return variations[t]; });
    rec.check_serial("fhat_commutator_constant", samples, 1e-6,
                     [&](uint64_t, int t, TrialOutcome& out) {
                       out.detail = json{{"ratio", {ratios[t].real(), ratios[t].imag()}},
                                         {"bracket_sign", signs[t]}};
                       if (signs[t] != signs[0]) return 1.0;
                       return std::abs(ratios[t] - ratios[0]) / std::abs(ratios[0]);
                     });
    rec.check_serial("fhat_commutator_matches_cocycle", samples, 1e-7,
                     [&](uint64_t, int t, TrialOutcome&) { return full_scalar_err[t]; });
    rec.record_convention("fhat_bracket_sign", signs[0]);
    rec.record_convention("fhat_ratio_vs_cocycle",
                          json::array({ratios[0].real(), ratios[0].imag()}));
  }

  {
    const int samples = cfg.trials;
    std::vector<double> variation(samples), central(samples);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < samples; ++t) {
      const uint64_t s = trial_seed(cfg.seed, uint64_t(t), "projective");
      auto g1 = rnd_g(s), g2 = rnd_g(splitmix64(s));
      auto sec = random_section(splitmix64(s + 3), sp, 2);
      auto chk = projective_residual(g1, g2, sec, QuantLevel{cfg.k}, rconv,
                                     splitmix64(s + 4));
      variation[t] = chk.z_variation;
      central[t] = chk.central_error;
    }
    rec.check_serial("projective_constancy", samples, 1e-7,
                     [&](uint64_t, int t, TrialOutcome&) { return variation[t]; });
    rec.check_serial("projective_central_match", samples, 1e-7,
                     [&](uint64_t, int t, TrialOutcome&) { return central[t]; });
  }

  rec.check("group_cocycle", cfg.trials, 1e-7, [&](uint64_t s, int, TrialOutcome&) {
    const QuantLevel k{cfg.k};
    auto a = rnd_g(s), b = rnd_g(splitmix64(s)), c = rnd_g(splitmix64(s + 1));
    GroupElement ab{a.m * b.m}, bc{b.m * c.m};
    auto lhs = central_term(a, b, k) * central_term(ab, c, k);
    auto rhs = central_term(b, c, k) * central_term(a, bc, k);
    return rel_dist(lhs, rhs);
  });

  rec.check("holomorphy", cfg.trials, 1e-9, [&](uint64_t s, int, TrialOutcome&) {
    const QuantLevel k{cfg.k};
    auto sec = random_section(s, sp, 2);
    auto fs = fhat(rnd_u(splitmix64(s)), sec, k);
    auto rs = rho(rnd_g(splitmix64(s + 1)), sec, k);
    auto z = rnd_z(splitmix64(s + 2));
    auto tangent = random_tangent(splitmix64(s + 3), sp, n).z();
    const auto base = lift_point<Grassmann>(z);
    double e = 0.0;
    for (const SectionPtr& sec_out : {fs, rs}) {
      const Jet1 ev = sec_out->eval(extend_point(base, tangent));
      const Jet1 ei = sec_out->eval(extend_point(base, tangent * Complex(0, 1)));
      e = std::max(e, max_coeff_dist(ei.d, ev.d * Complex(0, 1)));
    }
    return e;
  });

  rec.check("rho_identity", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    const QuantLevel k{cfg.k};
    auto sec = random_section(s, sp, 2);
    auto rs = rho(GroupElement{SuperMatrix::identity(sp, n)}, sec, k);
    auto z = rnd_z(splitmix64(s));
    const auto p = lift_point<Grassmann>(z);
    return max_coeff_dist(rs->eval(p), sec->eval(p));
  });

  rec.check("hs_product_bound", cfg.trials, 1e-12, [&](uint64_t s, int, TrialOutcome&) {
    Rng rng(s);
    auto x = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    auto y = random_typed_matrix(rng, sp, n, MatType::Even, 1.0, 0.3);
    double e = std::max(0.0, hs_norm({x * y}) -
                                 std::ldexp(1.0, n) * hs_norm({x}) * hs_norm({y}));
    // conjugate symmetry
    e = std::max(e, std::abs(hs_inner({x}, {y}) - std::conj(hs_inner({y}, {x}))));
    return e;
  });

  rec.check("classical_reduction", cfg.trials, 1e-10, [&](uint64_t s, int, TrialOutcome&) {
    const Space flat{sp.p_minus, sp.p_plus, 0};
    const int k = cfg.k;
    auto z = random_disc_point(s, flat, 0, cfg.radius, 0.0);
    auto u = random_lie_element(splitmix64(s), flat, 0, 0.3);
    auto g = random_group_element(splitmix64(s + 1), flat, 0, 0.3);
    auto dz = random_disc_point(splitmix64(s + 2), flat, 0, 0.9, 0.0);
    auto dzb = random_disc_point(splitmix64(s + 3), flat, 0, 0.9, 0.0);
    auto [sec, poly] = matched_polynomials(splitmix64(s + 4), flat, 2);

    const Eigen::MatrixXcd zb = body(z.z());
    const Eigen::MatrixXcd ub = body(u.m), gb = body(g.m);
    const Eigen::MatrixXcd dzb_m = body(dz.z()), dzbb = body(dzb.z());

    double e = std::abs(theta_s(z, TangentVector{dz.w, dz.theta},
                                TangentVector{dzb.w, dzb.theta}, QuantLevel{k})
                            .body() -
                        classical::theta_s(zb, dzb_m, dzbb, k));
    e = std::max(e, std::abs(weight(z, QuantLevel{k}).body() - classical::weight(zb, k)));
    const Grassmann fv =
        fhat(u, sec, QuantLevel{k})->eval(lift_point<Grassmann>(z));
    e = std::max(e, std::abs(fv.body() -
                             classical::fhat_value(ub, poly, k, zb, flat.p_minus)));
    const Grassmann rv = rho(g, sec, QuantLevel{k})->eval(lift_point<Grassmann>(z));
    e = std::max(e, std::abs(rv.body() -
                             classical::rho_value(gb, poly, k, zb, flat.p_minus)));
    auto g2 = random_group_element(splitmix64(s + 5), flat, 0, 0.3);
    e = std::max(e, std::abs(central_term(g, g2, QuantLevel{k}).body() -
                             classical::central_term(gb, body(g2.m), k, flat.p_minus)));
    return e;
  });
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.config = config;
  report.version = kVersion;
  report.conventions = json::object();

  Recorder rec(config, report);
  const bool all = config.suite == "all";
  if (all || config.suite == "grassmann") grassmann_suite(rec);
  if (all || config.suite == "supermatrix") supermatrix_suite(rec);
  if (all || config.suite == "disc") disc_suite(rec);
  if (all || config.suite == "symplectic") symplectic_suite(rec);
  if (all || config.suite == "quantize") quantize_suite(rec);

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

json report_to_json(const Report& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    json e{{"name", c.name},
           {"samples", c.samples},
           {"max_abs_error", c.max_abs_error},
           {"threshold", c.threshold},
           {"pass", c.pass}};
    if (!c.details.is_null()) e["details"] = c.details;
    checks.push_back(std::move(e));
  }
  return json{{"config", config_to_json(r.config)},
              {"checks", std::move(checks)},
              {"conventions", r.conventions},
              {"findings", r.findings},
              {"pass", r.pass},
              {"wall_time_s", r.wall_time_s},
              {"version", r.version}};
}

json eval_fixture(const std::string& op, const json& input, const json* second_input) {
  auto need_second = [&]() -> const json& {
    if (!second_input) throw ParseError("operation '" + op + "' needs a second fixture");
    return *second_input;
  };
  if (op == "phi") return to_json(phi(disc_point_from_json(input)));
  if (op == "moebius")
    return to_json(moebius(group_from_json(input), disc_point_from_json(need_second())));
  if (op == "lift") return to_json(lift(disc_point_from_json(input)));
  if (op == "cocycle")
    return to_json(cocycle(lie_from_json(input), lie_from_json(need_second())));
  if (op == "check-group")
    return json{{"pseudounitary_residual", check_pseudounitary(group_from_json(input))}};

  std::string kind;
  const SuperMatrix m = supermatrix_from_json(input, &kind);
  if (op == "sdet" || op == "str" || op == "inverse" || op == "exp" || op == "dagger") {
    if (kind == "disc_point")
      throw ParseError("operation '" + op + "' expects a square matrix fixture");
    if (op == "sdet") return to_json(sdet(m));
    if (op == "str") return to_json(str(m));
    if (op == "inverse") return to_json(inverse(m), kind);
    if (op == "exp") return to_json(exp(m), kind);
    return to_json(dagger(m), kind);
  }
  throw ParseError("unknown operation '" + op + "'");
}

}  // namespace sdisc
