#include "sdisc/disc.hpp"

#include <bit>
#include <cmath>

#include "sdisc/rng.hpp"

namespace sdisc {

DiscPoint disc_point_from_z(const SuperMatrix& z) {
  auto [w, theta] = split_cols_plus_odd(z);
  return {std::move(w), std::move(theta)};
}

DiscPoint zero_disc_point(const Space& s, int n_pairs) {
  SuperMatrix w(minus_part(s), Space{0, s.p_plus, 0}, n_pairs, MatType::Even);
  SuperMatrix theta(minus_part(s), Space{0, 0, s.q}, n_pairs, MatType::Even);
  return {std::move(w), std::move(theta)};
}

DiscMembership is_in_disc(const DiscPoint& p) {
  const Eigen::MatrixXcd wb = body(p.w);
  double smax = 0.0;
  if (wb.rows() > 0 && wb.cols() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wb);
    smax = svd.singularValues().maxCoeff();
  }
  const double margin = 1.0 - smax * smax;
  return {margin > 0.0, margin};
}

DiscPoint moebius(const GroupElement& g, const DiscPoint& p) {
  return disc_point_from_z(moebius_z(g.m, p.z()));
}

SuperMatrix phi(const DiscPoint& p) {
  const SuperMatrix z = p.z();
  return phi_z(z, dagger(z));
}

SuperMatrix phi_rearranged(const DiscPoint& p) {
  const SuperMatrix z = p.z();
  const SuperMatrix zd = dagger(z);
  const int n = z.n_pairs();
  const auto one_m = SuperMatrix::identity(z.rows(), n);
  const auto one_r = SuperMatrix::identity(z.cols(), n);
  const auto ki = inverse(one_m - z * zd);
  const auto si = inverse(one_r - zd * z);
  auto out = j_matrix(p.space(), n) +
             from_disc_blocks(z * si * zd * Complex(2), ki * z * Complex(-2),
                              zd * ki * Complex(2), zd * ki * z * Complex(-2));
  out.set_type(MatType::Even);
  return out;
}

GroupElement lift(const DiscPoint& p) {
  const SuperMatrix z = p.z();
  const SuperMatrix zd = dagger(z);
  const int n = z.n_pairs();
  const auto one_m = SuperMatrix::identity(z.rows(), n);
  const auto one_r = SuperMatrix::identity(z.cols(), n);
  const auto kmh = pow(one_m - z * zd, -0.5);
  const auto smh = pow(one_r - zd * z, -0.5);
  auto g = from_disc_blocks(kmh, kmh * z, smh * zd, smh);
  g.set_type(MatType::Even);
  return {std::move(g)};
}

double check_pseudounitary(const GroupElement& g) {
  const SuperMatrix j = j_matrix(g.space(), g.n_pairs());
  const SuperMatrix gd = dagger(g.m);
  const double r1 = max_coeff_dist(g.m * j * gd, j);
  const double r2 = max_coeff_dist(gd * j * g.m, j);
  return std::max(r1, r2);
}

double lie_residual(const LieElement& u) {
  const SuperMatrix j = j_matrix(u.space(), u.n_pairs());
  return max_abs_coeff(u.m * j + j * dagger(u.m));
}

namespace {

Grassmann random_parity_entry(Rng& rng, int n, bool odd, double body_scale,
                              double soul_scale) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) {
    const bool m_odd = std::popcount(m) & 1;
    if (m_odd != odd) continue;
    g.set_coeff(m, m == 0 ? rng.box(body_scale) : rng.box(soul_scale));
  }
  return g;
}

}  // namespace

DiscPoint random_disc_point(uint64_t seed, const Space& s, int n_pairs, double radius,
                            double soul_scale) {
  Rng rng(seed, stream_id("disc_point"));
  DiscPoint p = zero_disc_point(s, n_pairs);

  Eigen::MatrixXcd wb(s.p_minus, s.p_plus);
  for (int i = 0; i < s.p_minus; ++i)
    for (int j = 0; j < s.p_plus; ++j) wb(i, j) = rng.box(1.0);
  if (s.p_minus > 0 && s.p_plus > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wb);
    const double smax = svd.singularValues().maxCoeff();
    const double target = radius * rng.uniform(0.5, 1.0);
    if (smax > 0.0) wb *= target / smax;
  }
  for (int i = 0; i < s.p_minus; ++i) {
    for (int j = 0; j < s.p_plus; ++j) {
      Grassmann e = random_parity_entry(rng, n_pairs, false, 0.0, soul_scale);
      e.set_coeff(0, wb(i, j));
      p.w.at(i, j) = std::move(e);
    }
    for (int j = 0; j < s.q; ++j)
      p.theta.at(i, j) = random_parity_entry(rng, n_pairs, true, 0.0, soul_scale);
  }
  return p;
}

LieElement random_lie_element(uint64_t seed, const Space& s, int n_pairs, double scale) {
  Rng rng(seed, stream_id("lie_element"));
  SuperMatrix raw(s, s, n_pairs, MatType::Even);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      const bool cross = s.odd_slot(i) != s.odd_slot(j);
      raw.at(i, j) = random_parity_entry(rng, n_pairs, cross, scale, scale);
    }
  // project onto u J + J u^dag = 0
  const SuperMatrix j = j_matrix(s, n_pairs);
  SuperMatrix u = (raw - j * dagger(raw) * j) * Complex(0.5);
  u.set_type(MatType::Even);
  return {std::move(u)};
}

GroupElement random_group_element(uint64_t seed, const Space& s, int n_pairs, double scale) {
  return {exp(random_lie_element(seed, s, n_pairs, scale).m)};
}

}  // namespace sdisc
