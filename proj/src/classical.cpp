#include "sdisc/classical.hpp"

#include <array>

namespace sdisc::classical {

namespace {

Mat jmat(int p_minus, int dim) {
  Mat j = Mat::Identity(dim, dim);
  for (int i = p_minus; i < dim; ++i) j(i, i) = -1.0;
  return j;
}

// Eigen redux operations reject empty matrices; degenerate block sizes are
// legitimate here
Mat inv0(const Mat& m) { return m.rows() == 0 ? m : Mat(m.inverse()); }
Complexd tr0(const Mat& m) { return m.rows() == 0 ? Complexd(0) : m.trace(); }
Complexd det0(const Mat& m) { return m.rows() == 0 ? Complexd(1) : m.determinant(); }

Mat herm_pow(const Mat& m, double alpha) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvectors() * es.eigenvalues().array().pow(alpha).matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

Blocks split(const Mat& g, int pm) {
  const int r = int(g.rows()) - pm;
  return {g.topLeftCorner(pm, pm), g.topRightCorner(pm, r), g.bottomLeftCorner(r, pm),
          g.bottomRightCorner(r, r)};
}

Mat join(const Blocks& b) {
  const int pm = int(b.a.rows()), r = int(b.c.rows());
  Mat g(pm + r, pm + r);
  g.topLeftCorner(pm, pm) = b.a;
  g.topRightCorner(pm, r) = b.b;
  g.bottomLeftCorner(r, pm) = b.c;
  g.bottomRightCorner(r, r) = b.d;
  return g;
}

Mat moebius(const Mat& g, int pm, const Mat& z) {
  const Blocks b = split(g, pm);
  return (b.a * z + b.b) * inv0(b.c * z + b.d);
}

Mat phi(const Mat& z) {
  const int pm = int(z.rows());
  const int r = int(z.cols());
  const Mat k = Mat::Identity(pm, pm) - z * z.adjoint();
  const Mat ki = inv0(k);
  return join(Blocks{2.0 * ki - Mat::Identity(pm, pm), -2.0 * ki * z,
                     2.0 * z.adjoint() * ki,
                     -2.0 * z.adjoint() * ki * z - Mat::Identity(r, r)});
}

Mat lift(const Mat& z) {
  const int pm = int(z.rows());
  const int r = int(z.cols());
  const Mat kmh = herm_pow(Mat::Identity(pm, pm) - z * z.adjoint(), -0.5);
  const Mat smh = herm_pow(Mat::Identity(r, r) - z.adjoint() * z, -0.5);
  return join(Blocks{kmh, kmh * z, smh * z.adjoint(), smh});
}

double pseudounitary_residual(const Mat& g, int pm) {
  const Mat j = jmat(pm, int(g.rows()));
  const double r1 = (g * j * g.adjoint() - j).cwiseAbs().maxCoeff();
  const double r2 = (g.adjoint() * j * g - j).cwiseAbs().maxCoeff();
  return std::max(r1, r2);
}

Complexd omega(const Mat& u, const Mat& v, const Mat& z, int pm) {
  const Mat g = lift(z);
  const Mat gi = inv0(g);
  const Mat j = jmat(pm, int(g.rows()));
  const Mat au = gi * u * g;
  const Mat av = gi * v * g;
  const Mat p = j * au - au * j;
  const Mat q = j * av - av * j;
  return Complexd(0, 0.125) * tr0(j * (p * q - q * p));
}

Complexd moment_map(const Mat& u, const Mat& z, int pm) {
  const Mat j = jmat(pm, int(z.rows() + z.cols()));
  return Complexd(0, 0.5) * tr0((phi(z) - j) * u);
}

Complexd cocycle(const Mat& u, const Mat& v, int pm) {
  const Mat j = jmat(pm, int(u.rows()));
  return Complexd(0, 0.5) * tr0((j * u - u * j) * v);
}

Complexd theta_s(const Mat& z, const Mat& dz, const Mat& dzbar, int k) {
  const Mat si = inv0(Mat::Identity(z.cols(), z.cols()) - z.adjoint() * z);
  const Complexd anti = tr0(si * dzbar.adjoint() * z);
  const Complexd holo = tr0(si * z.adjoint() * dz);
  return double(k) * (anti - holo);
}

Complexd weight(const Mat& z, int k) {
  const Mat s = Mat::Identity(z.cols(), z.cols()) - z.adjoint() * z;
  return std::pow(det0(s), k);
}

int Poly::degree() const {
  int d = 0;
  for (const Term& t : terms) {
    int td = 0;
    for (const auto& v : t.vars) td += v[2];
    d = std::max(d, td);
  }
  return d;
}

Complexd Poly::eval(const Mat& z) const {
  Complexd acc(0);
  for (const Term& t : terms) {
    Complexd m = t.coeff;
    for (const auto& v : t.vars)
      for (int p = 0; p < v[2]; ++p) m *= z(v[0], v[1]);
    acc += m;
  }
  return acc;
}

Complexd directional_derivative(const Poly& p, const Mat& z, const Mat& v) {
  // p(z + t v) is a polynomial of degree d in t; differentiate the
  // interpolant through the nodes t = 0..d exactly
  const int d = std::max(1, p.degree());
  Eigen::MatrixXcd vand(d + 1, d + 1);
  Eigen::VectorXcd vals(d + 1);
  for (int i = 0; i <= d; ++i) {
    const double t = double(i);
    for (int j = 0; j <= d; ++j) vand(i, j) = std::pow(t, j);
    vals(i) = p.eval(z + t * v);
  }
  Eigen::VectorXcd coeffs = vand.fullPivLu().solve(vals);
  return coeffs(1);  // derivative at t = 0
}

Complexd fhat_value(const Mat& u, const Poly& p, int k, const Mat& z, int pm) {
  const Blocks b = split(u, pm);
  const Mat vu = b.a * z + b.b - z * b.c * z - z * b.d;
  const Complexd lie = directional_derivative(p, z, vu);
  const Complexd mult = tr0(b.c * z);
  return Complexd(0, -1.0 / k) * lie + Complexd(0, 1) * mult * p.eval(z);
}

Complexd rho_value(const Mat& g, const Poly& p, int k, const Mat& z, int pm) {
  const Blocks b = split(g, pm);
  const Mat arg = inv0(b.d) * b.c * z + Mat::Identity(z.cols(), z.cols());
  return std::pow(det0(arg), -k) * p.eval(moebius(g, pm, z));
}

Complexd central_term(const Mat& g1, const Mat& g2, int k, int pm) {
  const Blocks b1 = split(g1, pm);
  const Blocks b2 = split(g2, pm);
  const Mat arg = inv0(b1.d * b2.d) * b1.c * b2.b +
                  Mat::Identity(b1.d.rows(), b1.d.cols());
  return std::pow(det0(arg), k);
}

}  // namespace sdisc::classical
