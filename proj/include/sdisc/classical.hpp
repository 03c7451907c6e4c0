#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace sdisc::classical {

// Reference implementation of the ordinary (q = 0, no Grassmann generators)
// disc in plain complex matrices.  Independent of the supermatrix stack;
// used to pin down the classical reduction of every geometric quantity.

using Mat = Eigen::MatrixXcd;
using Complexd = std::complex<double>;

struct Blocks {
  Mat a, b, c, d;
};

Blocks split(const Mat& g, int p_minus);
Mat join(const Blocks& b);

Mat moebius(const Mat& g, int p_minus, const Mat& z);
Mat phi(const Mat& z);          // full-space involution
Mat lift(const Mat& z);         // coset section, eigendecomposition square roots
double pseudounitary_residual(const Mat& g, int p_minus);

Complexd omega(const Mat& u, const Mat& v, const Mat& z, int p_minus);
Complexd moment_map(const Mat& u, const Mat& z, int p_minus);
Complexd cocycle(const Mat& u, const Mat& v, int p_minus);

Complexd theta_s(const Mat& z, const Mat& dz, const Mat& dzbar, int k);
Complexd weight(const Mat& z, int k);  // det^k(1 - z^dag z)

// polynomial in the entries of z (w only; the classical slice has no theta)
struct Poly {
  struct Term {
    Complexd coeff;
    std::vector<std::array<int, 3>> vars;  // row, col, power
  };
  std::vector<Term> terms;
  int degree() const;
  Complexd eval(const Mat& z) const;
};

// derivative of p along direction v at z, by exact polynomial interpolation
Complexd directional_derivative(const Poly& p, const Mat& z, const Mat& v);

Complexd fhat_value(const Mat& u, const Poly& p, int k, const Mat& z, int p_minus);
Complexd rho_value(const Mat& g, const Poly& p, int k, const Mat& z, int p_minus);
Complexd central_term(const Mat& g1, const Mat& g2, int k, int p_minus);

}  // namespace sdisc::classical
