#include "sdisc/supermatrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace sdisc {

Eigen::MatrixXcd body(const SuperMatrix& m) {
  Eigen::MatrixXcd b(m.rows().dim(), m.cols().dim());
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) b(i, j) = m.at(i, j).body();
  return b;
}

SuperMatrix from_body(const Eigen::MatrixXcd& b, const Space& rows, const Space& cols,
                      int n_pairs, MatType t) {
  detail::require(b.rows() == rows.dim() && b.cols() == cols.dim(),
                  "from_body: dimension mismatch");
  SuperMatrix m(rows, cols, n_pairs, t);
  for (int i = 0; i < rows.dim(); ++i)
    for (int j = 0; j < cols.dim(); ++j) m.at(i, j) = Grassmann(n_pairs, b(i, j));
  return m;
}

SuperMatrix matrix_soul(const SuperMatrix& m) {
  SuperMatrix s = m;
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) s.at(i, j).set_coeff(0, Complex(0));
  return s;
}

namespace {

void check_body_condition(const Eigen::MatrixXcd& b, double cond_limit, const char* who) {
  if (b.rows() == 0) return;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > cond_limit)
    throw SingularError(std::string(who) + ": body is singular or ill-conditioned");
}

// Determinant over the commutative subring of even elements, by Gaussian
// elimination with body-magnitude pivoting.
Grassmann det_even(SuperMatrix a, double /*cond_limit*/) {
  const int d = a.rows().dim();
  const int n = a.n_pairs();
  Grassmann det(n, Complex(1));
  int sign = 1;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    double best = std::abs(a.at(col, col).body());
    for (int r = col + 1; r < d; ++r) {
      const double v = std::abs(a.at(r, col).body());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-14)
      throw SingularError("sdet: pivot body vanished during elimination");
    if (piv != col) {
      for (int j = 0; j < d; ++j) std::swap(a.at(col, j), a.at(piv, j));
      sign = -sign;
    }
    det = det * a.at(col, col);
    const Grassmann ip = inverse(a.at(col, col));
    for (int r = col + 1; r < d; ++r) {
      const Grassmann f = a.at(r, col) * ip;
      if (max_abs_coeff(f) == 0.0) continue;
      for (int j = col; j < d; ++j) {
        Grassmann t(n);
        t.add_product(f, a.at(col, j));
        a.at(r, j) -= t;
      }
    }
  }
  return double(sign) * det;
}

// parity-split block extraction (even|odd grading)
SuperMatrix parity_block(const SuperMatrix& m, bool row_odd, bool col_odd) {
  const Space rs = row_odd ? odd_part(m.rows()) : even_part(m.rows());
  const Space cs = col_odd ? odd_part(m.cols()) : even_part(m.cols());
  const int r0 = row_odd ? m.rows().p_minus + m.rows().p_plus : 0;
  const int c0 = col_odd ? m.cols().p_minus + m.cols().p_plus : 0;
  SuperMatrix out(rs, cs, m.n_pairs(), m.type());
  for (int i = 0; i < rs.dim(); ++i)
    for (int j = 0; j < cs.dim(); ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

}  // namespace

SuperMatrix inverse(const SuperMatrix& m, double cond_limit) {
  detail::require(m.square(), "inverse: matrix must be square");
  const int n = m.n_pairs();
  const Eigen::MatrixXcd b = body(m);
  check_body_condition(b, cond_limit, "inverse");
  const Eigen::MatrixXcd binv =
      b.rows() == 0 ? b : Eigen::MatrixXcd(b.partialPivLu().inverse());
  const SuperMatrix bi = from_body(binv, m.rows(), m.rows(), n, m.type());
  // M = B (1 + N), N = B^-1 M_soul nilpotent: M^-1 = sum (-N)^k B^-1
  const SuperMatrix nil = bi * matrix_soul(m);
  SuperMatrix acc = SuperMatrix::identity(m.rows(), n);
  SuperMatrix pw = acc;
  for (int k = 1; k <= 2 * n; ++k) {
    pw = -(pw * nil);
    if (max_abs_coeff(pw) == 0.0) break;
    acc += pw;
  }
  SuperMatrix out = acc * bi;
  out.set_type(m.type());
  return out;
}

Grassmann sdet(const SuperMatrix& m, double cond_limit) {
  detail::require(m.square(), "sdet: matrix must be square");
  if (m.type() != MatType::Even)
    throw ParityError("sdet: matrix must be of even type");
  const int q = m.rows().q;
  const int p = m.rows().p_minus + m.rows().p_plus;
  if (q == 0) return det_even(m, cond_limit);
  const SuperMatrix dd = parity_block(m, true, true);
  const Grassmann det_d = det_even(dd, cond_limit);
  if (p == 0) return inverse(det_d);
  const SuperMatrix aa = parity_block(m, false, false);
  const SuperMatrix bb = parity_block(m, false, true);
  const SuperMatrix cc = parity_block(m, true, false);
  const SuperMatrix schur = aa - bb * inverse(dd, cond_limit) * cc;
  return det_even(schur, cond_limit) * inverse(det_d);
}

namespace {

void check_hermitian_pd_body(const SuperMatrix& m, Eigen::MatrixXcd& b,
                             Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& es,
                             const char* who) {
  detail::require(m.square(), "pow: matrix must be square");
  b = body(m);
  if (b.rows() == 0) return;
  const double scale = 1.0 + b.norm();
  if ((b - b.adjoint()).norm() > 1e-10 * scale)
    throw BranchError(std::string(who) + ": body is not hermitian");
  es.compute(b);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw BranchError(std::string(who) + ": body spectrum is not positive");
}

}  // namespace

std::pair<SuperMatrix, SuperMatrix> sqrt_pair(const SuperMatrix& m, const PowOptions& opts) {
  Eigen::MatrixXcd b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  check_hermitian_pd_body(m, b, es, "sqrt");
  const double scale = 1.0 + max_abs_coeff(m);
  // Denman-Beavers: Y -> sqrt(M), Z -> sqrt(M)^-1
  SuperMatrix y = m;
  SuperMatrix z = SuperMatrix::identity(m.rows(), m.n_pairs());
  for (int it = 0; it < opts.max_iter; ++it) {
    SuperMatrix yn = (y + inverse(z, opts.cond_limit)) * Complex(0.5);
    SuperMatrix zn = (z + inverse(y, opts.cond_limit)) * Complex(0.5);
    y = std::move(yn);
    z = std::move(zn);
    if (max_coeff_dist(y * y, m) < opts.tol * scale) {
      y.set_type(m.type());
      z.set_type(m.type());
      return {y, z};
    }
  }
  throw ConvergenceError("sqrt: Denman-Beavers iteration did not converge");
}

namespace {

// confluent divided differences of f(x) = x^alpha over sorted points
class PowerDivDiff {
 public:
  PowerDivDiff(double alpha, std::vector<double> eigs) : alpha_(alpha), d_(std::move(eigs)) {}

  // key: sorted chain of eigenvalue indices
  double operator()(std::vector<int> key) {
    std::sort(key.begin(), key.end());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const size_t k = key.size();
    std::vector<double> x(k);
    for (size_t i = 0; i < k; ++i) x[i] = d_[key[i]];
    // Hermite-Newton table; repeated points use f^{(m)}(x)/m!
    std::vector<double> col(k);
    for (size_t i = 0; i < k; ++i) col[i] = std::pow(x[i], alpha_);
    for (size_t m = 1; m < k; ++m) {
      std::vector<double> next(k - m);
      double dcoef = 1.0;
      for (size_t j = 0; j < m; ++j) dcoef *= (alpha_ - double(j)) / double(j + 1);
      for (size_t i = 0; i + m < k; ++i) {
        if (x[i + m] == x[i])
          next[i] = dcoef * std::pow(x[i], alpha_ - double(m));
        else
          next[i] = (col[i + 1] - col[i]) / (x[i + m] - x[i]);
      }
      col = std::move(next);
    }
    const double v = col[0];
    cache_.emplace(std::move(key), v);
    return v;
  }

 private:
  double alpha_;
  std::vector<double> d_;
  std::map<std::vector<int>, double> cache_;
};

}  // namespace

SuperMatrix pow_integral(const SuperMatrix& m, double alpha) {
  if (alpha <= -1.0 || alpha >= 1.0 || alpha == 0.0)
    throw BranchError("pow_integral: alpha must lie in (-1,0) u (0,1)");
  if (alpha > 0.0) return m * pow_integral(m, alpha - 1.0);

  Eigen::MatrixXcd b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  check_hermitian_pd_body(m, b, es, "pow_integral");
  const int d = int(b.rows());
  const int n = m.n_pairs();
  if (d == 0) return m;

  // cluster near-equal eigenvalues so the divided-difference table stays
  // well conditioned
  std::vector<double> eig(d);
  for (int i = 0; i < d; ++i) eig[i] = es.eigenvalues()(i);
  const double snap = 1e-9 * std::max(1.0, *std::max_element(eig.begin(), eig.end()));
  std::vector<double> snapped = eig;
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int c) { return eig[a] < eig[c]; });
  for (int i = 1; i < d; ++i)
    if (snapped[order[i]] - snapped[order[i - 1]] < snap)
      snapped[order[i]] = snapped[order[i - 1]];

  const Eigen::MatrixXcd u = es.eigenvectors();
  const SuperMatrix ul = from_body(u, m.rows(), m.rows(), n);
  const SuperMatrix ula = from_body(u.adjoint(), m.rows(), m.rows(), n);
  const SuperMatrix soul_t = ula * matrix_soul(m) * ul;

  PowerDivDiff divdiff(alpha, snapped);

  SuperMatrix g(m.rows(), m.rows(), n, m.type());
  for (int i = 0; i < d; ++i)
    g.at(i, i) = Grassmann(n, divdiff(std::vector<int>{i}));

  // resolvent chains: term at (i0, ik) is S(i0,i1)...S(i_{k-1},ik) weighted
  // by the divided difference of x^alpha over the chain's eigenvalues
  struct Frame {
    std::vector<int> chain;
    Grassmann prod;
  };
  const int max_k = 2 * n;
  std::vector<Frame> stack;
  for (int i0 = 0; i0 < d; ++i0)
    stack.push_back({{i0}, Grassmann(n, Complex(1))});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const int last = f.chain.back();
    if (int(f.chain.size()) - 1 >= max_k) continue;
    for (int nx = 0; nx < d; ++nx) {
      Grassmann p(n);
      p.add_product(f.prod, soul_t.at(last, nx));
      if (max_abs_coeff(p) == 0.0) continue;
      std::vector<int> chain = f.chain;
      chain.push_back(nx);
      std::vector<int> key = chain;
      const double w = divdiff(std::move(key));
      g.at(chain.front(), nx).add_scaled(p, w);
      stack.push_back({std::move(chain), std::move(p)});
    }
  }
  SuperMatrix out = ul * g * ula;
  out.set_type(m.type());
  return out;
}

SuperMatrix pow(const SuperMatrix& m, double alpha, const PowOptions& opts) {
  {
    Eigen::MatrixXcd b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    check_hermitian_pd_body(m, b, es, "pow");
  }
  const double r = std::round(alpha);
  if (std::abs(alpha - r) < 1e-15)
    return matrix_int_pow(m, int(r), opts.cond_limit);
  const double r2 = std::round(2.0 * alpha);
  if (std::abs(2.0 * alpha - r2) < 1e-15) {
    auto [sq, isq] = sqrt_pair(m, opts);
    const int half = int(r2);  // alpha = half / 2, half odd
    SuperMatrix out = (half > 0)
                          ? matrix_int_pow(m, (half - 1) / 2, opts.cond_limit) * sq
                          : matrix_int_pow(m, (half + 1) / 2, opts.cond_limit) * isq;
    out.set_type(m.type());
    return out;
  }
  const double fl = std::floor(alpha);
  const double frac = alpha - fl;  // in (0,1)
  SuperMatrix out = matrix_int_pow(m, int(fl), opts.cond_limit) * pow_integral(m, frac);
  out.set_type(m.type());
  return out;
}

}  // namespace sdisc
