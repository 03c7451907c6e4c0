#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdisc/jet.hpp"

namespace sdisc {

// Truncation of H = C^{p-} (+) C^{p+} | C^q.  Two block splits coexist:
// the Z2 grading (even = first p-+p+ slots, odd = last q) drives Str and
// sdet; the disc split (first p- slots vs the rest) drives the group and
// disc blocks A,B,C,D.
struct Space {
  int p_minus = 0;
  int p_plus = 0;
  int q = 0;

  int dim() const { return p_minus + p_plus + q; }
  bool odd_slot(int i) const { return i >= p_minus + p_plus; }
  bool plus_slot(int i) const { return i >= p_minus; }
  double j_sign(int i) const { return i < p_minus ? 1.0 : -1.0; }
  bool operator==(const Space&) const = default;
};

inline Space minus_part(const Space& s) { return {s.p_minus, 0, 0}; }
inline Space rest_part(const Space& s) { return {0, s.p_plus, s.q}; }
inline Space even_part(const Space& s) { return {s.p_minus, s.p_plus, 0}; }
inline Space odd_part(const Space& s) { return {0, 0, s.q}; }

enum class MatType { Even, Odd, None };

inline MatType compose_type(MatType a, MatType b) {
  if (a == MatType::None || b == MatType::None) return MatType::None;
  return (a == b) ? MatType::Even : MatType::Odd;
}

inline MatType add_type(MatType a, MatType b) { return a == b ? a : MatType::None; }

// Block matrix over a scalar ring R (Grassmann, or nested jets of it),
// row-major dense.
template <class R>
class MatrixT {
 public:
  MatrixT() = default;
  MatrixT(Space rows, Space cols, int n_pairs, MatType t = MatType::Even)
      : rows_(rows),
        cols_(cols),
        n_(n_pairs),
        type_(t),
        e_(size_t(rows.dim()) * size_t(cols.dim()), RingOps<R>::zero(n_pairs)) {}

  static MatrixT identity(const Space& s, int n_pairs) {
    MatrixT m(s, s, n_pairs, MatType::Even);
    for (int i = 0; i < s.dim(); ++i) m.at(i, i) = RingOps<R>::scalar(n_pairs, 1.0);
    return m;
  }

  const Space& rows() const { return rows_; }
  const Space& cols() const { return cols_; }
  int n_pairs() const { return n_; }
  MatType type() const { return type_; }
  void set_type(MatType t) { type_ = t; }
  bool square() const { return rows_ == cols_; }

  R& at(int i, int j) { return e_[size_t(i) * cols_.dim() + j]; }
  const R& at(int i, int j) const { return e_[size_t(i) * cols_.dim() + j]; }

 private:
  Space rows_, cols_;
  int n_ = 0;
  MatType type_ = MatType::Even;
  std::vector<R> e_;
};

using SuperMatrix = MatrixT<Grassmann>;

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw ShapeError(what);
}
// product work threshold (in complex fma units) above which the OpenMP
// kernel is used
inline constexpr int64_t kParallelWork = int64_t(1) << 21;
}  // namespace detail

// ---------------------------------------------------------------------------
// ring-generic arithmetic

namespace kernels {

template <class R>
MatrixT<R> smul_serial(const MatrixT<R>& a, const MatrixT<R>& b) {
  detail::require(a.cols() == b.rows() && a.n_pairs() == b.n_pairs(),
                  "matrix product: nonconformable operands");
  MatrixT<R> out(a.rows(), b.cols(), a.n_pairs(), compose_type(a.type(), b.type()));
  const int m = a.rows().dim(), kk = a.cols().dim(), p = b.cols().dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) {
      R acc = RingOps<R>::zero(a.n_pairs());
      for (int k = 0; k < kk; ++k) RingOps<R>::madd(acc, a.at(i, k), b.at(k, j));
      out.at(i, j) = std::move(acc);
    }
  return out;
}

template <class R>
MatrixT<R> smul_parallel(const MatrixT<R>& a, const MatrixT<R>& b) {
  detail::require(a.cols() == b.rows() && a.n_pairs() == b.n_pairs(),
                  "matrix product: nonconformable operands");
  MatrixT<R> out(a.rows(), b.cols(), a.n_pairs(), compose_type(a.type(), b.type()));
  const int m = a.rows().dim(), kk = a.cols().dim(), p = b.cols().dim();
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) {
      R acc = RingOps<R>::zero(a.n_pairs());
      for (int k = 0; k < kk; ++k) RingOps<R>::madd(acc, a.at(i, k), b.at(k, j));
      out.at(i, j) = std::move(acc);
    }
  return out;
}

}  // namespace kernels

namespace ref {
inline SuperMatrix mul(const SuperMatrix& a, const SuperMatrix& b) {
  // outer-product accumulation order; independent of the production kernel
  detail::require(a.cols() == b.rows() && a.n_pairs() == b.n_pairs(),
                  "matrix product: nonconformable operands");
  SuperMatrix out(a.rows(), b.cols(), a.n_pairs(), compose_type(a.type(), b.type()));
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int k = 0; k < a.cols().dim(); ++k)
      for (int j = 0; j < b.cols().dim(); ++j)
        out.at(i, j) += ref::mul(a.at(i, k), b.at(k, j));
  return out;
}
}  // namespace ref

template <class R>
MatrixT<R> operator*(const MatrixT<R>& a, const MatrixT<R>& b) {
  const int64_t work = int64_t(a.rows().dim()) * a.cols().dim() * b.cols().dim() *
                       (int64_t(1) << (2 * a.n_pairs()));
  if (work >= detail::kParallelWork) return kernels::smul_parallel(a, b);
  return kernels::smul_serial(a, b);
}

template <class R>
MatrixT<R>& operator+=(MatrixT<R>& a, const MatrixT<R>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols() && a.n_pairs() == b.n_pairs(),
                  "matrix sum: shape mismatch");
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j) a.at(i, j) += b.at(i, j);
  a.set_type(add_type(a.type(), b.type()));
  return a;
}

template <class R>
MatrixT<R> operator+(const MatrixT<R>& a, const MatrixT<R>& b) {
  MatrixT<R> r = a;
  r += b;
  return r;
}

template <class R>
MatrixT<R> operator-(const MatrixT<R>& a, const MatrixT<R>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols() && a.n_pairs() == b.n_pairs(),
                  "matrix difference: shape mismatch");
  MatrixT<R> r = a;
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j) r.at(i, j) -= b.at(i, j);
  r.set_type(add_type(a.type(), b.type()));
  return r;
}

template <class R>
MatrixT<R> operator-(const MatrixT<R>& a) {
  MatrixT<R> r = a;
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j) r.at(i, j) = -r.at(i, j);
  return r;
}

template <class R>
MatrixT<R> operator*(const MatrixT<R>& a, Complex s) {
  MatrixT<R> r = a;
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j) r.at(i, j) = r.at(i, j) * s;
  return r;
}

template <class R>
MatrixT<R> operator*(Complex s, const MatrixT<R>& a) {
  return a * s;
}

// left multiplication by a ring scalar
template <class R>
MatrixT<R> scale(const R& s, const MatrixT<R>& a) {
  MatrixT<R> r = a;
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j) r.at(i, j) = s * r.at(i, j);
  return r;
}

template <class R>
double max_abs_coeff(const MatrixT<R>& m) {
  double v = 0.0;
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j)
      v = std::max(v, RingOps<R>::max_abs(m.at(i, j)));
  return v;
}

template <class R>
double max_coeff_dist(const MatrixT<R>& a, const MatrixT<R>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols() && a.n_pairs() == b.n_pairs(),
                  "matrix distance: shape mismatch");
  return max_abs_coeff(a - b);
}

inline bool exactly_equal(const SuperMatrix& a, const SuperMatrix& b) {
  if (!(a.rows() == b.rows()) || !(a.cols() == b.cols()) || a.n_pairs() != b.n_pairs())
    return false;
  for (int i = 0; i < a.rows().dim(); ++i)
    for (int j = 0; j < a.cols().dim(); ++j)
      if (!exactly_equal(a.at(i, j), b.at(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// graded structure

// Supertrace: trace over even slots minus (-1)^{|M|} times the trace over
// odd slots.  The declared-type sign on the odd block is what makes
// Str(MN) = (-1)^{|M||N|} Str(NM) hold for odd-typed operands; on even
// matrices it is the plain even-minus-odd trace.
template <class R>
R str(const MatrixT<R>& m) {
  detail::require(m.square(), "str: matrix must be square");
  const bool odd_type = m.type() == MatType::Odd;
  R acc = RingOps<R>::zero(m.n_pairs());
  for (int i = 0; i < m.rows().dim(); ++i) {
    if (m.rows().odd_slot(i) && !odd_type)
      acc -= m.at(i, i);
    else
      acc += m.at(i, i);
  }
  return acc;
}

template <class R>
MatrixT<R> conjugate_by_j(const MatrixT<R>& m) {
  detail::require(m.square(), "conjugate_by_j: matrix must be square");
  MatrixT<R> r = m;
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) {
      const double s = m.rows().j_sign(i) * m.cols().j_sign(j);
      if (s < 0) r.at(i, j) = -r.at(i, j);
    }
  return r;
}

// Conditional supertrace (1/2) Str[M + J M J]; coincides with str at finite
// truncation and both are computed here so callers can compare.
template <class R>
R str_j(const MatrixT<R>& m) {
  R a = str(m);
  R b = str(conjugate_by_j(m));
  return (a + b) * Complex(0.5);
}

// adjoint: (M^dag)_{ij} = star(M_{ji})
inline SuperMatrix dagger(const SuperMatrix& m) {
  SuperMatrix r(m.cols(), m.rows(), m.n_pairs(), m.type());
  for (int i = 0; i < m.cols().dim(); ++i)
    for (int j = 0; j < m.rows().dim(); ++j) r.at(i, j) = star(m.at(j, i));
  return r;
}

inline SuperMatrix j_matrix(const Space& s, int n_pairs) {
  SuperMatrix m(s, s, n_pairs, MatType::Even);
  for (int i = 0; i < s.dim(); ++i) m.at(i, i) = Grassmann(n_pairs, s.j_sign(i));
  return m;
}

// Graded commutator XY - (-1)^{|X||Y|} YX for declared homogeneous types.
template <class R>
MatrixT<R> commutator_s(const MatrixT<R>& x, const MatrixT<R>& y) {
  if (x.type() == MatType::None || y.type() == MatType::None)
    throw ParityError("commutator_s: operands need a declared parity type");
  const bool anti = (x.type() == MatType::Odd && y.type() == MatType::Odd);
  MatrixT<R> r = x * y;
  MatrixT<R> yx = y * x;
  if (anti)
    r += yx;
  else
    r = r - yx;
  return r;
}

// ---------------------------------------------------------------------------
// block access (disc split)

enum class Part { Minus, Rest };

template <class R>
MatrixT<R> disc_block(const MatrixT<R>& m, Part rp, Part cp) {
  const Space rs = (rp == Part::Minus) ? minus_part(m.rows()) : rest_part(m.rows());
  const Space cs = (cp == Part::Minus) ? minus_part(m.cols()) : rest_part(m.cols());
  const int r0 = (rp == Part::Minus) ? 0 : m.rows().p_minus;
  const int c0 = (cp == Part::Minus) ? 0 : m.cols().p_minus;
  MatrixT<R> out(rs, cs, m.n_pairs(), m.type());
  for (int i = 0; i < rs.dim(); ++i)
    for (int j = 0; j < cs.dim(); ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

template <class R>
MatrixT<R> from_disc_blocks(const MatrixT<R>& a, const MatrixT<R>& b, const MatrixT<R>& c,
                            const MatrixT<R>& d) {
  const Space rows{a.rows().p_minus, c.rows().p_plus, c.rows().q};
  const Space cols{a.cols().p_minus, b.cols().p_plus, b.cols().q};
  detail::require(a.rows().dim() == b.rows().dim() && c.rows().dim() == d.rows().dim() &&
                      a.cols().dim() == c.cols().dim() && b.cols().dim() == d.cols().dim(),
                  "from_disc_blocks: inconsistent block shapes");
  MatrixT<R> m(rows, cols, a.n_pairs(), a.type());
  const int pm_r = a.rows().dim(), pm_c = a.cols().dim();
  for (int i = 0; i < rows.dim(); ++i)
    for (int j = 0; j < cols.dim(); ++j) {
      if (i < pm_r)
        m.at(i, j) = (j < pm_c) ? a.at(i, j) : b.at(i, j - pm_c);
      else
        m.at(i, j) = (j < pm_c) ? c.at(i - pm_r, j) : d.at(i - pm_r, j - pm_c);
    }
  return m;
}

// split the columns of a rest-space matrix into the plus block and the odd
// block ([b beta] decomposition)
template <class R>
std::pair<MatrixT<R>, MatrixT<R>> split_cols_plus_odd(const MatrixT<R>& m) {
  const int pp = m.cols().p_plus, qq = m.cols().q;
  MatrixT<R> b(m.rows(), Space{0, pp, 0}, m.n_pairs(), m.type());
  MatrixT<R> beta(m.rows(), Space{0, 0, qq}, m.n_pairs(), m.type());
  for (int i = 0; i < m.rows().dim(); ++i) {
    for (int j = 0; j < pp; ++j) b.at(i, j) = m.at(i, j);
    for (int j = 0; j < qq; ++j) beta.at(i, j) = m.at(i, pp + j);
  }
  return {std::move(b), std::move(beta)};
}

template <class R>
MatrixT<R> join_cols_plus_odd(const MatrixT<R>& b, const MatrixT<R>& beta) {
  const Space cols{0, b.cols().p_plus, beta.cols().q};
  MatrixT<R> m(b.rows(), cols, b.n_pairs(), b.type());
  for (int i = 0; i < m.rows().dim(); ++i) {
    for (int j = 0; j < b.cols().p_plus; ++j) m.at(i, j) = b.at(i, j);
    for (int j = 0; j < beta.cols().q; ++j) m.at(i, b.cols().p_plus + j) = beta.at(i, j);
  }
  return m;
}

// lift a Grassmann matrix entrywise into a (possibly nested) jet ring
template <class R>
MatrixT<R> matrix_lift(const SuperMatrix& m) {
  MatrixT<R> out(m.rows(), m.cols(), m.n_pairs(), m.type());
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) out.at(i, j) = RingOps<R>::lift(m.at(i, j));
  return out;
}

template <class R>
std::pair<MatrixT<R>, MatrixT<R>> jet_split(const MatrixT<Jet<R>>& m) {
  MatrixT<R> v(m.rows(), m.cols(), m.n_pairs(), m.type());
  MatrixT<R> d(m.rows(), m.cols(), m.n_pairs(), m.type());
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) {
      v.at(i, j) = m.at(i, j).v;
      d.at(i, j) = m.at(i, j).d;
    }
  return {std::move(v), std::move(d)};
}

template <class R>
MatrixT<Jet<R>> jet_join(const MatrixT<R>& v, const MatrixT<R>& d) {
  detail::require(v.rows() == d.rows() && v.cols() == d.cols(), "jet_join: shape mismatch");
  MatrixT<Jet<R>> m(v.rows(), v.cols(), v.n_pairs(), v.type());
  for (int i = 0; i < v.rows().dim(); ++i)
    for (int j = 0; j < v.cols().dim(); ++j) m.at(i, j) = Jet<R>{v.at(i, j), d.at(i, j)};
  return m;
}

// ---------------------------------------------------------------------------
// body <-> Eigen

Eigen::MatrixXcd body(const SuperMatrix& m);
SuperMatrix from_body(const Eigen::MatrixXcd& b, const Space& rows, const Space& cols,
                      int n_pairs, MatType t = MatType::Even);
SuperMatrix matrix_soul(const SuperMatrix& m);

// ---------------------------------------------------------------------------
// analytic operations (Grassmann base case in supermatrix.cpp, jets recurse)

inline constexpr double kDefaultCondLimit = 1e8;

// Body inverse (LU) times the terminating Neumann series in the soul.
SuperMatrix inverse(const SuperMatrix& m, double cond_limit = kDefaultCondLimit);

template <class R>
MatrixT<Jet<R>> inverse(const MatrixT<Jet<R>>& m, double cond_limit = kDefaultCondLimit) {
  auto [v, d] = jet_split(m);
  auto iv = inverse(v, cond_limit);
  return jet_join(iv, -(iv * d * iv));
}

// Berezinian det(A - B D^-1 C) det(D)^-1 in the even|odd grading.
Grassmann sdet(const SuperMatrix& m, double cond_limit = kDefaultCondLimit);

template <class R>
Jet<R> sdet(const MatrixT<Jet<R>>& m, double cond_limit = kDefaultCondLimit) {
  auto [v, d] = jet_split(m);
  R sv = sdet(v, cond_limit);
  R tr = str(inverse(v, cond_limit) * d);  // d log sdet = Str(M^-1 dM)
  return {sv, sv * tr};
}

// integer power of a ring scalar
template <class R>
R scalar_int_pow(const R& x, int k) {
  const int n = RingOps<R>::n_pairs(x);
  R base = (k < 0) ? RingOps<R>::inverse(x) : x;
  int e = k < 0 ? -k : k;
  R acc = RingOps<R>::scalar(n, 1.0);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

template <class R>
MatrixT<R> matrix_int_pow(const MatrixT<R>& m, int k,
                          double cond_limit = kDefaultCondLimit) {
  detail::require(m.square(), "matrix_int_pow: matrix must be square");
  MatrixT<R> base = (k < 0) ? inverse(m, cond_limit) : m;
  int e = k < 0 ? -k : k;
  MatrixT<R> acc = MatrixT<R>::identity(m.rows(), m.n_pairs());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

struct PowOptions {
  double cond_limit = kDefaultCondLimit;
  double tol = 1e-13;
  int max_iter = 100;
};

// Principal power for hermitian positive-definite body.  Half-integer
// exponents go through the Denman-Beavers square-root iteration; other
// exponents through the integral representation (pow_integral).
SuperMatrix pow(const SuperMatrix& m, double alpha, const PowOptions& opts = {});

// Closed-form evaluation of the integral representation of A^alpha for
// alpha in (-1,0) u (0,1): partial-fraction lambda-integrals in the body
// eigenbasis, with the terminating resolvent expansion supplying the exact
// nilpotent corrections.  Independent of the Newton route.
SuperMatrix pow_integral(const SuperMatrix& m, double alpha);

// both M^{1/2} and M^{-1/2} from one Denman-Beavers run
std::pair<SuperMatrix, SuperMatrix> sqrt_pair(const SuperMatrix& m,
                                              const PowOptions& opts = {});

// scaling-and-squaring Taylor exponential, ring-generic
template <class R>
MatrixT<R> exp(const MatrixT<R>& m) {
  detail::require(m.square(), "exp: matrix must be square");
  const int n = m.n_pairs();
  double nrm = max_abs_coeff(m);
  int s = 0;
  while (nrm > 0.5 && s < 50) {
    nrm /= 2;
    ++s;
  }
  MatrixT<R> x = m * Complex(std::ldexp(1.0, -s));
  MatrixT<R> acc = MatrixT<R>::identity(m.rows(), n);
  MatrixT<R> term = acc;
  bool converged = false;
  for (int k = 1; k <= 64; ++k) {
    term = term * x * Complex(1.0 / k);
    acc += term;
    if (max_abs_coeff(term) < 1e-17 * (1.0 + max_abs_coeff(acc))) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("exp: Taylor series did not converge");
  acc.set_type(MatType::Even);
  for (int i = 0; i < s; ++i) acc = acc * acc;
  return acc;
}

}  // namespace sdisc
