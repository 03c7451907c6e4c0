#pragma once

#include <cstdint>
#include <utility>

#include "sdisc/supermatrix.hpp"

namespace sdisc {

// Point Z = [w theta] of the super unit disc: w maps the plus even space
// into the minus space (even entries), theta maps the odd space into the
// minus space (odd entries).  Membership asks sigma_max(body(w)) < 1.
struct DiscPoint {
  SuperMatrix w;      // p- x p+
  SuperMatrix theta;  // p- x q

  Space space() const { return {w.rows().p_minus, w.cols().p_plus, theta.cols().q}; }
  int n_pairs() const { return w.n_pairs(); }
  SuperMatrix z() const { return join_cols_plus_odd(w, theta); }
};

DiscPoint disc_point_from_z(const SuperMatrix& z);
DiscPoint zero_disc_point(const Space& s, int n_pairs);

// Element of the restricted super-pseudounitary group: g J g^dag = J.
struct GroupElement {
  SuperMatrix m;
  Space space() const { return m.rows(); }
  int n_pairs() const { return m.n_pairs(); }
};

// Lie-algebra element: u J + J u^dag = 0, i.e. u11 and u22 anti-hermitian
// and u21 = u12^dag in the disc split.
struct LieElement {
  SuperMatrix m;
  Space space() const { return m.rows(); }
  int n_pairs() const { return m.n_pairs(); }
};

struct DiscMembership {
  bool inside;
  double margin;  // 1 - sigma_max(body(w))^2
};

DiscMembership is_in_disc(const DiscPoint& p);

// disc-split blocks of a full-space matrix
template <class R>
struct DiscBlocks {
  MatrixT<R> a, b, c, d;
};

template <class R>
DiscBlocks<R> disc_blocks(const MatrixT<R>& g) {
  return {disc_block(g, Part::Minus, Part::Minus), disc_block(g, Part::Minus, Part::Rest),
          disc_block(g, Part::Rest, Part::Minus), disc_block(g, Part::Rest, Part::Rest)};
}

// Moebius action Z -> (AZ + B)(CZ + D)^-1, ring-generic so group elements
// and points may both carry jet tangents.
template <class R>
MatrixT<R> moebius_z(const MatrixT<R>& g, const MatrixT<R>& z,
                     double cond_limit = kDefaultCondLimit) {
  auto [a, b, c, d] = disc_blocks(g);
  return (a * z + b) * inverse(c * z + d, cond_limit);
}

DiscPoint moebius(const GroupElement& g, const DiscPoint& p);

// Involution-valued embedding of the disc:
//   Phi = -1 + 2 [[K^-1, -K^-1 Z], [Z^dag K^-1, -Z^dag K^-1 Z]],  K = 1 - Z Z^dag
// with Phi^2 = 1 and J Phi^dag J = Phi.
template <class R>
MatrixT<R> phi_z(const MatrixT<R>& z, const MatrixT<R>& zdag,
                 double cond_limit = kDefaultCondLimit) {
  const int n = z.n_pairs();
  const Space ms = minus_part(z.rows());
  const Space rs = z.cols();
  const auto one_m = MatrixT<R>::identity(ms, n);
  const auto one_r = MatrixT<R>::identity(Space{0, rs.p_plus, rs.q}, n);
  const auto ki = inverse(one_m - z * zdag, cond_limit);
  const auto a = ki * Complex(2) - one_m;
  const auto b = ki * z * Complex(-2);
  const auto c = zdag * ki * Complex(2);
  const auto d = zdag * ki * z * Complex(-2) - one_r;
  auto out = from_disc_blocks(a, b, c, d);
  out.set_type(MatType::Even);
  return out;
}

SuperMatrix phi(const DiscPoint& p);

// Same operator assembled from the rearranged block form
//   Phi = J + [[2 Z S^-1 Z^dag, -2 K^-1 Z], [2 Z^dag K^-1, -2 Z^dag K^-1 Z]]
// kept as an independent route for cross-checks.
SuperMatrix phi_rearranged(const DiscPoint& p);

// Coset section through Z (gauge U = V = 1):
//   g(Z) = [[K^-1/2, K^-1/2 Z], [S^-1/2 Z^dag, S^-1/2]]
// with moebius(lift(Z), 0) = Z and lift(Z) J lift(Z)^-1 = Phi(Z).
GroupElement lift(const DiscPoint& p);

// Max residual over the six pseudounitarity block identities
// (both the gJg^dag = J and g^dag J g = J families).
double check_pseudounitary(const GroupElement& g);
double lie_residual(const LieElement& u);

// Deterministic generators.  Bodies are uniform complex entries rescaled so
// sigma_max(body(w)) <= radius; soul coefficients are uniform with
// magnitude <= soul_scale.
DiscPoint random_disc_point(uint64_t seed, const Space& s, int n_pairs, double radius,
                            double soul_scale);
LieElement random_lie_element(uint64_t seed, const Space& s, int n_pairs, double scale);
GroupElement random_group_element(uint64_t seed, const Space& s, int n_pairs, double scale);

}  // namespace sdisc
