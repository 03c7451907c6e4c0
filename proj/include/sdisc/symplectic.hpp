#pragma once

#include <utility>
#include <vector>

#include "sdisc/disc.hpp"

namespace sdisc {

struct TangentVector {
  SuperMatrix dw;      // same shape as DiscPoint::w
  SuperMatrix dtheta;  // same shape as DiscPoint::theta
  SuperMatrix z() const { return join_cols_plus_odd(dw, dtheta); }
};

// Action vector field at Z, as the eps-jet of moebius(exp(eps u), Z);
// exp(eps u) = 1 + eps u exactly since eps^2 = 0.
TangentVector vector_field(const LieElement& u, const DiscPoint& p);

// Closed form u11 Z + u12 - Z u21 Z - Z u22 of the same field, ring-generic
// so sections can evaluate it on jet-extended points.
template <class R>
MatrixT<R> vector_field_closed(const LieElement& u, const MatrixT<R>& z) {
  auto [u11, u12, u21, u22] = disc_blocks(u.m);
  const auto a = matrix_lift<R>(u11);
  const auto b = matrix_lift<R>(u12);
  const auto c = matrix_lift<R>(u21);
  const auto d = matrix_lift<R>(u22);
  return a * z + b - z * c * z - z * d;
}

// Homogeneous two-form on action fields:
//   Omega(V_u, V_v) = (i/8) Str J [[J, g^-1 u g], [J, g^-1 v g]]   g = lift(Z)
Grassmann omega(const LieElement& u, const LieElement& v, const DiscPoint& p);

// same value from a precomputed section, for callers that reuse lift(Z)
Grassmann omega_at(const LieElement& u, const LieElement& v, const GroupElement& g_of_z);

// Moment map F_u = (i/2) Str_J[(Phi(Z) - J) u], ring-generic in the point.
template <class R>
R moment_map_z(const LieElement& u, const MatrixT<R>& z, const MatrixT<R>& zdag) {
  const auto f = phi_z(z, zdag);
  const auto j = matrix_lift<R>(j_matrix(u.space(), u.n_pairs()));
  auto diff = f - j;
  diff.set_type(MatType::Even);
  return str_j(diff * matrix_lift<R>(u.m)) * Complex(0, 0.5);
}

Grassmann moment_map(const LieElement& u, const DiscPoint& p);

// Central cocycle Sigma(u,v) = (i/2) Str_J([J, u] v).
Grassmann cocycle(const LieElement& u, const LieElement& v);

// Same value from the off-diagonal blocks, with u12 = [b1 beta1]:
//   i [ Tr(b1 b2^dag - b2 b1^dag) + Tr(beta1 beta2^dag - beta2 beta1^dag) ]
// Derived under the conventions fixed here (plain star, entrywise adjoint);
// kept as an independent route.
Grassmann cocycle_explicit(const LieElement& u, const LieElement& v);

// Signs relating Omega, F and Sigma in the realization identity
//   Omega(V_u, V_v) = s_moment * F_{[u,v]} + s_cocycle * Sigma(u,v).
// s_cocycle is fixed at Z = 0 where F vanishes; s_moment at a fixed probe
// point.  Both are measured once, deterministically.
struct PoissonConvention {
  double s_moment;
  double s_cocycle;
};

PoissonConvention measure_poisson_convention(const Space& s, int n_pairs);

// Max coefficient residual of the realization identity under the given
// sign convention.
double poisson_residual(const LieElement& u, const LieElement& v, const DiscPoint& p,
                        const PoissonConvention& conv);

// Directional derivative of F_u along V_v at Z, via jets.
Grassmann moment_map_derivative(const LieElement& u, const LieElement& v,
                                const DiscPoint& p);

// Single-step bracket evaluation {H, F_v} at Z for a Hamiltonian
// H = sum_i c_i F_{u_i}; every bracket between moment maps routes through
// the two-form on action fields (no Poisson bivector is constructed).
Grassmann poisson_bracket(const std::vector<std::pair<Complex, LieElement>>& hamiltonian,
                          const LieElement& v, const DiscPoint& p);

// Rank data for the origin two-form over a spanning real basis of
// off-diagonal directions (all soul levels included).
struct OriginGram {
  int dimension;    // number of basis directions
  double sigma_min;
  double sigma_max;
  bool full_rank;   // sigma_min > 1e-8 * sigma_max
};

OriginGram origin_gram(const Space& s, int n_pairs);

}  // namespace sdisc
