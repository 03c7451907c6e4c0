#pragma once

#include <optional>

#include "sdisc/section.hpp"
#include "sdisc/symplectic.hpp"

namespace sdisc {

// Quantization level k = 1/hbar, integer so sdet^{+-k} is single-valued.
struct QuantLevel {
  int k = 1;
};

// Connection one-form evaluated on tangent data at Z:
//   Theta = k [ Str((1-Z^dag Z)^-1 dZ^dag Z) - Str((1-Z^dag Z)^-1 Z^dag dZ) ]
// dzbar carries the Z^dag-direction as a Z-shaped tangent (its adjoint is
// used).
Grassmann theta_s(const DiscPoint& p, const TangentVector& dz, const TangentVector& dzbar,
                  QuantLevel k);

// Polarization weight sdet^k(1 - Z^dag Z), ring-generic.
template <class R>
R weight_z(const MatrixT<R>& z, const MatrixT<R>& zdag, QuantLevel k) {
  const auto one = MatrixT<R>::identity(z.cols(), z.n_pairs());
  auto s = one - zdag * z;
  s.set_type(MatType::Even);
  return scalar_int_pow(sdet(s), k.k);
}

Grassmann weight(const DiscPoint& p, QuantLevel k);

// Antiholomorphic covariant-derivative residual of psi = weight * Psi along
// the Z^dag-direction dzbar: max coefficient of (L_V + Theta(V)) psi.
double polarization_residual(const DiscPoint& p, const SectionPtr& s, QuantLevel k,
                             const TangentVector& dzbar);

// Quantized moment map on sections:
//   (Fhat_u Psi)(Z) = -(i/k) (L_{V_u} Psi)(Z) + i Str(u21 Z) Psi(Z)
SectionPtr fhat(const LieElement& u, const SectionPtr& s, QuantLevel k);

// Action of a group element on sections, applied with the blocks of the
// argument itself:
//   (rho_g Psi)(Z) = sdet^{-k}(D^-1 C Z + 1) Psi((AZ + B)(CZ + D)^-1)
SectionPtr rho(const GroupElement& g, const SectionPtr& s, QuantLevel k);

// Central term sdet^k[(D1 D2)^-1 C1 B2 + 1].
Grassmann central_term(const GroupElement& g1, const GroupElement& g2, QuantLevel k);

// Composition convention of rho, measured once: whether rho_{g1} rho_{g2}
// tracks g2 g1 or g1 g2, and how the measured ratio maps onto central_term.
struct RhoConvention {
  bool composes_reversed;      // true: rho_g1 rho_g2 = c * rho_{g2 g1}
  int central_exponent;        // +1 or -1: ratio = central_term(...)^exponent
  bool central_args_swapped;   // central_term(g2, g1) instead of (g1, g2)
};

RhoConvention measure_rho_convention(const Space& s, int n_pairs, QuantLevel k);

struct ProjectiveCheck {
  double z_variation;     // max distance between per-point ratios
  double central_error;   // distance of the ratio to the matched central term
  Grassmann ratio;
};

// Ratio (rho_g1 rho_g2 Psi)(Z) / (rho_{product} Psi)(Z) over sample points;
// the ratio must be Z-independent and match the central term under `conv`.
ProjectiveCheck projective_residual(const GroupElement& g1, const GroupElement& g2,
                                    const SectionPtr& s, QuantLevel k,
                                    const RhoConvention& conv, uint64_t seed,
                                    int samples = 5);

// Commutator defect of the quantized moment maps:
//   [Fhat_u, Fhat_v] - sign (i/k) Fhat_{[u,v]}  evaluated on Psi.
// The subtraction sign is measured (the defect must be multiplication by a
// Z-independent scalar); the scalar is returned together with its observed
// Z-variation and the proportionality against the cocycle.
struct CommutatorCheck {
  double bracket_sign;    // measured subtraction sign
  double z_variation;     // scalar constancy across sample points
  Grassmann scalar;       // the measured multiplier
  Complex ratio_vs_cocycle;  // k * scalar / Sigma(u,v), body part
};

CommutatorCheck fhat_commutator_check(const LieElement& u, const LieElement& v,
                                      const SectionPtr& s, QuantLevel k, uint64_t seed,
                                      int samples = 5);

// l2 inner product over monomial components: sum_m Tr(A_m^dag B_m).
Complex hs_inner(const std::vector<SuperMatrix>& a, const std::vector<SuperMatrix>& b);
double hs_norm(const std::vector<SuperMatrix>& a);

}  // namespace sdisc
