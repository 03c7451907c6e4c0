#include "sdisc/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "sdisc/rng.hpp"

namespace sdisc {

MonomialSection::MonomialSection(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  degree_ = 0;
  for (const Monomial& t : terms_) {
    int d = 0;
    for (const VarRef& v : t.vars) {
      if (v.power < 1) throw ParseError("monomial section: powers must be >= 1");
      if (v.theta && v.power != 1)
        throw ParseError("monomial section: theta entries square to zero, power must be 1");
      d += v.power;
    }
    degree_ = std::max(degree_, d);
  }
}

SectionPtr constant_section(Complex value) {
  return std::make_shared<MonomialSection>(std::vector<Monomial>{{value, {}}});
}

SectionPtr monomial_section(std::vector<Monomial> terms) {
  return std::make_shared<MonomialSection>(std::move(terms));
}

namespace {

class FhatSection : public SectionBase<FhatSection> {
 public:
  FhatSection(LieElement u, SectionPtr inner, QuantLevel k)
      : u_(std::move(u)),
        u21_(disc_block(u_.m, Part::Rest, Part::Minus)),
        inner_(std::move(inner)),
        k_(k.k) {}

  int degree() const override {
    const int d = inner_->degree();
    return d < 0 ? -1 : d + 1;
  }

  template <class R>
  R eval_at(const PointT<R>& p) const {
    if constexpr (RingOps<R>::depth >= 3) {
      throw DepthError("section evaluation nested deeper than the compiled jet depth");
      return RingOps<R>::zero(0);  // unreachable
    } else {
      const auto z = p.z();
      const auto v = vector_field_closed<R>(u_, z);
      const Jet<R> ev = inner_->eval(extend_point(p, v));
      auto uz = matrix_lift<R>(u21_) * z;
      uz.set_type(MatType::Even);
      const R multiplier = str(uz);
      return ev.d * Complex(0, -1.0 / k_) + multiplier * ev.v * Complex(0, 1);
    }
  }

 private:
  LieElement u_;
  SuperMatrix u21_;
  SectionPtr inner_;
  int k_;
};

class RhoSection : public SectionBase<RhoSection> {
 public:
  RhoSection(GroupElement g, SectionPtr inner, QuantLevel k)
      : g_(std::move(g)), inner_(std::move(inner)), k_(k.k) {
    const auto blocks = disc_blocks(g_.m);
    dinv_c_ = inverse(blocks.d) * blocks.c;
  }

  int degree() const override { return -1; }

  template <class R>
  R eval_at(const PointT<R>& p) const {
    const auto z = p.z();
    const auto gz = moebius_z(matrix_lift<R>(g_.m), z);
    auto [w2, th2] = split_cols_plus_odd(gz);
    auto arg = matrix_lift<R>(dinv_c_) * z + MatrixT<R>::identity(z.cols(), z.n_pairs());
    arg.set_type(MatType::Even);
    const R mult = scalar_int_pow(sdet(arg), -k_);
    return mult * inner_->eval(PointT<R>{std::move(w2), std::move(th2)});
  }

 private:
  GroupElement g_;
  SuperMatrix dinv_c_;
  SectionPtr inner_;
  int k_;
};

}  // namespace

Grassmann theta_s(const DiscPoint& p, const TangentVector& dz, const TangentVector& dzbar,
                  QuantLevel k) {
  const SuperMatrix z = p.z();
  const SuperMatrix zd = dagger(z);
  const auto one = SuperMatrix::identity(z.cols(), z.n_pairs());
  const SuperMatrix si = inverse(one - zd * z);
  const Grassmann holo = str(si * zd * dz.z());
  const Grassmann anti = str(si * dagger(dzbar.z()) * z);
  return (anti - holo) * double(k.k);
}

Grassmann weight(const DiscPoint& p, QuantLevel k) {
  const SuperMatrix z = p.z();
  return weight_z(z, dagger(z), k);
}

double polarization_residual(const DiscPoint& p, const SectionPtr& s, QuantLevel k,
                             const TangentVector& dzbar) {
  const SuperMatrix z = p.z();
  const SuperMatrix zd = dagger(z);
  const SuperMatrix zero(z.rows(), z.cols(), z.n_pairs(), MatType::Even);
  // jet only in the Z^dag slot
  const auto zj = jet_join(z, zero);
  const auto zdj = jet_join(zd, dagger(dzbar.z()));
  const Jet1 wj = weight_z(zj, zdj, k);

  const Grassmann psi = s->eval(lift_point<Grassmann>(p));
  const TangentVector no_dz{
      SuperMatrix(p.w.rows(), p.w.cols(), p.n_pairs(), MatType::Even),
      SuperMatrix(p.theta.rows(), p.theta.cols(), p.n_pairs(), MatType::Even)};
  const Grassmann connection = theta_s(p, no_dz, dzbar, k);
  const Grassmann total = wj.d * psi + connection * wj.v * psi;
  return max_abs_coeff(total);
}

SectionPtr fhat(const LieElement& u, const SectionPtr& s, QuantLevel k) {
  return std::make_shared<FhatSection>(u, s, k);
}

SectionPtr rho(const GroupElement& g, const SectionPtr& s, QuantLevel k) {
  return std::make_shared<RhoSection>(g, s, k);
}

Grassmann central_term(const GroupElement& g1, const GroupElement& g2, QuantLevel k) {
  const auto b1 = disc_blocks(g1.m);
  const auto b2 = disc_blocks(g2.m);
  auto arg = inverse(b1.d * b2.d) * b1.c * b2.b +
             SuperMatrix::identity(rest_part(g1.space()), g1.n_pairs());
  arg.set_type(MatType::Even);
  return scalar_int_pow(sdet(arg), k.k);
}

namespace {

Grassmann eval_plain(const SectionPtr& s, const DiscPoint& p) {
  return s->eval(lift_point<Grassmann>(p));
}

}  // namespace

RhoConvention measure_rho_convention(const Space& s, int n_pairs, QuantLevel k) {
  const GroupElement g1 = random_group_element(0xabc1, s, n_pairs, 0.25);
  const GroupElement g2 = random_group_element(0xabc2, s, n_pairs, 0.25);
  SectionPtr psi = constant_section(1.0);
  SectionPtr composed = rho(g1, rho(g2, psi, k), k);

  const GroupElement rev{g2.m * g1.m};
  const GroupElement fwd{g1.m * g2.m};
  SectionPtr via_rev = rho(rev, psi, k);
  SectionPtr via_fwd = rho(fwd, psi, k);

  auto ratio_points = [&](const SectionPtr& denom, std::vector<Grassmann>& out) {
    out.clear();
    for (uint64_t t = 0; t < 4; ++t) {
      const DiscPoint z = random_disc_point(0xabc3 + t, s, n_pairs, 0.5, 0.1);
      out.push_back(eval_plain(composed, z) * inverse(eval_plain(denom, z)));
    }
  };
  std::vector<Grassmann> r_rev, r_fwd;
  ratio_points(via_rev, r_rev);
  ratio_points(via_fwd, r_fwd);
  auto variation = [](const std::vector<Grassmann>& r) {
    double v = 0.0;
    for (size_t i = 1; i < r.size(); ++i) v = std::max(v, max_coeff_dist(r[i], r[0]));
    return v;
  };
  RhoConvention conv{};
  conv.composes_reversed = variation(r_rev) <= variation(r_fwd);
  const Grassmann ratio = conv.composes_reversed ? r_rev[0] : r_fwd[0];

  double best = -1.0;
  for (bool swapped : {false, true})
    for (int expo : {1, -1}) {
      Grassmann c = swapped ? central_term(g2, g1, k) : central_term(g1, g2, k);
      if (expo < 0) c = inverse(c);
      const double d = max_coeff_dist(ratio, c);
      if (best < 0 || d < best) {
        best = d;
        conv.central_args_swapped = swapped;
        conv.central_exponent = expo;
      }
    }
  return conv;
}

ProjectiveCheck projective_residual(const GroupElement& g1, const GroupElement& g2,
                                    const SectionPtr& s, QuantLevel k,
                                    const RhoConvention& conv, uint64_t seed, int samples) {
  const Space sp = g1.space();
  const int n = g1.n_pairs();
  SectionPtr composed = rho(g1, rho(g2, s, k), k);
  const GroupElement prod = conv.composes_reversed ? GroupElement{g2.m * g1.m}
                                                   : GroupElement{g1.m * g2.m};
  SectionPtr direct = rho(prod, s, k);

  std::vector<Grassmann> ratios;
  uint64_t attempt = 0;
  while (int(ratios.size()) < samples && attempt < 8 * uint64_t(samples)) {
    const DiscPoint z =
        random_disc_point(trial_seed(seed, attempt++, "projective"), sp, n, 0.5, 0.1);
    const Grassmann denom = eval_plain(direct, z);
    if (std::abs(denom.body()) < 1e-3) continue;  // resample degenerate points
    ratios.push_back(eval_plain(composed, z) * inverse(denom));
  }
  if (ratios.empty()) throw ConvergenceError("projective_residual: no usable sample points");

  double var = 0.0;
  for (size_t i = 1; i < ratios.size(); ++i)
    var = std::max(var, max_coeff_dist(ratios[i], ratios[0]));

  Grassmann c = conv.central_args_swapped ? central_term(g2, g1, k)
                                          : central_term(g1, g2, k);
  if (conv.central_exponent < 0) c = inverse(c);
  return {var, max_coeff_dist(ratios[0], c), ratios[0]};
}

CommutatorCheck fhat_commutator_check(const LieElement& u, const LieElement& v,
                                      const SectionPtr& s, QuantLevel k, uint64_t seed,
                                      int samples) {
  const Space sp = u.space();
  const int n = u.n_pairs();
  SectionPtr uv = fhat(u, fhat(v, s, k), k);
  SectionPtr vu = fhat(v, fhat(u, s, k), k);
  LieElement bracket{commutator_s(u.m, v.m)};
  SectionPtr fb = fhat(bracket, s, k);

  std::vector<Grassmann> comm, fbv, base;
  uint64_t attempt = 0;
  while (int(comm.size()) < samples && attempt < 8 * uint64_t(samples)) {
    const DiscPoint z =
        random_disc_point(trial_seed(seed, attempt++, "fhat_comm"), sp, n, 0.6, 0.1);
    const Grassmann psi = eval_plain(s, z);
    if (std::abs(psi.body()) < 1e-3) continue;
    comm.push_back(eval_plain(uv, z) - eval_plain(vu, z));
    fbv.push_back(eval_plain(fb, z));
    base.push_back(psi);
  }
  if (comm.empty())
    throw ConvergenceError("fhat_commutator_check: no usable sample points");

  CommutatorCheck out{};
  out.z_variation = -1.0;
  for (double sign : {1.0, -1.0}) {
    std::vector<Grassmann> scalars;
    for (size_t i = 0; i < comm.size(); ++i) {
      const Grassmann t = comm[i] - fbv[i] * Complex(0, sign / k.k);
      scalars.push_back(t * inverse(base[i]));
    }
    double var = 0.0;
    for (size_t i = 1; i < scalars.size(); ++i)
      var = std::max(var, max_coeff_dist(scalars[i], scalars[0]));
    if (out.z_variation < 0 || var < out.z_variation) {
      out.z_variation = var;
      out.bracket_sign = sign;
      out.scalar = scalars[0];
    }
  }
  const Grassmann sigma = cocycle(u, v);
  out.ratio_vs_cocycle = double(k.k) * out.scalar.body() / sigma.body();
  return out;
}

Complex hs_inner(const std::vector<SuperMatrix>& a, const std::vector<SuperMatrix>& b) {
  if (a.size() != b.size()) throw ShapeError("hs_inner: operand lists differ in length");
  Complex acc(0);
  for (size_t t = 0; t < a.size(); ++t) {
    const SuperMatrix& x = a[t];
    const SuperMatrix& y = b[t];
    detail::require(x.rows() == y.rows() && x.cols() == y.cols() &&
                        x.n_pairs() == y.n_pairs(),
                    "hs_inner: shape mismatch");
    for (int i = 0; i < x.rows().dim(); ++i)
      for (int j = 0; j < x.cols().dim(); ++j) {
        const auto& xe = x.at(i, j);
        const auto& ye = y.at(i, j);
        for (uint32_t m = 0; m < xe.mask_count(); ++m)
          acc += std::conj(xe.coeff(m)) * ye.coeff(m);
      }
  }
  return acc;
}

double hs_norm(const std::vector<SuperMatrix>& a) {
  return std::sqrt(std::max(0.0, hs_inner(a, a).real()));
}

}  // namespace sdisc
