#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdisc/symplectic.hpp"
#include "test_support.hpp"

using namespace sdisc;

namespace {
const Space kSpace{3, 3, 2};
constexpr int kN = 2;

DiscPoint rnd_z(uint64_t t) { return random_disc_point(t, kSpace, kN, 0.7, 0.1); }
LieElement rnd_u(uint64_t t) { return random_lie_element(t, kSpace, kN, 0.3); }
GroupElement rnd_g(uint64_t t) { return random_group_element(t, kSpace, kN, 0.3); }

LieElement off_diagonal_only(const LieElement& u) {
  auto blocks = disc_blocks(u.m);
  SuperMatrix za(blocks.a.rows(), blocks.a.cols(), kN, MatType::Even);
  SuperMatrix zd(blocks.d.rows(), blocks.d.cols(), kN, MatType::Even);
  return {from_disc_blocks(za, blocks.b, blocks.c, zd)};
}

LieElement diagonal_only(const LieElement& u) {
  auto blocks = disc_blocks(u.m);
  SuperMatrix zb(blocks.b.rows(), blocks.b.cols(), kN, MatType::Even);
  SuperMatrix zc(blocks.c.rows(), blocks.c.cols(), kN, MatType::Even);
  return {from_disc_blocks(blocks.a, zb, zc, blocks.d)};
}
}  // namespace

TEST_CASE("vector field vanishes for u = 0 and is u12 at the origin") {
  SuperMatrix zero(kSpace, kSpace, kN, MatType::Even);
  auto z = rnd_z(1);
  CHECK(max_abs_coeff(vector_field(LieElement{zero}, z).z()) == 0.0);

  auto u = rnd_u(2);
  auto v0 = vector_field(u, zero_disc_point(kSpace, kN));
  CHECK(max_coeff_dist(v0.z(), disc_block(u.m, Part::Minus, Part::Rest)) < 1e-13);
}

TEST_CASE("jet route and closed form of the vector field agree") {
  for (uint64_t t = 0; t < 10; ++t) {
    auto u = rnd_u(t);
    auto z = rnd_z(t + 20);
    auto jet = vector_field(u, z).z();
    auto closed = vector_field_closed<Grassmann>(u, z.z());
    CHECK(max_coeff_dist(jet, closed) < 1e-10);
  }
}

TEST_CASE("vector field is linear in u") {
  auto u = rnd_u(3), v = rnd_u(4);
  auto z = rnd_z(5);
  LieElement sum{u.m + v.m};
  CHECK(max_coeff_dist(vector_field(sum, z).z(),
                       vector_field(u, z).z() + vector_field(v, z).z()) < 1e-11);
}

TEST_CASE("frozen cocycle value on the smallest odd sector") {
  // space (1,0|1), n = 1, u12 = [xi], v12 = [c xi* + d xi]:
  //   Sigma(u,v) = i (conj(d) - d) xi xi*
  const Space s{1, 0, 1};
  const int n = 1;
  const Complex c(0.3, 0.4), d(0.7, 0.2);
  auto xi = Grassmann::generator(n, 0);
  auto xis = Grassmann::conj_generator(n, 0);

  SuperMatrix um(s, s, n, MatType::Even);
  um.at(0, 1) = xi;
  um.at(1, 0) = star(xi);
  SuperMatrix vm(s, s, n, MatType::Even);
  vm.at(0, 1) = c * xis + d * xi;
  vm.at(1, 0) = star(c * xis + d * xi);
  LieElement u{um}, v{vm};
  CHECK(lie_residual(u) < 1e-15);
  CHECK(lie_residual(v) < 1e-15);

  auto expect = Complex(0, 1) * (std::conj(d) - d) * (xi * xis);
  CHECK(max_coeff_dist(cocycle(u, v), expect) < 1e-14);
  CHECK(max_coeff_dist(cocycle_explicit(u, v), expect) < 1e-14);
}

TEST_CASE("cocycle: two routes agree; antisymmetric; vanishes off-support") {
  for (uint64_t t = 0; t < 10; ++t) {
    auto u = rnd_u(2 * t), v = rnd_u(2 * t + 1);
    CHECK(max_coeff_dist(cocycle(u, v), cocycle_explicit(u, v)) < 1e-12);
    CHECK(max_coeff_dist(cocycle(u, v), -cocycle(v, u)) < 1e-12);
    CHECK(max_abs_coeff(cocycle(u, u)) < 1e-13);
    // only the off-diagonal blocks contribute
    CHECK(max_abs_coeff(cocycle(diagonal_only(u), v)) < 1e-13);
    CHECK(max_abs_coeff(cocycle(u, diagonal_only(v))) < 1e-13);
  }
}

TEST_CASE("cocycle is bilinear") {
  auto u = rnd_u(31), v = rnd_u(32), w = rnd_u(33);
  LieElement sum{u.m + v.m};
  CHECK(max_coeff_dist(cocycle(sum, w), cocycle(u, w) + cocycle(v, w)) < 1e-12);
}

TEST_CASE("graded 2-cocycle identity") {
  for (uint64_t t = 0; t < 10; ++t) {
    auto u = rnd_u(3 * t), v = rnd_u(3 * t + 1), w = rnd_u(3 * t + 2);
    LieElement uv{commutator_s(u.m, v.m)}, vw{commutator_s(v.m, w.m)},
        wu{commutator_s(w.m, u.m)};
    auto total = cocycle(uv, w) + cocycle(vw, u) + cocycle(wu, v);
    CHECK(max_abs_coeff(total) < 1e-10);
  }
}

TEST_CASE("omega at the origin equals minus the cocycle") {
  auto z0 = zero_disc_point(kSpace, kN);
  for (uint64_t t = 0; t < 8; ++t) {
    auto u = rnd_u(t + 40), v = rnd_u(t + 60);
    CHECK(max_coeff_dist(omega(u, v, z0), -cocycle(u, v)) < 1e-10);
  }
}

TEST_CASE("omega is gauge invariant under the stabilizer ambiguity of lift") {
  for (uint64_t t = 0; t < 6; ++t) {
    auto u = rnd_u(t), v = rnd_u(t + 7);
    auto z = rnd_z(t + 70);
    auto g = lift(z);
    // stabilizer element diag(V, U) built from a block-diagonal Lie element
    auto h = rnd_u(t + 80);
    auto blocks = disc_blocks(h.m);
    SuperMatrix zb(blocks.b.rows(), blocks.b.cols(), kN, MatType::Even);
    SuperMatrix zc(blocks.c.rows(), blocks.c.cols(), kN, MatType::Even);
    GroupElement stab{exp(from_disc_blocks(blocks.a, zb, zc, blocks.d))};
    GroupElement gauged{g.m * stab.m};
    CHECK(max_coeff_dist(omega_at(u, v, g), omega_at(u, v, gauged)) < 1e-9);
  }
}

TEST_CASE("omega is equivariant under the adjoint action") {
  for (uint64_t t = 0; t < 6; ++t) {
    auto u = rnd_u(t + 90), v = rnd_u(t + 100);
    auto g = rnd_g(t + 110);
    auto z = rnd_z(t + 120);
    auto gi = inverse(g.m);
    LieElement au{gi * u.m * g.m}, av{gi * v.m * g.m};
    CHECK(max_coeff_dist(omega(u, v, moebius(g, z)), omega(au, av, z)) < 1e-8);
  }
}

TEST_CASE("moment map: zero at origin, linear in u, classical-style values") {
  auto z0 = zero_disc_point(kSpace, kN);
  auto u = rnd_u(201), v = rnd_u(202);
  CHECK(max_abs_coeff(moment_map(u, z0)) < 1e-14);
  auto z = rnd_z(203);
  LieElement sum{u.m + v.m};
  CHECK(max_coeff_dist(moment_map(sum, z), moment_map(u, z) + moment_map(v, z)) < 1e-12);
}

TEST_CASE("measured sign convention and the Poisson realization") {
  auto conv = measure_poisson_convention(kSpace, kN);
  CHECK(conv.s_cocycle == -1.0);
  CHECK(conv.s_moment == -1.0);

  auto z0 = zero_disc_point(kSpace, kN);
  for (uint64_t t = 0; t < 6; ++t) {
    auto u = rnd_u(t + 300), v = rnd_u(t + 310);
    CHECK(poisson_residual(u, v, z0, conv) < 1e-11);
    for (uint64_t k = 0; k < 3; ++k)
      CHECK(poisson_residual(u, v, rnd_z(t * 3 + k + 320), conv) < 1e-8);
  }
}

TEST_CASE("diagonal-block pairs reduce the realization to omega vs moment map") {
  auto conv = measure_poisson_convention(kSpace, kN);
  for (uint64_t t = 0; t < 4; ++t) {
    auto u = diagonal_only(rnd_u(t + 400));
    auto v = diagonal_only(rnd_u(t + 410));
    CHECK(max_abs_coeff(cocycle(u, v)) < 1e-13);
    auto z = rnd_z(t + 420);
    LieElement bracket{commutator_s(u.m, v.m)};
    CHECK(max_coeff_dist(omega(u, v, z), moment_map(bracket, z) * conv.s_moment) < 1e-8);
  }
}

TEST_CASE("hamiltonian pairing: dF_u(V_v) carries one global sign against omega") {
  // at the origin dF_u(V_v) equals the cocycle, hence minus omega
  auto z0 = zero_disc_point(kSpace, kN);
  auto u0 = rnd_u(500), v0 = rnd_u(501);
  const double sign =
      max_coeff_dist(moment_map_derivative(u0, v0, z0), -omega(u0, v0, z0)) <
              max_coeff_dist(moment_map_derivative(u0, v0, z0), omega(u0, v0, z0))
          ? -1.0
          : 1.0;
  CHECK(sign == -1.0);
  for (uint64_t t = 0; t < 6; ++t) {
    auto u = rnd_u(t + 510), v = rnd_u(t + 520);
    auto z = rnd_z(t + 530);
    CHECK(max_coeff_dist(moment_map_derivative(u, v, z), omega(u, v, z) * sign) < 1e-8);
  }
}

TEST_CASE("bracket with a combined hamiltonian is the matching combination of omegas") {
  auto u1 = rnd_u(600), u2 = rnd_u(601), v = rnd_u(602);
  auto z = rnd_z(603);
  const Complex c1(0.5, -1.0), c2(2.0, 0.25);
  auto lhs = poisson_bracket({{c1, u1}, {c2, u2}}, v, z);
  auto rhs = c1 * omega(u1, v, z) + c2 * omega(u2, v, z);
  CHECK(max_coeff_dist(lhs, rhs) < 1e-11);
}

TEST_CASE("origin gram matrix of the two-form has full rank") {
  auto gram = origin_gram(kSpace, kN);
  CHECK(gram.dimension == 240);
  CHECK(gram.full_rank);
  CHECK(gram.sigma_min > 0.0);
}

TEST_CASE("origin gram on the classical slice") {
  auto gram = origin_gram(Space{2, 2, 0}, 0);
  CHECK(gram.dimension == 8);
  CHECK(gram.full_rank);
}
