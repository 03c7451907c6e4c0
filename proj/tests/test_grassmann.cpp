#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sdisc/grassmann.hpp"
#include "sdisc/jet.hpp"
#include "sdisc/rng.hpp"

using namespace sdisc;

namespace {

Grassmann random_element(Rng& rng, int n, double scale = 1.0) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) g.set_coeff(m, rng.box(scale));
  return g;
}

Grassmann random_homogeneous(Rng& rng, int n, bool odd, double scale = 1.0) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m)
    if ((std::popcount(m) & 1) == (odd ? 1 : 0)) g.set_coeff(m, rng.box(scale));
  return g;
}

Grassmann random_even(Rng& rng, int n, double scale = 1.0) {
  return random_homogeneous(rng, n, false, scale);
}

}  // namespace

TEST_CASE("product of a generator with itself vanishes") {
  auto x1 = Grassmann::generator(2, 0);
  CHECK(max_abs_coeff(x1 * x1) == 0.0);
}

TEST_CASE("anticommutation canonicalizes with a sign") {
  // xi^2 xi^1 = -xi^1 xi^2
  auto x1 = Grassmann::generator(2, 0);
  auto x2 = Grassmann::generator(2, 1);
  auto p = x2 * x1;
  CHECK((p.coeff(0b0011) == Complex(-1)));
  CHECK(exactly_equal(p, -(x1 * x2)));
}

TEST_CASE("square of an even nilpotent cancels exactly") {
  // (1 + 2 xi^1 xi*^1)(1 - 2 xi^1 xi*^1) = 1
  int n = 1;
  auto m = Grassmann::generator(n, 0) * Grassmann::conj_generator(n, 0);
  auto a = Grassmann(n, 1) + 2.0 * m;
  auto b = Grassmann(n, 1) - 2.0 * m;
  CHECK(exactly_equal(a * b, Grassmann(n, 1)));
}

TEST_CASE("star conjugates scalars") {
  Grassmann s(2, Complex(3, 2));
  CHECK((star(s).body() == Complex(3, -2)));
}

TEST_CASE("star reverses products: (xi^1 xi^2)* = -xi*^1 xi*^2") {
  int n = 2;
  auto p = Grassmann::generator(n, 0) * Grassmann::generator(n, 1);
  auto sp = star(p);
  auto expect = -(Grassmann::conj_generator(n, 0) * Grassmann::conj_generator(n, 1));
  CHECK(exactly_equal(sp, expect));
}

TEST_CASE("star is an involution") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(rng, 2);
    CHECK(exactly_equal(star(star(x)), x));
  }
}

TEST_CASE("star is an antihomomorphism") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(rng, 2);
    auto y = random_element(rng, 2);
    CHECK(max_coeff_dist(star(x * y), star(y) * star(x)) < 1e-12);
  }
}

TEST_CASE("product is associative and distributive") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(rng, 2);
    auto y = random_element(rng, 2);
    auto z = random_element(rng, 2);
    CHECK(max_coeff_dist((x * y) * z, x * (y * z)) < 1e-12);
    CHECK(max_coeff_dist(x * (y + z), x * y + x * z) < 1e-12);
  }
}

TEST_CASE("graded commutativity for homogeneous elements") {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    bool ox = t % 2, oy = (t / 2) % 2;
    auto x = random_homogeneous(rng, 2, ox);
    auto y = random_homogeneous(rng, 2, oy);
    double sign = (ox && oy) ? -1.0 : 1.0;
    CHECK(max_coeff_dist(x * y, sign * (y * x)) < 1e-12);
  }
}

TEST_CASE("soul is nilpotent of degree 2n+1, exactly") {
  Rng rng(15);
  for (int n : {1, 2, 3}) {
    auto x = random_element(rng, n, 2.0);
    auto s = x.soul();
    auto p = Grassmann(n, 1);
    for (int k = 0; k < 2 * n + 1; ++k) p = p * s;
    CHECK(max_abs_coeff(p) == 0.0);
  }
}

TEST_CASE("inverse: nilpotent Neumann series") {
  int n = 1;
  auto m = Grassmann::generator(n, 0) * Grassmann::conj_generator(n, 0);
  auto x = Grassmann(n, 1) + m;
  CHECK(exactly_equal(inverse(x), Grassmann(n, 1) - m));
  CHECK((inverse(Grassmann(2, 2.0)).body() == Complex(0.5)));
}

TEST_CASE("inverse multiplies back to one") {
  Rng rng(16);
  for (int t = 0; t < 25; ++t) {
    auto x = Grassmann(2, 1) + random_even(rng, 2, 0.5).soul();
    CHECK(max_coeff_dist(x * inverse(x), Grassmann(2, 1)) < 1e-12);
  }
}

TEST_CASE("inverse rejects zero body") {
  auto x = Grassmann::generator(2, 0);
  CHECK_THROWS_AS(inverse(x), SingularError);
}

TEST_CASE("pow: scalars and frozen nilpotent example") {
  CHECK(pow(Grassmann(1, 4.0), 0.5).body().real() == doctest::Approx(2.0));
  // (2 + xi^1 xi*^1)^2 = 4 + 4 xi^1 xi*^1, so the root of the latter is the former
  int n = 1;
  auto m = Grassmann::generator(n, 0) * Grassmann::conj_generator(n, 0);
  auto x = Grassmann(n, 4) + 4.0 * m;
  auto r = pow(x, 0.5);
  CHECK(max_coeff_dist(r, Grassmann(n, 2) + m) < 1e-14);
  CHECK(max_coeff_dist(r * r, x) < 1e-14);
}

TEST_CASE("pow: zero exponent gives one, powers cancel") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    auto x = Grassmann(2, rng.uniform(0.5, 3.0)) + random_even(rng, 2, 0.4).soul();
    CHECK(max_coeff_dist(pow(x, 0.0), Grassmann(2, 1)) < 1e-14);
    double a = rng.uniform(-0.9, 0.9);
    CHECK(max_coeff_dist(pow(x, a) * pow(x, -a), Grassmann(2, 1)) < 1e-11);
    CHECK(max_coeff_dist(pow(x, 1.0), x) < 1e-14);
  }
}

TEST_CASE("pow rejects bad branches and odd elements") {
  CHECK_THROWS_AS(pow(Grassmann(1, -2.0), 0.5), BranchError);
  CHECK_THROWS_AS(pow(Grassmann::generator(1, 0), 0.5), ParityError);
}

TEST_CASE("l2 norm") {
  CHECK(l2_norm(Grassmann(2)) == 0.0);
  CHECK(l2_norm(3.0 * Grassmann::generator(2, 0)) == doctest::Approx(3.0));
  auto x = Grassmann(2, 1) + Grassmann::generator(2, 0) * Grassmann::generator(2, 1);
  CHECK(l2_norm(x) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("scalar exp terminates and inverts") {
  Rng rng(18);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(rng, 2, 0.6);
    CHECK(max_coeff_dist(exp(x) * exp(-x), Grassmann(2, 1)) < 1e-12);
  }
}

TEST_CASE("jet of a rational expression matches the symbolic derivative") {
  // f(x) = (2 + x + 3x^2) (4 + x^2)^-1 on even x, tangent v
  Rng rng(19);
  auto c = [](double v) { return Grassmann(2, v); };
  for (int t = 0; t < 15; ++t) {
    auto x = c(rng.uniform(-1.0, 1.0)) + random_even(rng, 2, 0.5).soul();
    auto v = random_even(rng, 2, 1.0);
    Jet1 xj{x, v};
    auto num = RingOps<Jet1>::scalar(2, 2.0) + xj + 3.0 * (xj * xj);
    auto den = RingOps<Jet1>::scalar(2, 4.0) + xj * xj;
    auto f = num * RingOps<Jet1>::inverse(den);

    auto den0 = c(4) + x * x;
    auto iden0 = inverse(den0);
    auto fprime = (c(1) + 6.0 * x) * iden0 -
                  (c(2) + x + 3.0 * (x * x)) * iden0 * iden0 * (2.0 * x);
    CHECK(max_coeff_dist(f.d, fprime * v) < 1e-10);
    CHECK(max_coeff_dist(f.v, (c(2) + x + 3.0 * (x * x)) * iden0) < 1e-12);
  }
}

TEST_CASE("second-order jets nest") {
  // d^2/dt^2 of x(t) = (x0 + t v)^3 at t=0 is 6 x0 v^2
  auto x0 = Grassmann(1, 0.7);
  auto v = Grassmann(1, 1.3);
  Jet2 xjj{{x0, v}, {v, Grassmann(1)}};
  auto cube = xjj * xjj * xjj;
  CHECK(max_coeff_dist(cube.d.d, 6.0 * x0 * v * v) < 1e-12);
}

TEST_CASE("parallel and serial multiply kernels agree") {
  Rng rng(20);
  for (int n : {2, 3, 6}) {
    auto x = random_element(rng, n);
    auto y = random_element(rng, n);
    // both kernels sum the same terms; only the accumulation order differs
    const double tol = 1e-15 * x.mask_count();
    CHECK(max_coeff_dist(kernels::gmul_serial(x, y), kernels::gmul_parallel(x, y)) < tol);
  }
}

TEST_CASE("mismatched algebras are rejected") {
  CHECK_THROWS_AS(Grassmann(1, 1) * Grassmann(2, 1), ShapeError);
}

TEST_CASE("parity classification") {
  CHECK(parity_of(Grassmann(2, 1)) == Parity::Even);
  CHECK(parity_of(Grassmann::generator(2, 0)) == Parity::Odd);
  CHECK(parity_of(Grassmann(2, 1) + Grassmann::generator(2, 0)) == Parity::Mixed);
  CHECK(parity_of(Grassmann(2)) == Parity::Zero);
}
