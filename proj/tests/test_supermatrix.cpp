#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdisc/supermatrix.hpp"
#include "test_support.hpp"

using namespace sdisc;
using namespace sdisc::testing;

namespace {
const Space kSpace{2, 2, 1};
constexpr int kN = 2;
}  // namespace

TEST_CASE("identity is a unit and multiplication is exact on it") {
  Rng rng(1);
  auto m = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  auto one = SuperMatrix::identity(kSpace, kN);
  CHECK(exactly_equal(one * m, m));
  CHECK(exactly_equal(m * one, m));
}

TEST_CASE("associativity against the reference triple loop") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    auto a = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    auto b = random_typed_matrix(rng, kSpace, kN, MatType::Odd);
    auto c = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    CHECK(max_coeff_dist((a * b) * c, ref::mul(a, ref::mul(b, c))) < 1e-10);
  }
}

TEST_CASE("parallel and serial matrix kernels produce identical entries") {
  Rng rng(3);
  auto a = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  auto b = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  CHECK(exactly_equal(kernels::smul_serial(a, b), kernels::smul_parallel(a, b)));
}

TEST_CASE("type composition") {
  Rng rng(4);
  auto e = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  auto o = random_typed_matrix(rng, kSpace, kN, MatType::Odd);
  CHECK((e * o).type() == MatType::Odd);
  CHECK((o * o).type() == MatType::Even);
  CHECK((e * e).type() == MatType::Even);
}

TEST_CASE("dagger: J, antihomomorphism, body conjugate-transpose") {
  auto j = j_matrix(kSpace, kN);
  CHECK(exactly_equal(dagger(j), j));

  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto m = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    auto n = random_typed_matrix(rng, kSpace, kN, MatType::Odd);
    CHECK(max_coeff_dist(dagger(m * n), dagger(n) * dagger(m)) < 1e-12);
    CHECK(exactly_equal(dagger(dagger(m)), m));
  }

  auto b = from_body(Eigen::MatrixXcd::Random(5, 5), kSpace, kSpace, kN);
  CHECK((body(dagger(b)) - body(b).adjoint()).norm() == 0.0);
}

TEST_CASE("supertrace of J and the identity") {
  // Str J on (2,2|1) = 2 - 2 + 1
  auto j = j_matrix(kSpace, kN);
  CHECK((str(j).body() == Complex(1)));
  auto one = SuperMatrix::identity(kSpace, kN);
  CHECK((str(one).body() == Complex(3)));  // p- + p+ - q
}

TEST_CASE("graded cyclicity of the supertrace") {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const MatType ta = t % 2 ? MatType::Odd : MatType::Even;
    const MatType tb = (t / 2) % 2 ? MatType::Odd : MatType::Even;
    auto a = random_typed_matrix(rng, kSpace, kN, ta);
    auto b = random_typed_matrix(rng, kSpace, kN, tb);
    const double sign = (ta == MatType::Odd && tb == MatType::Odd) ? -1.0 : 1.0;
    CHECK(max_coeff_dist(str(a * b), sign * str(b * a)) < 1e-11);
  }
}

TEST_CASE("conditional supertrace equals the supertrace at finite truncation") {
  Rng rng(7);
  auto j = j_matrix(kSpace, kN);
  CHECK(max_coeff_dist(str_j(j), str(j)) == 0.0);
  for (int t = 0; t < 10; ++t) {
    auto m = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    CHECK(max_coeff_dist(str_j(m), str(m)) == 0.0);
  }
  // disc-split block-off-diagonal matrix: both traces see only the diagonal part
  auto m = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  auto zero_minus = SuperMatrix(minus_part(kSpace), minus_part(kSpace), kN);
  auto zero_rest = SuperMatrix(rest_part(kSpace), rest_part(kSpace), kN);
  auto off = from_disc_blocks(zero_minus, disc_block(m, Part::Minus, Part::Rest),
                              disc_block(m, Part::Rest, Part::Minus), zero_rest);
  CHECK(max_abs_coeff(str_j(off)) == 0.0);
}

TEST_CASE("supertrace kills supercommutators") {
  Rng rng(8);
  for (int t = 0; t < 12; ++t) {
    const MatType ta = t % 2 ? MatType::Odd : MatType::Even;
    const MatType tb = (t / 2) % 2 ? MatType::Odd : MatType::Even;
    auto a = random_typed_matrix(rng, kSpace, kN, ta);
    auto b = random_typed_matrix(rng, kSpace, kN, tb);
    CHECK(max_abs_coeff(str(commutator_s(a, b))) < 1e-10);
  }
}

TEST_CASE("graded commutator: symmetry and Jacobi") {
  Rng rng(9);
  auto x = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  CHECK(max_abs_coeff(commutator_s(x, x)) == 0.0);
  // odd-odd pairs anticommute into a symmetric bracket
  auto o1 = random_typed_matrix(rng, kSpace, kN, MatType::Odd);
  auto o2 = random_typed_matrix(rng, kSpace, kN, MatType::Odd);
  CHECK(max_coeff_dist(commutator_s(o1, o2), commutator_s(o2, o1)) < 1e-12);
  for (int t = 0; t < 8; ++t) {
    auto a = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    auto b = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    auto c = random_typed_matrix(rng, kSpace, kN, MatType::Even);
    CHECK(max_coeff_dist(commutator_s(a, b), -commutator_s(b, a)) < 1e-11);
    auto jac = commutator_s(commutator_s(a, b), c) + commutator_s(commutator_s(b, c), a) +
               commutator_s(commutator_s(c, a), b);
    CHECK(max_abs_coeff(jac) < 1e-10);
  }
}

TEST_CASE("inverse: nilpotent series, identity, multiply-back") {
  auto one = SuperMatrix::identity(kSpace, kN);
  CHECK(max_coeff_dist(inverse(one), one) == 0.0);

  Rng rng(10);
  for (int t = 0; t < 15; ++t) {
    auto m = random_invertible(rng, kSpace, kN);
    CHECK(max_coeff_dist(m * inverse(m), one) < 1e-10);
    CHECK(max_coeff_dist(inverse(m) * m, one) < 1e-10);
    CHECK(max_coeff_dist(inverse(inverse(m)), m) < 1e-9);
  }

  // pure-soul N: (1+N)^-1 = 1 - N + N^2 - ...
  auto n = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.0, 0.5);
  auto m = one + n;
  CHECK(max_coeff_dist(m * inverse(m), one) < 1e-12);
}

TEST_CASE("inverse refuses singular and ill-conditioned bodies") {
  SuperMatrix z(kSpace, kSpace, kN, MatType::Even);
  CHECK_THROWS_AS(inverse(z), SingularError);
  auto d = SuperMatrix::identity(kSpace, kN);
  d.at(0, 0) = Grassmann(kN, 1e-12);
  CHECK_THROWS_AS(inverse(d), SingularError);
}

TEST_CASE("sdet: frozen small examples") {
  CHECK(max_coeff_dist(sdet(SuperMatrix::identity(kSpace, kN)), Grassmann(kN, 1)) == 0.0);
  // (p+=1, q=1) scalars: sdet(diag(2;3)) = 2/3
  Space s01{0, 1, 1};
  auto d = SuperMatrix::identity(s01, kN);
  d.at(0, 0) = Grassmann(kN, 2);
  d.at(1, 1) = Grassmann(kN, 3);
  CHECK(max_coeff_dist(sdet(d), Grassmann(kN, 2.0 / 3.0)) < 1e-15);
}

TEST_CASE("sdet is multiplicative on even invertible matrices") {
  Rng rng(11);
  for (int t = 0; t < 12; ++t) {
    auto x = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.4, 0.2);
    auto y = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.4, 0.2);
    auto m = sdisc::exp(x), n = sdisc::exp(y);
    auto lhs = sdet(m * n);
    auto rhs = sdet(m) * sdet(n);
    const double denom = std::max(1.0, max_abs_coeff(rhs));
    CHECK(max_coeff_dist(lhs, rhs) / denom < 1e-8);
  }
}

TEST_CASE("sdet(exp X) = exp(Str X)") {
  Rng rng(12);
  for (int t = 0; t < 12; ++t) {
    auto x = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.4, 0.25);
    auto lhs = sdet(sdisc::exp(x));
    auto rhs = sdisc::exp(str(x));
    const double denom = std::max(1.0, max_abs_coeff(rhs));
    CHECK(max_coeff_dist(lhs, rhs) / denom < 1e-8);
  }
}

TEST_CASE("exp: zero, inverse pairing, jet consistency") {
  auto zero = SuperMatrix(kSpace, kSpace, kN, MatType::Even);
  CHECK(max_coeff_dist(sdisc::exp(zero), SuperMatrix::identity(kSpace, kN)) == 0.0);

  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    auto x = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.6, 0.3);
    CHECK(max_coeff_dist(sdisc::exp(x) * sdisc::exp(-x),
                         SuperMatrix::identity(kSpace, kN)) < 1e-10);
  }

  // d/dt exp(tX) at t=0 equals X, through the jet ring
  auto x = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.8, 0.3);
  auto xj = matrix_lift<Jet1>(x);
  MatrixT<Jet1> txj(kSpace, kSpace, kN, MatType::Even);
  for (int i = 0; i < kSpace.dim(); ++i)
    for (int j = 0; j < kSpace.dim(); ++j)
      txj.at(i, j) = Jet1{Grassmann(kN), x.at(i, j)};  // t X with t = 0 + eps
  auto [val, der] = jet_split(sdisc::exp(txj));
  CHECK(max_coeff_dist(val, SuperMatrix::identity(kSpace, kN)) < 1e-14);
  CHECK(max_coeff_dist(der, x) < 1e-11);
}

TEST_CASE("pow: square roots square back and commute") {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    // hermitian positive definite body, even soul
    auto r = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.3, 0.15);
    auto m = SuperMatrix::identity(kSpace, kN) + r * dagger(r);
    auto h = pow(m, 0.5);
    CHECK(max_coeff_dist(h * h, m) < 1e-11);
    CHECK(max_coeff_dist(pow(m, -0.5) * h, SuperMatrix::identity(kSpace, kN)) < 1e-10);
    double a = rng.uniform(-0.9, 0.9);
    auto p = pow(m, a);
    CHECK(max_coeff_dist(m * p, p * m) < 1e-10);
    CHECK(max_coeff_dist(pow(m, a) * pow(m, -a), SuperMatrix::identity(kSpace, kN)) <
          1e-10);
  }
}

TEST_CASE("pow: exponents add") {
  Rng rng(21);
  auto r = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.3, 0.15);
  auto m = SuperMatrix::identity(kSpace, kN) + r * dagger(r);
  for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{-0.25, 0.6}, std::pair{0.5, -0.8}}) {
    auto lhs = pow(m, a) * pow(m, b);
    CHECK(max_coeff_dist(lhs, pow(m, a + b)) < 1e-9);
  }
}

TEST_CASE("pow: sm_pow(4*1, 1/2) = 2*1") {
  auto m = SuperMatrix::identity(kSpace, kN) * Complex(4);
  m.set_type(MatType::Even);
  CHECK(max_coeff_dist(pow(m, 0.5), SuperMatrix::identity(kSpace, kN) * Complex(2)) < 1e-13);
}

TEST_CASE("pow: Newton route agrees with the integral route at half exponents") {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    auto r = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.3, 0.15);
    auto m = SuperMatrix::identity(kSpace, kN) + r * dagger(r);
    for (double a : {0.5, -0.5}) {
      auto newton = pow(m, a);
      auto integral = pow_integral(m, a);
      CHECK(max_coeff_dist(newton, integral) < 1e-7);
    }
  }
}

TEST_CASE("pow body matches the eigendecomposition power of the body") {
  Rng rng(16);
  auto r = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.3, 0.15);
  auto m = SuperMatrix::identity(kSpace, kN) + r * dagger(r);
  const double a = 0.37;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(body(m));
  Eigen::MatrixXcd expect = es.eigenvectors() *
                            es.eigenvalues().array().pow(a).matrix().asDiagonal() *
                            es.eigenvectors().adjoint();
  CHECK((body(pow(m, a)) - expect).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("pow rejects non-positive bodies") {
  auto m = SuperMatrix::identity(kSpace, kN) * Complex(-1);
  CHECK_THROWS_AS(pow(m, 0.5), BranchError);
}

TEST_CASE("classical reduction: q=0, n=0 matches plain complex arithmetic") {
  const Space s{3, 2, 0};
  Rng rng(17);
  auto a = random_typed_matrix(rng, s, 0, MatType::Even);
  auto b = random_typed_matrix(rng, s, 0, MatType::Even);

  // bit-for-bit on the kernel path: same loop order as a plain triple loop
  Eigen::MatrixXcd pa = body(a), pb = body(b);
  Eigen::MatrixXcd prod(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      Complex acc = 0;
      for (int k = 0; k < s.dim(); ++k) acc += pa(i, k) * pb(k, j);
      prod(i, j) = acc;
    }
  CHECK((body(a * b) - prod).cwiseAbs().maxCoeff() == 0.0);
  CHECK((str(a).body() == pa.trace()));

  auto inv = inverse(SuperMatrix::identity(s, 0) + a * Complex(0.1));
  Eigen::MatrixXcd pinv =
      (Eigen::MatrixXcd::Identity(s.dim(), s.dim()) + pa * 0.1).inverse();
  CHECK((body(inv) - pinv).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(std::abs(sdet(SuperMatrix::identity(s, 0) + a * Complex(0.1)).body() -
                 (Eigen::MatrixXcd::Identity(s.dim(), s.dim()) + pa * 0.1).determinant()) <
        1e-12);
}

TEST_CASE("shape mismatches throw") {
  SuperMatrix a(kSpace, kSpace, kN, MatType::Even);
  SuperMatrix b(minus_part(kSpace), minus_part(kSpace), kN, MatType::Even);
  CHECK_THROWS_AS(a * b, ShapeError);
  CHECK_THROWS_AS(a + b, ShapeError);
  SuperMatrix rect(minus_part(kSpace), rest_part(kSpace), kN, MatType::Even);
  CHECK_THROWS_AS(str(rect), ShapeError);
  CHECK_THROWS_AS(inverse(rect), ShapeError);
}

TEST_CASE("disc blocks reassemble") {
  Rng rng(18);
  auto m = random_typed_matrix(rng, kSpace, kN, MatType::Even);
  auto a = disc_block(m, Part::Minus, Part::Minus);
  auto b = disc_block(m, Part::Minus, Part::Rest);
  auto c = disc_block(m, Part::Rest, Part::Minus);
  auto d = disc_block(m, Part::Rest, Part::Rest);
  CHECK(exactly_equal(from_disc_blocks(a, b, c, d), m));

  auto [bb, beta] = split_cols_plus_odd(b);
  CHECK(exactly_equal(join_cols_plus_odd(bb, beta), b));
}

TEST_CASE("jet matrix inverse differentiates the inverse map") {
  // d(M^-1) = -M^-1 dM M^-1
  Rng rng(19);
  auto m = random_invertible(rng, kSpace, kN);
  auto dm = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.5, 0.2);
  auto mj = jet_join(m, dm);
  auto [iv, id] = jet_split(inverse(mj));
  auto im = inverse(m);
  CHECK(max_coeff_dist(iv, im) < 1e-12);
  CHECK(max_coeff_dist(id, -(im * dm * im)) < 1e-10);
}

TEST_CASE("jet sdet differentiates the Berezinian") {
  Rng rng(20);
  auto m = random_invertible(rng, kSpace, kN, 0.25);
  auto dm = random_typed_matrix(rng, kSpace, kN, MatType::Even, 0.4, 0.2);
  auto [sv, sd] = [&] {
    auto j = sdet(jet_join(m, dm));
    return std::pair{j.v, j.d};
  }();
  CHECK(max_coeff_dist(sv, sdet(m)) < 1e-12);
  // finite-difference cross-check in a real direction
  const double h = 1e-6;
  auto fd = (sdet(m + dm * Complex(h)) - sdet(m - dm * Complex(h))) / Complex(2 * h);
  CHECK(max_coeff_dist(sd, fd) < 1e-6);
}
