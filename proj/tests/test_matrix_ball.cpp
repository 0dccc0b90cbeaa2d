#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kobalt/ch2.hpp"
#include "kobalt/matrix_ball.hpp"
#include "kobalt/random.hpp"

using namespace kobalt;
using Cd = std::complex<double>;
using CMat = ComplexMatrix<double>;

namespace {

CMat random_matrix(Rng& rng, Index rows, Index cols, double scale) {
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * rng.complex_in_box(1.0);
  return m;
}

// Haar-ish unitary via QR of a random complex matrix.
CMat random_unitary(Rng& rng, Index n) {
  const CMat a = random_matrix(rng, n, n, 1.0);
  Eigen::HouseholderQR<CMat> qr(a);
  return qr.householderQ();
}

// Independent route to the top singular value: power iteration on V* V.
double power_iteration_norm(const CMat& v, int iters = 2000) {
  const CMat w = v.adjoint() * v;
  ComplexVector<double> x = ComplexVector<double>::Ones(w.rows());
  x /= x.norm();
  for (int k = 0; k < iters; ++k) {
    x = w * x;
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    x /= n;
  }
  return std::sqrt(std::real((x.adjoint() * (w * x))(0, 0)));
}

CMat scaled_to_ball(CMat m, double target_norm) {
  const double n = operator_norm(m);
  if (n > 0) m *= target_norm / n;
  return m;
}

}  // namespace

TEST_CASE("operator norm: zero and diagonal cases") {
  CHECK(operator_norm(CMat::Zero(3, 2)) == 0.0);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.5;
  CHECK(operator_norm(d) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("operator norm matches a power-iteration estimate") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat v = random_matrix(rng, 4, 3, 1.0);
    CHECK(operator_norm(v) == doctest::Approx(power_iteration_norm(v)).epsilon(1e-10));
  }
}

TEST_CASE("operator norm rejects non-finite input") {
  CMat v = CMat::Zero(2, 2);
  v(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(v), InvalidInput);
}

TEST_CASE("operator norm satisfies the norm axioms") {
  Rng rng(102);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMat a = random_matrix(rng, 3, 3, 1.0);
    const CMat b = random_matrix(rng, 3, 3, 1.0);
    const double s = rng.uniform(-2.0, 2.0);
    CHECK(operator_norm((s * a).eval()) ==
          doctest::Approx(std::abs(s) * operator_norm(a)).epsilon(1e-12));
    CHECK(operator_norm((a + b).eval()) <=
          operator_norm(a) + operator_norm(b) + 1e-12);
  }
}

TEST_CASE("operator norm is unitarily invariant") {
  Rng rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat v = random_matrix(rng, 4, 3, 1.0);
    const CMat u = random_unitary(rng, 4);
    const CMat w = random_unitary(rng, 3);
    CHECK(operator_norm((u * v * w).eval()) ==
          doctest::Approx(operator_norm(v)).epsilon(1e-10));
  }
}

TEST_CASE("kobayashi norm: shape specializations") {
  const MatrixBallShape<double> polydisk(2, 2, BallKind::Polydisk);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 0.2;
  d(1, 1) = Cd(0.0, -0.7);
  CHECK(kobayashi_norm(polydisk, d) == doctest::Approx(0.7).epsilon(1e-14));

  const MatrixBallShape<double> ball(2, 1, BallKind::ComplexBall);
  CMat col(2, 1);
  col(0, 0) = 0.6;
  col(1, 0) = 0.8;
  CHECK(kobayashi_norm(ball, col) == doctest::Approx(1.0).epsilon(1e-14));

  const MatrixBallShape<double> full(2, 2, BallKind::FullMatrixBall);
  CMat nilp = CMat::Zero(2, 2);
  nilp(0, 1) = 1.0;
  CHECK(kobayashi_norm(full, nilp) == doctest::Approx(1.0).epsilon(1e-14));

  // Off-diagonal entries are not polydisk-conforming.
  CHECK_THROWS_AS(kobayashi_norm(polydisk, nilp), InvalidInput);
}

TEST_CASE("distance from the center") {
  const MatrixBallShape<double> full(2, 2, BallKind::FullMatrixBall);
  CHECK(distance_from_origin(MatrixBallPoint<double>::origin(full)) == 0.0);

  CMat half = CMat::Zero(2, 2);
  half(0, 0) = 0.5;
  CHECK(distance_from_origin(MatrixBallPoint<double>(full, half)) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));

  CMat t2 = CMat::Zero(2, 2);
  t2(0, 0) = std::tanh(2.0);
  CHECK(distance_from_origin(MatrixBallPoint<double>(full, t2)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  CMat hot = CMat::Zero(2, 2);
  hot(0, 0) = 1.0 - 1e-13;
  CHECK_THROWS_AS(MatrixBallPoint<double>(full, hot), BoundaryProximity);
}

TEST_CASE("distance is strictly increasing with first-order norm agreement") {
  CHECK(distance_from_origin_norm(0.3) < distance_from_origin_norm(0.4));
  CHECK(distance_from_origin_norm(0.8) < distance_from_origin_norm(0.9));
  Rng rng(104);
  const CMat v = scaled_to_ball(random_matrix(rng, 3, 3, 1.0), 1.0);
  for (const double t : {1e-3, 1e-4, 1e-5}) {
    const double d = distance_from_origin_norm(operator_norm((t * v).eval()));
    CHECK(std::abs(d / t - 1.0) <= 2.0 * t * t);  // artanh(x) = x + x^3/3 + ...
  }
}

TEST_CASE("transvection: identity at the center and the disk Moebius map") {
  const MatrixBallShape<double> full(2, 2, BallKind::FullMatrixBall);
  Rng rng(105);
  const CMat q = scaled_to_ball(random_matrix(rng, 2, 2, 1.0), 0.7);
  const auto at_origin = transvection_to_origin(MatrixBallPoint<double>::origin(full));
  CHECK((at_origin.apply(q) - q).norm() < 1e-14);

  const MatrixBallShape<double> disk(1, 1, BallKind::ComplexBall);
  CMat p(1, 1), x(1, 1);
  p(0, 0) = 0.5;
  x(0, 0) = 0.75;
  const auto t = transvection_to_origin(MatrixBallPoint<double>(disk, p));
  CHECK(std::abs(t.apply(x)(0, 0)) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(kobayashi_distance(MatrixBallPoint<double>(disk, p), MatrixBallPoint<double>(disk, x)) ==
        doctest::Approx(std::atanh(0.4)).epsilon(1e-13));
}

TEST_CASE("transvection: moves the base point to the center and stays in the ball") {
  Rng rng(106);
  const MatrixBallShape<double> full(3, 2, BallKind::FullMatrixBall);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat p = scaled_to_ball(random_matrix(rng, 3, 2, 1.0), rng.uniform(0.1, 0.9));
    const CMat q = scaled_to_ball(random_matrix(rng, 3, 2, 1.0), rng.uniform(0.1, 0.9));
    const auto t = transvection_to_origin(MatrixBallPoint<double>(full, p));
    CHECK(operator_norm(t.apply(p)) < 1e-12);
    CHECK(operator_norm(t.apply(q)) < 1.0);
  }
}

TEST_CASE("kobayashi distance: symmetry and unitary invariance") {
  Rng rng(107);
  const MatrixBallShape<double> full(2, 2, BallKind::FullMatrixBall);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat p = scaled_to_ball(random_matrix(rng, 2, 2, 1.0), rng.uniform(0.05, 0.9));
    const CMat q = scaled_to_ball(random_matrix(rng, 2, 2, 1.0), rng.uniform(0.05, 0.9));
    const MatrixBallPoint<double> pp(full, p), qq(full, q);
    const double d = kobayashi_distance(pp, qq);
    CHECK(d == doctest::Approx(kobayashi_distance(qq, pp)).epsilon(1e-9));

    const CMat u = random_unitary(rng, 2);
    const CMat w = random_unitary(rng, 2);
    const MatrixBallPoint<double> pu(full, (u * p * w).eval());
    const MatrixBallPoint<double> qu(full, (u * q * w).eval());
    CHECK(kobayashi_distance(pu, qu) == doctest::Approx(d).epsilon(1e-9));
  }
}

TEST_CASE("kobayashi distance: identity of indiscernibles and polydisk example") {
  const MatrixBallShape<double> polydisk(2, 2, BallKind::Polydisk);
  CMat q = CMat::Zero(2, 2);
  q(0, 0) = 0.5;
  q(1, 1) = 0.2;
  const MatrixBallPoint<double> origin = MatrixBallPoint<double>::origin(polydisk);
  const MatrixBallPoint<double> qq(polydisk, q);
  CHECK(kobayashi_distance(qq, qq) < 1e-14);
  CHECK(kobayashi_distance(origin, qq) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("kobayashi distance satisfies the triangle inequality on random triples") {
  Rng rng(108);
  const MatrixBallShape<double> full(2, 2, BallKind::FullMatrixBall);
  for (int trial = 0; trial < 1000; ++trial) {
    const MatrixBallPoint<double> a(full,
                                    scaled_to_ball(random_matrix(rng, 2, 2, 1.0), rng.uniform(0.0, 0.9)));
    const MatrixBallPoint<double> b(full,
                                    scaled_to_ball(random_matrix(rng, 2, 2, 1.0), rng.uniform(0.0, 0.9)));
    const MatrixBallPoint<double> c(full,
                                    scaled_to_ball(random_matrix(rng, 2, 2, 1.0), rng.uniform(0.0, 0.9)));
    CHECK(kobayashi_distance(a, c) <=
          kobayashi_distance(a, b) + kobayashi_distance(b, c) + 1e-9);
  }
}

TEST_CASE("polydisk distance equals the max of factor distances") {
  Rng rng(109);
  const MatrixBallShape<double> polydisk(3, 3, BallKind::Polydisk);
  for (int trial = 0; trial < 100; ++trial) {
    CMat p = CMat::Zero(3, 3), q = CMat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      p(i, i) = rng.complex_in_disk(0.9);
      q(i, i) = rng.complex_in_disk(0.9);
    }
    double max_factor = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Cd m = (q(i, i) - p(i, i)) / (1.0 - std::conj(p(i, i)) * q(i, i));
      max_factor = std::max(max_factor, std::atanh(std::abs(m)));
    }
    const double d = kobayashi_distance(MatrixBallPoint<double>(polydisk, p),
                                        MatrixBallPoint<double>(polydisk, q));
    CHECK(d == doctest::Approx(max_factor).epsilon(1e-12));
  }
}

TEST_CASE("complex 2-ball distance agrees with the ball-model closed form") {
  Rng rng(110);
  const MatrixBallShape<double> shape(2, 1, BallKind::ComplexBall);
  for (int trial = 0; trial < 1000; ++trial) {
    const Cd pz = rng.complex_in_disk(0.65), pw = rng.complex_in_disk(0.65);
    const Cd qz = rng.complex_in_disk(0.65), qw = rng.complex_in_disk(0.65);
    CMat p(2, 1), q(2, 1);
    p << pz, pw;
    q << qz, qw;
    if (operator_norm(p) >= 0.95 || operator_norm(q) >= 0.95) continue;
    const double d_ball = kobayashi_distance(MatrixBallPoint<double>(shape, p),
                                             MatrixBallPoint<double>(shape, q));
    const double d_ch2 = ch2_distance(Ch2Point<double>(pz, pw), Ch2Point<double>(qz, qw));
    CHECK(d_ball == doctest::Approx(d_ch2).epsilon(1e-10));
  }
}
