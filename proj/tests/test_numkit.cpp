#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "vbe/numkit.hpp"

using namespace vbe;

namespace {

const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
const ComplexMatrix X = pauli_matrix('X');
const ComplexMatrix Y = pauli_matrix('Y');
const ComplexMatrix Z = pauli_matrix('Z');

}  // namespace

TEST_CASE("kron of identities is identity") {
  CHECK(kron(I2, I2).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("kron(Z, X) has blocks X and -X") {
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect.topLeftCorner(2, 2) = X;
  expect.bottomRightCorner(2, 2) = -X;
  CHECK((kron(Z, X) - expect).norm() == 0.0);
}

TEST_CASE("kron(X, Y) squares to identity") {
  const ComplexMatrix xy = kron(X, Y);
  CHECK((xy * xy - ComplexMatrix::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("kron is associative and dimensions multiply") {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = test::random_complex(rng, 2, 3);
  const ComplexMatrix b = test::random_complex(rng, 3, 2);
  const ComplexMatrix c = test::random_complex(rng, 2, 2);
  const ComplexMatrix left = kron(kron(a, b), c);
  CHECK(left.rows() == 12);
  CHECK(left.cols() == 12);
  CHECK((left - kron(a, kron(b, c))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frobenius norm") {
  CHECK(frobenius_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(frobenius_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(frobenius_norm(ComplexMatrix::Ones(2, 2)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("spectral norm") {
  CHECK(spectral_norm(Z) == doctest::Approx(1.0).epsilon(1e-12));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  // 2 SWAP - I has eigenvalues {1, 1, 1, -3}.
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const ComplexMatrix h = 2.0 * swap - ComplexMatrix::Identity(4, 4);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const double oracle = es.eigenvalues().cwiseAbs().maxCoeff();
  CHECK(oracle == doctest::Approx(3.0));
  CHECK(std::abs(spectral_norm(h) - oracle) <= 1e-10 * oracle);

  CHECK_THROWS_AS(spectral_norm(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("spectral norm is unitarily invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = test::random_complex(rng, 8, 8);
    const ComplexMatrix u = test::random_unitary(rng, 8);
    const ComplexMatrix v = test::random_unitary(rng, 8);
    CHECK(std::abs(spectral_norm(u * a * v) - spectral_norm(a)) <= 1e-9);
  }
}

TEST_CASE("spectral norm agrees with SVD") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = test::random_complex(rng, 16, 16);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const double ref = svd.singularValues()(0);
  CHECK(std::abs(spectral_norm(a) - ref) <= 1e-10 * ref);
}

TEST_CASE("exponential of anti-hermitian matrices") {
  CHECK((matrix_exp_antihermitian(ComplexMatrix::Zero(4, 4)) - ComplexMatrix::Identity(4, 4)).norm() < 1e-14);

  const Complex i(0, 1);
  const ComplexMatrix e = matrix_exp_antihermitian(i * (std::numbers::pi / 2) * Z);
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = i;
  expect(1, 1) = -i;
  CHECK((e - expect).norm() < 1e-12);

  // ZZ and XX commute, so exp(0.3 i (ZZ + XX)) = exp(0.3 i ZZ) exp(0.3 i XX)
  // with exp(i t P) = cos t + i sin t P.
  const ComplexMatrix zz = kron(Z, Z), xx = kron(X, X), id = ComplexMatrix::Identity(4, 4);
  const double t = 0.3;
  const ComplexMatrix analytic = (std::cos(t) * id + i * std::sin(t) * zz) * (std::cos(t) * id + i * std::sin(t) * xx);
  CHECK((matrix_exp_antihermitian(i * t * (zz + xx)) - analytic).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(matrix_exp_antihermitian(Z), std::invalid_argument);
}

TEST_CASE("exp(g) exp(-g) is identity and exp(g) is unitary") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = test::random_complex(rng, 8, 8);
    const ComplexMatrix g = 0.5 * (a - a.adjoint());
    const ComplexMatrix e = matrix_exp_antihermitian(g);
    CHECK(is_unitary(e, 1e-10));
    CHECK((e * matrix_exp_antihermitian(-g) - ComplexMatrix::Identity(8, 8)).norm() <= 1e-10);
  }
}

TEST_CASE("exp(i theta P) = cos(theta) I + i sin(theta) P for Pauli strings") {
  const Complex i(0, 1);
  const std::vector<ComplexMatrix> strings = {kron(X, Z), kron(Y, Y), kron(kron(Z, I2), X)};
  for (const auto& p : strings) {
    for (double t : {-1.1, 0.2, 2.5}) {
      const ComplexMatrix id = ComplexMatrix::Identity(p.rows(), p.cols());
      const ComplexMatrix expect = std::cos(t) * id + i * std::sin(t) * p;
      CHECK((matrix_exp_antihermitian(i * t * p) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("unitary and hermitian predicates") {
  CHECK(is_unitary(I2));
  CHECK(is_hermitian(I2));
  CHECK(is_unitary(X));
  CHECK(is_hermitian(X));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK_FALSE(is_unitary(d));
  CHECK(is_hermitian(d));
  CHECK_FALSE(is_hermitian(Complex(0, 1) * X));
}

TEST_CASE("power of two helpers") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(12));
  CHECK(exact_log2(256) == 8);
  CHECK_THROWS_AS(exact_log2(6), std::invalid_argument);
}
