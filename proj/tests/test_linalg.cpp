#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "redyn/error.hpp"
#include "redyn/linalg.hpp"
#include "test_util.hpp"

using namespace redyn;
using namespace redyn::testing;

TEST_CASE("tensor_product") {
  SUBCASE("identity") {
    CHECK((tensor_product(eye(2), eye(2)) - eye(4)).norm() == 0.0);
  }
  SUBCASE("sigma1 x sigma3 by hand") {
    const ComplexMatrix k = tensor_product(pauli(1), pauli(3));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 2) = 1.0;
    expected(1, 3) = -1.0;
    expected(2, 0) = 1.0;
    expected(3, 1) = -1.0;
    CHECK((k - expected).norm() == 0.0);
  }
  SUBCASE("mixed product and index-formula oracle") {
    std::mt19937_64 rng(kSeed);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_complex(rng, 2), b = random_complex(rng, 3);
      const ComplexMatrix c = random_complex(rng, 2), d = random_complex(rng, 3);
      CHECK((tensor_product(a, b) - kron(a, b)).norm() == 0.0);
      const ComplexMatrix lhs = tensor_product(a, b) * tensor_product(c, d);
      const ComplexMatrix rhs = kron(a * c, b * d);
      CHECK((lhs - rhs).norm() < 1e-12 * std::max(1.0, rhs.norm()));
      // tr(A (x) B) = tr A tr B
      CHECK(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
  }
}

TEST_CASE("partial traces") {
  std::mt19937_64 rng(kSeed + 1);
  SUBCASE("factorable input returns the factor") {
    const ComplexMatrix ra = random_density(rng, 3), rb = random_density(rng, 2);
    CHECK((partial_trace_b(tensor_product(ra, rb), 3, 2) - ra).norm() < 1e-14);
    CHECK((partial_trace_a(tensor_product(ra, rb), 3, 2) - rb).norm() < 1e-14);
  }
  SUBCASE("traceless factor gives zero") {
    CHECK(partial_trace_b(tensor_product(pauli(1), pauli(3)), 2, 2).norm() == 0.0);
    CHECK(partial_trace_a(tensor_product(pauli(1), pauli(3)), 2, 2).norm() == 0.0);
  }
  SUBCASE("identity") {
    CHECK((partial_trace_b(eye(4), 2, 2) - 2.0 * eye(2)).norm() == 0.0);
    CHECK((partial_trace_a(eye(4), 2, 2) - 2.0 * eye(2)).norm() == 0.0);
  }
  SUBCASE("basis-vector oracle and trace preservation") {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix m = random_complex(rng, 6);
      CHECK((partial_trace_b(m, 2, 3) - partial_trace_b_oracle(m, 2, 3)).norm() < 1e-12);
      CHECK((partial_trace_a(m, 2, 3) - partial_trace_a_oracle(m, 2, 3)).norm() < 1e-12);
      CHECK(std::abs(partial_trace_b(m, 2, 3).trace() - m.trace()) < tol::trace);
      const ComplexMatrix a = random_complex(rng, 3), b = random_complex(rng, 2);
      CHECK((partial_trace_b(tensor_product(a, b), 3, 2) - b.trace() * a).norm() < tol::recon);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(partial_trace_b(eye(5), 2, 2), Error);
    CHECK_THROWS_AS(partial_trace_a(eye(4), 3, 2), Error);
  }
}

TEST_CASE("strong operator types validate") {
  CHECK_NOTHROW(HermitianOperator{pauli(2)});
  ComplexMatrix bad = pauli(1);
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(HermitianOperator{bad}, Error);
  try {
    HermitianOperator h(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CHECK_THROWS_AS(UnitaryOperator(2.0 * eye(2)), Error);
  CHECK_THROWS_AS(DensityOperator{eye(2)}, Error);  // trace 2
  ComplexMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(DensityOperator{neg}, Error);
  CHECK_NOTHROW(DensityOperator::maximally_mixed(3));
}

TEST_CASE("eig_hermitian") {
  SUBCASE("sigma3") {
    const HermitianEigen e = eig_hermitian(HermitianOperator(pauli(3)));
    REQUIRE(e.values.size() == 2);
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("identity") {
    const HermitianEigen e = eig_hermitian(HermitianOperator(eye(4)));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0));
    CHECK((e.vectors.adjoint() * e.vectors - eye(4)).norm() < tol::unit);
  }
  SUBCASE("random reconstruction") {
    std::mt19937_64 rng(kSeed + 2);
    for (std::size_t dim : {2u, 4u, 9u, 16u}) {
      const ComplexMatrix h = random_hermitian(rng, dim);
      const HermitianEigen e = eig_hermitian(HermitianOperator(h));
      for (std::size_t k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] <= e.values[k]);
      Eigen::VectorXcd lam(static_cast<Eigen::Index>(dim));
      for (std::size_t k = 0; k < dim; ++k) lam(static_cast<Eigen::Index>(k)) = e.values[k];
      const ComplexMatrix rec = e.vectors * lam.asDiagonal() * e.vectors.adjoint();
      CHECK((rec - h).norm() < tol::recon * std::max(1.0, h.norm()));
      CHECK((e.vectors.adjoint() * e.vectors - eye(dim)).norm() < tol::unit);
    }
  }
}

TEST_CASE("unitary_exp") {
  std::mt19937_64 rng(kSeed + 3);
  SUBCASE("t = 0 is exactly the identity") {
    const ComplexMatrix h = random_hermitian(rng, 5);
    CHECK((unitary_exp(HermitianOperator(h), 0.0).matrix() - eye(5)).norm() == 0.0);
  }
  SUBCASE("sigma3 at pi/2") {
    const ComplexMatrix u = unitary_exp(HermitianOperator(pauli(3)), std::numbers::pi / 2).matrix();
    CHECK(std::abs(u(0, 0) - Complex(0, -1)) < 1e-15);
    CHECK(std::abs(u(1, 1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(u(0, 1)) < 1e-15);
  }
  SUBCASE("Taylor oracle, group law, inverse") {
    std::uniform_real_distribution<double> tdist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianOperator h(random_hermitian(rng, 6));
      const double t = tdist(rng), s = tdist(rng);
      const ComplexMatrix u = unitary_exp(h, t).matrix();
      CHECK((u - expm_taylor(h.matrix(), t)).norm() < 1e-10);
      CHECK((u * unitary_exp(h, s).matrix() - unitary_exp(h, t + s).matrix()).norm() < 1e-10);
      CHECK((u * unitary_exp(h, -t).matrix() - eye(6)).norm() < tol::unit);
    }
  }
  SUBCASE("non-Hermitian input rejected") {
    CHECK_THROWS_AS(unitary_exp(HermitianOperator{random_complex(rng, 3)}, 1.0), Error);
  }
}

TEST_CASE("svd_real") {
  SUBCASE("zero matrix") {
    const RealSvd s = svd_real(RealMatrix::Zero(3, 3));
    for (double v : s.values) CHECK(v == 0.0);
  }
  SUBCASE("already diagonal") {
    RealMatrix m(2, 2);
    m << 3, 0, 0, 1;
    const RealSvd s = svd_real(m);
    CHECK(s.values[0] == doctest::Approx(3.0));
    CHECK(s.values[1] == doctest::Approx(1.0));
    CHECK((s.left.cwiseAbs() - RealMatrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((s.right.cwiseAbs() - RealMatrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("CNOT coefficient matrix is rank one") {
    RealMatrix v = RealMatrix::Zero(3, 3);
    v(0, 2) = -0.5;
    const RealSvd s = svd_real(v);
    CHECK(s.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(s.values[1]) < 1e-15);
    CHECK(std::abs(s.values[2]) < 1e-15);
  }
  SUBCASE("random rectangular reconstruction") {
    std::mt19937_64 rng(kSeed + 4);
    std::normal_distribution<double> n(0.0, 1.0);
    RealMatrix m(3, 8);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = n(rng);
    const RealSvd s = svd_real(m);
    REQUIRE(s.values.size() == 3);
    RealMatrix sigma = RealMatrix::Zero(3, 8);
    for (std::size_t k = 0; k < 3; ++k) {
      sigma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = s.values[k];
      if (k > 0) CHECK(s.values[k - 1] >= s.values[k]);
      CHECK(s.values[k] >= 0.0);
    }
    CHECK((s.left * sigma * s.right.transpose() - m).norm() < tol::recon);
    CHECK((s.left.transpose() * s.left - RealMatrix::Identity(3, 3)).norm() < tol::unit);
    CHECK((s.right.transpose() * s.right - RealMatrix::Identity(8, 8)).norm() < tol::unit);
  }
}

TEST_CASE("trace distance and norms") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 0;
  b << 0, 0, 0, 1;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(spectral_norm(tensor_product(pauli(1), pauli(3))) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(pauli(3)) == doctest::Approx(-1.0));
}
