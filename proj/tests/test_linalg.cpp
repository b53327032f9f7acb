/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch_amalgamated.hpp>

#include <qcorr/linalg.hpp>
#include <qcorr/states.hpp>

#include <complex>
#include <random>

using namespace qcorr;

namespace {

Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

Matrix random_hermitian(int n, std::mt19937_64& rng) {
  Matrix m = random_complex(n, n, rng);
  return Matrix((m + m.adjoint()) / 2.0);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron matches an index-by-index evaluation") {
  std::mt19937_64 rng(43423);
  const Matrix a = random_complex(2, 3, rng);
  const Matrix b = random_complex(4, 2, rng);
  const Matrix k = kron(a, b);
  REQUIRE(k.rows() == 8);
  REQUIRE(k.cols() == 6);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Complex expected = a(i / 4, j / 2) * b(i % 4, j % 2);
      REQUIRE(std::abs(k(i, j) - expected) < 1e-14);
    }
  }
}

TEST_CASE("kron of identities is the identity") {
  const Matrix k = kron(Matrix::Identity(3, 3), Matrix::Identity(4, 4));
  REQUIRE(max_abs(k - Matrix::Identity(12, 12)) == 0.0);
}

TEST_CASE("partial trace agrees with a four-index oracle") {
  std::mt19937_64 rng(90123);
  const int dA = 3, dB = 4;
  const Matrix m = random_complex(dA * dB, dA * dB, rng);

  Matrix oracleA = Matrix::Zero(dA, dA);
  Matrix oracleB = Matrix::Zero(dB, dB);
  for (int a = 0; a < dA; ++a)
    for (int a2 = 0; a2 < dA; ++a2)
      for (int b = 0; b < dB; ++b)
        for (int b2 = 0; b2 < dB; ++b2) {
          const Complex v = m(a * dB + b, a2 * dB + b2);
          if (b == b2) oracleA(a, a2) += v;
          if (a == a2) oracleB(b, b2) += v;
        }

  REQUIRE(max_abs(partial_trace_raw(m, dA, dB, Keep::First) - oracleA) < 1e-13);
  REQUIRE(max_abs(partial_trace_raw(m, dA, dB, Keep::Second) - oracleB) < 1e-13);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = Complex(1.0 / std::sqrt(2.0), 0.0);
  const DensityOperator rho = make_density(bell * bell.adjoint(), BipartiteDims{2, 2});
  const DensityOperator a = partial_trace(rho, Keep::First);
  const DensityOperator b = partial_trace(rho, Keep::Second);
  REQUIRE(max_abs(a.mat - 0.5 * Matrix::Identity(2, 2)) < 1e-15);
  REQUIRE(max_abs(b.mat - 0.5 * Matrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("partial trace rejects mismatched dimensions") {
  const Matrix m = Matrix::Identity(6, 6);
  REQUIRE_THROWS_AS(partial_trace_raw(m, 4, 2, Keep::First), DimensionError);
}

TEST_CASE("make_density enforces the state invariants") {
  REQUIRE_NOTHROW(make_density(0.25 * Matrix::Identity(4, 4), BipartiteDims{2, 2}));

  Matrix notHermitian = 0.25 * Matrix::Identity(4, 4);
  notHermitian(0, 1) = Complex(0.1, 0.0);
  REQUIRE_THROWS_AS(make_density(notHermitian, BipartiteDims{2, 2}), StateError);

  REQUIRE_THROWS_AS(make_density(0.5 * Matrix::Identity(4, 4), BipartiteDims{2, 2}), StateError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = Complex(1.5, 0.0);
  negative(1, 1) = Complex(-0.5, 0.0);
  REQUIRE_THROWS_AS(make_density(negative, BipartiteDims{2, 1}), StateError);

  REQUIRE_THROWS_AS(make_density(Matrix::Identity(4, 4) / 4.0, BipartiteDims{2, 3}),
                    DimensionError);
}

TEST_CASE("make_pure_state checks norm and dims") {
  Vector v = Vector::Zero(4);
  v(0) = Complex(1.0, 0.0);
  REQUIRE_NOTHROW(make_pure_state(v, {2, 2}));
  REQUIRE_THROWS_AS(make_pure_state(v, {2, 3}), DimensionError);
  v(0) = Complex(0.5, 0.0);
  REQUIRE_THROWS_AS(make_pure_state(v, {2, 2}), StateError);
}

TEST_CASE("eigh returns ascending eigenvalues in a consistent frame") {
  std::mt19937_64 rng(777);
  const Matrix h = random_hermitian(5, rng);
  const EighResult eig = eigh(h);
  for (long i = 1; i < eig.values.size(); ++i) {
    REQUIRE(eig.values(i) >= eig.values(i - 1));
  }
  Matrix rebuilt = eig.vectors *
                   eig.values.cast<Complex>().asDiagonal() *
                   eig.vectors.adjoint();
  REQUIRE(max_abs(rebuilt - h) < 1e-12);
}

TEST_CASE("eigh of the flat Werner state is fourfold degenerate") {
  const EighResult eig = eigh(werner_state(WernerParams(2, 0.5)).mat);
  for (long i = 0; i < 4; ++i) {
    REQUIRE(std::abs(eig.values(i) - 0.25) < 1e-14);
  }
}

TEST_CASE("eigh rejects grossly non-Hermitian input but symmetrizes round-off") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = Complex(0.0, 1e-3);
  REQUIRE_THROWS_AS(eigh(bad), DomainError);

  Matrix nearly = Matrix::Identity(2, 2);
  nearly(0, 1) = Complex(0.0, 1e-11);
  REQUIRE_NOTHROW(eigh(nearly));
}

TEST_CASE("unitary_from_hermitian exponentiates and round-trips eigenphases") {
  std::mt19937_64 rng(2024);
  const int n = 4;

  // Hermitian matrix with eigenvalues inside (-pi, pi)
  const Matrix q = haar_random_unitary(n, rng);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  RealVector phases(n);
  for (int i = 0; i < n; ++i) phases(i) = unif(rng);
  const Matrix h = q * phases.cast<Complex>().asDiagonal() * q.adjoint();

  const Matrix u = unitary_from_hermitian(h);
  REQUIRE(max_abs(u * u.adjoint() - Matrix::Identity(n, n)) < 1e-12);

  Eigen::ComplexEigenSolver<Matrix> solver(u);
  std::vector<double> got;
  for (int i = 0; i < n; ++i) got.push_back(std::arg(solver.eigenvalues()(i)));
  std::vector<double> want(phases.data(), phases.data() + n);
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (int i = 0; i < n; ++i) REQUIRE(std::abs(got[i] - want[i]) < 1e-8);

  REQUIRE(max_abs(unitary_from_hermitian(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("haar_random_unitary is unitary and seed-deterministic") {
  std::mt19937_64 rng1(42), rng2(42), rng3(43);
  const Matrix u1 = haar_random_unitary(5, rng1);
  const Matrix u2 = haar_random_unitary(5, rng2);
  const Matrix u3 = haar_random_unitary(5, rng3);
  REQUIRE(max_abs(u1 * u1.adjoint() - Matrix::Identity(5, 5)) < 1e-12);
  REQUIRE(max_abs(u1 - u2) == 0.0);
  REQUIRE(max_abs(u1 - u3) > 1e-3);

  std::mt19937_64 rng4(7);
  const Matrix s = haar_random_unitary(1, rng4);
  REQUIRE(std::abs(std::abs(s(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("polar_unitary extracts the unitary factor") {
  REQUIRE(max_abs(polar_unitary(2.0 * Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)) < 1e-14);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = Complex(1.0, 0.0);
  diag(1, 1) = Complex(-3.0, 0.0);
  Matrix want = Matrix::Identity(2, 2);
  want(1, 1) = Complex(-1.0, 0.0);
  REQUIRE(max_abs(polar_unitary(diag) - want) < 1e-14);

  std::mt19937_64 rng(11);
  const Matrix u = haar_random_unitary(4, rng);
  REQUIRE(max_abs(polar_unitary(u) - u) < 1e-12);
}

TEST_CASE("polar_unitary maximizes Re tr(W^dag m) over unitaries") {
  std::mt19937_64 rng(5150);
  const Matrix m = random_complex(4, 4, rng);
  const Matrix best = polar_unitary(m);
  const double top = (best.adjoint() * m).trace().real();
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix w = haar_random_unitary(4, rng);
    REQUIRE((w.adjoint() * m).trace().real() <= top + 1e-10);
  }
}

TEST_CASE("polar_unitary completes rank-deficient input, rejects zero") {
  // the returned factor must still attain the maximal overlap sum(sigma)
  Matrix rank1 = Matrix::Zero(3, 3);
  rank1(0, 0) = Complex(1.0, 0.0);
  const Matrix w = polar_unitary(rank1);
  REQUIRE(max_abs(w.adjoint() * w - Matrix::Identity(3, 3)) < 1e-13);
  REQUIRE_THAT((w.adjoint() * rank1).trace().real(),
               Catch::Matchers::WithinAbs(1.0, 1e-13));

  REQUIRE_THROWS_AS(polar_unitary(Matrix::Zero(2, 2)), DegeneratePolarError);
}

TEST_CASE("xlog2x handles the entropy conventions") {
  REQUIRE(xlog2x(0.0) == 0.0);
  REQUIRE(xlog2x(1.0) == 0.0);
  REQUIRE(std::abs(xlog2x(0.5) + 0.5) < 1e-15);
  REQUIRE(xlog2x(-0.5e-12) == 0.0);
  REQUIRE(xlog2x(1.0 + 0.5e-12) == 0.0);
  REQUIRE_THROWS_AS(xlog2x(-1e-10), DomainError);
  REQUIRE_THROWS_AS(xlog2x(1.0 + 1e-10), DomainError);
  REQUIRE(std::abs(binary_entropy(0.5) - 1.0) < 1e-15);
  REQUIRE(binary_entropy(0.0) == 0.0);
}

TEST_CASE("reduce_pure_state reproduces known tripartite reductions") {
  // |000> + |111> on 2x2x2
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = Complex(1.0 / std::sqrt(2.0), 0.0);
  const PureStateVector psi = make_pure_state(ghz, {2, 2, 2});

  const Matrix single = reduce_pure_state(psi, {0});
  REQUIRE(max_abs(single - 0.5 * Matrix::Identity(2, 2)) < 1e-15);

  Matrix pair = reduce_pure_state(psi, {0, 2});
  Matrix wantPair = Matrix::Zero(4, 4);
  wantPair(0, 0) = wantPair(3, 3) = Complex(0.5, 0.0);
  REQUIRE(max_abs(pair - wantPair) < 1e-15);

  // keeping everything reproduces the projector
  const Matrix full = reduce_pure_state(psi, {0, 1, 2});
  REQUIRE(max_abs(full - Matrix(ghz * ghz.adjoint())) < 1e-15);

  REQUIRE_THROWS_AS(reduce_pure_state(psi, {2, 0}), DimensionError);
  REQUIRE_THROWS_AS(reduce_pure_state(psi, {0, 0}), DimensionError);
  REQUIRE_THROWS_AS(reduce_pure_state(psi, {3}), DimensionError);
}

TEST_CASE("reduce_pure_state is consistent with partial_trace on a bipartite cut") {
  std::mt19937_64 rng(31415);
  Vector amps = random_complex(12, 1, rng).col(0);
  amps /= amps.norm();
  const PureStateVector psi = make_pure_state(amps, {3, 4});
  const Matrix rho = amps * amps.adjoint();
  REQUIRE(max_abs(reduce_pure_state(psi, {0}) - partial_trace_raw(rho, 3, 4, Keep::First)) < 1e-13);
  REQUIRE(max_abs(reduce_pure_state(psi, {1}) - partial_trace_raw(rho, 3, 4, Keep::Second)) < 1e-13);
}

TEST_CASE("seed_mix is deterministic and spreads indices") {
  REQUIRE(seed_mix(42, 0) == seed_mix(42, 0));
  REQUIRE(seed_mix(42, 0) != seed_mix(42, 1));
  REQUIRE(seed_mix(42, 0) != seed_mix(43, 0));
}
