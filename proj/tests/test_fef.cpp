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

#include <qcorr/fef.hpp>

#include <cmath>
#include <random>

using namespace qcorr;

namespace {

OptimizerConfig fast_cfg(int dPrime, int restarts = 8) {
  OptimizerConfig cfg = OptimizerConfig::fef_defaults(dPrime);
  cfg.restarts = restarts;
  cfg.seed = 42;
  return cfg;
}

double quarter_square_form(const WernerParams& p) {
  const WernerSpectrum s = werner_spectrum(p);
  const double root =
      (p.d + 1.0) * std::sqrt(s.lambdaPlus) + (p.d - 1.0) * std::sqrt(s.lambdaMinus);
  return root * root / 4.0;
}

double overlap_sum(const MaxEntangledSet& set, const DensityOperator& rho) {
  double sum = 0.0;
  for (const Vector& v : set.vectors) sum += (v.adjoint() * rho.mat * v)(0, 0).real();
  return sum;
}

}  // namespace

TEST_CASE("standard maximally entangled basis layout") {
  const MaxEntangledSet set = max_entangled_basis(2, 4);
  REQUIRE(set.K == 2);
  const double amp = 1.0 / std::sqrt(2.0);
  CHECK_THAT(set.vectors[0](0).real(), Catch::Matchers::WithinAbs(amp, 1e-15));
  CHECK_THAT(set.vectors[0](5).real(), Catch::Matchers::WithinAbs(amp, 1e-15));
  CHECK_THAT(set.vectors[1](2).real(), Catch::Matchers::WithinAbs(amp, 1e-15));
  CHECK_THAT(set.vectors[1](7).real(), Catch::Matchers::WithinAbs(amp, 1e-15));
  CHECK(set.vectors[0].cwiseAbs().sum() == 2 * amp);

  const MaxEntangledSet square = max_entangled_basis(3, 3);
  REQUIRE(square.K == 1);
  CHECK((square.vectors[0] - max_entangled_ket(3)).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK(max_entangled_basis(3, 9).K == 3);
  CHECK(max_entangled_basis(2, 5).K == 2);  // remainder slot unused
  CHECK_THROWS_AS(max_entangled_basis(4, 3), DimensionError);
}

TEST_CASE("maximally entangled set factory enforces invariants") {
  Vector product = Vector::Zero(4);
  product(0) = 1.0;
  CHECK_THROWS_AS(make_max_entangled_set(2, 2, {product}), StateError);

  const Vector bell = max_entangled_ket(2);
  CHECK_THROWS_AS(make_max_entangled_set(2, 2, {bell, bell}), StateError);
  CHECK_THROWS_AS(make_max_entangled_set(2, 2, {Vector::Zero(6)}), DimensionError);
  CHECK_NOTHROW(make_max_entangled_set(2, 2, {bell}));
}

TEST_CASE("oracle recovers unit overlap on a maximally entangled state") {
  const Vector bell = max_entangled_ket(2);
  const DensityOperator rho = make_density(bell * bell.adjoint(), {2, 2});
  const FefResult r = fef_numeric(rho, fast_cfg(2, 4));
  CHECK_THAT(r.value, Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK(r.report.converged);
}

TEST_CASE("oracle is flat on the maximally mixed state") {
  const DensityOperator rho = make_density(Matrix::Identity(8, 8) / 8.0, {2, 4});
  const FefResult r = fef_numeric(rho, fast_cfg(4, 4));
  CHECK_THAT(r.value, Catch::Matchers::WithinAbs(0.25, 1e-12));
  for (double v : r.report.restartValues) {
    CHECK_THAT(v, Catch::Matchers::WithinAbs(0.25, 1e-12));
  }
}

TEST_CASE("oracle guards dimensions and restart count") {
  const DensityOperator wide = make_density(Matrix::Identity(20, 20) / 20.0, {2, 10});
  CHECK_THROWS_AS(fef_numeric(wide, fast_cfg(10)), CapabilityError);

  const DensityOperator tall = make_density(Matrix::Identity(8, 8) / 8.0, {4, 2});
  CHECK_THROWS_AS(fef_numeric(tall, fast_cfg(2)), DimensionError);

  OptimizerConfig cfg = fast_cfg(4);
  cfg.restarts = 0;
  const DensityOperator rho = make_density(Matrix::Identity(8, 8) / 8.0, {2, 4});
  CHECK_THROWS_AS(fef_numeric(rho, cfg), DomainError);
}

TEST_CASE("oracle matches the Werner complement closed form at d=2") {
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    CAPTURE(x);
    const WernerParams p{2, x};
    const FefResult r = fef_numeric(werner_complement(p), fast_cfg(4));
    CHECK_THAT(r.value, Catch::Matchers::WithinAbs(fef_werner_complement_closed(p), 1e-4));
  }
}

TEST_CASE("oracle value is invariant under a local unitary on the environment") {
  const WernerParams p{2, 0.3};
  const DensityOperator rho = werner_complement(p);
  std::mt19937_64 rng(7);
  const Matrix w = haar_random_unitary(4, rng);
  const Matrix conj = kron(Matrix::Identity(2, 2), w);
  const DensityOperator rotated = make_density(conj * rho.mat * conj.adjoint(), {2, 4});
  const double a = fef_numeric(rho, fast_cfg(4)).value;
  const double b = fef_numeric(rotated, fast_cfg(4)).value;
  CHECK_THAT(a, Catch::Matchers::WithinAbs(b, 1e-6));
}

TEST_CASE("fixed-point iterates never decrease") {
  const DensityOperator rho = werner_complement({2, 0.3});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix v0 = haar_random_unitary(4, rng);
    const std::vector<double> trace = fef_fixed_point_trace(rho, v0, 40);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      CHECK(trace[i] >= trace[i - 1] - 1e-12);
    }
    CHECK(trace.back() <= 1.0 + 1e-12);
  }
}

TEST_CASE("Werner complement closed form endpoints") {
  CHECK(fef_werner_complement_closed({2, 0.5}) == 1.0);
  CHECK_THAT(fef_werner_complement_closed({3, 1.0 / 3.0}), Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK(fef_werner_complement_closed({2, -1.0}) == 0.25);
  CHECK(fef_werner_complement_closed({2, 1.0}) == 0.75);
  CHECK_THAT(fef_werner_complement_closed({3, 1.0}), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
}

TEST_CASE("both printed closed forms agree") {
  for (int d : {2, 3, 5}) {
    for (int i = 0; i <= 40; ++i) {
      const double x = -1.0 + 2.0 * i / 40.0;
      const WernerParams p{d, x};
      CHECK_THAT(fef_werner_complement_closed(p),
                 Catch::Matchers::WithinAbs(quarter_square_form(p), 1e-12));
    }
  }
}

TEST_CASE("Werner optimal set satisfies invariants and the overlap identity") {
  for (int d : {2, 3}) {
    const MaxEntangledSet set = werner_complement_max_set(d);
    REQUIRE(set.K == d);
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.0 + 2.0 * i / 20.0;
      const WernerParams p{d, x};
      CHECK_THAT(overlap_sum(set, werner_complement(p)),
                 Catch::Matchers::WithinAbs(fef_werner_complement_closed(p), 1e-12));
    }
  }
  const MaxEntangledSet set = werner_complement_max_set(2);
  CHECK_THAT(overlap_sum(set, werner_complement({2, 0.5})),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(overlap_sum(set, werner_complement({2, -1.0})),
             Catch::Matchers::WithinAbs(0.25, 1e-12));
}

TEST_CASE("Werner optimal set building blocks are orthonormal at d=3") {
  const int d = 3;
  const int dimC = d * d;
  // column r*d + k holds the C-side partner of A-level k in vector r
  Matrix u = Matrix::Zero(dimC, dimC);
  const MaxEntangledSet set = werner_complement_max_set(d);
  const double scale = std::sqrt(static_cast<double>(d));
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      for (int c = 0; c < dimC; ++c) {
        u(c, r * d + k) = scale * set.vectors[r](k * dimC + c);
      }
    }
  }
  CHECK((u.adjoint() * u - Matrix::Identity(dimC, dimC)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("closed form above 1/d implies oracle above 1/d") {
  for (double x : {0.2, 0.5, 0.8}) {
    const WernerParams p{2, x};
    REQUIRE(fef_werner_complement_closed(p) > 0.5);
    CHECK(fef_numeric(werner_complement(p), fast_cfg(4)).value > 0.5);
  }
}

TEST_CASE("closed-form FEF and discord peak at the same grid point") {
  for (int d : {2, 3}) {
    const double step = 2.0 / 200.0;
    int fefArg = 0;
    int discordArg = 0;
    double fefBest = -1.0;
    double discordBest = -1.0;
    for (int i = 0; i < 201; ++i) {
      const double x = -1.0 + i * step;
      const WernerParams p{d, x};
      const double f = fef_werner_complement_closed(p);
      if (f > fefBest) {
        fefBest = f;
        fefArg = i;
      }
      const double q = discord_werner_complement_closed(p);
      if (q > discordBest) {
        discordBest = q;
        discordArg = i;
      }
    }
    CHECK(std::abs(-1.0 + fefArg * step - 1.0 / d) <= step + 1e-12);
    CHECK(std::abs(-1.0 + discordArg * step - 1.0 / d) <= step + 1e-12);
    CHECK(std::abs(fefArg - discordArg) <= 1);
  }
}

TEST_CASE("eta set satisfies invariants") {
  for (int d : {2, 3}) {
    const MaxEntangledSet set = eta_max_set(d);
    REQUIRE(set.K == d);
    REQUIRE(set.dPrime == d * d);
  }
}

TEST_CASE("lower bound equals the eta overlap of the explicit complement") {
  for (int d : {2, 3}) {
    const MaxEntangledSet set = eta_max_set(d);
    for (int i = 0; i <= 20; ++i) {
      const double f = static_cast<double>(i) / 20.0;
      const IsotropicParams p{d, f};
      const double bound = fef_isotropic_complement_lower_bound(p);
      CHECK(bound >= 0.0);
      CHECK(bound <= 1.0);
      CHECK_THAT(overlap_sum(set, isotropic_complement_explicit(p)),
                 Catch::Matchers::WithinAbs(bound, 1e-12));
    }
  }
}

TEST_CASE("lower bound does not exceed the oracle value") {
  for (double f : {0.1, 0.5, 0.9}) {
    CAPTURE(f);
    const IsotropicParams p{2, f};
    const double bound = fef_isotropic_complement_lower_bound(p);
    const double canonical = fef_numeric(isotropic_complement(p), fast_cfg(4)).value;
    const double explicitVal = fef_numeric(isotropic_complement_explicit(p), fast_cfg(4)).value;
    CHECK(bound <= canonical + 1e-6);
    CHECK(bound <= explicitVal + 1e-6);
  }
}

TEST_CASE("d=3 endpoint: flat complement against the bound") {
  const IsotropicParams p{3, 1.0};
  const double bound = fef_isotropic_complement_lower_bound(p);
  CHECK_THAT(bound, Catch::Matchers::WithinAbs(1.0 / 9.0, 1e-14));
  OptimizerConfig cfg = fast_cfg(9, 10);
  const FefResult r = fef_numeric(isotropic_complement(p), cfg);
  CHECK_THAT(r.value, Catch::Matchers::WithinAbs(1.0 / 9.0, 1e-3));
  CHECK(bound <= r.value + 1e-6);
}

TEST_CASE("rest vectors become maximally entangled at the predicted parameter") {
  const int d = 3;
  const double f = 3.0 / 19.0;
  const std::vector<Vector> vecs = isotropic_complement_explicit_vectors({d, f});
  const double target = 1.0 / std::sqrt(3.0);
  for (int r = 1; r < d; ++r) {
    const RealVector sv = detail::schmidt_coefficients(vecs[r], d, d * d);
    for (long i = 0; i < sv.size(); ++i) {
      CHECK_THAT(sv(i), Catch::Matchers::WithinAbs(target, 1e-12));
    }
  }
}

TEST_CASE("top-vector special parameter exists only for small d") {
  const PhiMaxSpecial two = phi_max_special(2);
  REQUIRE(two.exists);
  CHECK(two.f1 == 0.25);
  const PhiMaxSpecial three = phi_max_special(3);
  REQUIRE(three.exists);
  CHECK(three.f1 == 0.0);
  CHECK_FALSE(phi_max_special(4).exists);
  CHECK(phi_max_special(4).vectors.empty());

  for (const PhiMaxSpecial& s : {two, three}) {
    const int d = s.vectors.size() == 2 ? 2 : 3;
    const double target = 1.0 / std::sqrt(static_cast<double>(d));
    const RealVector sv = detail::schmidt_coefficients(s.vectors[0], d, d * d);
    REQUIRE(sv.size() == d);
    for (long i = 0; i < sv.size(); ++i) {
      CHECK_THAT(sv(i), Catch::Matchers::WithinAbs(target, 1e-12));
    }
  }
}

TEST_CASE("two-angle scan finds the analytic maximum") {
  const double pi = std::acos(-1.0);

  const TwoAngleScanResult half = appendix_two_angle_scan(0.5, 721);
  CHECK(std::abs(half.gammaStar) <= 1e-12);
  CHECK_THAT(half.gammaPrimeStar, Catch::Matchers::WithinAbs(pi / 4.0, 1e-12));
  CHECK_THAT(half.value, Catch::Matchers::WithinAbs(1.0, 1e-9));

  const TwoAngleScanResult zero = appendix_two_angle_scan(0.0, 721);
  CHECK_THAT(zero.value, Catch::Matchers::WithinAbs((2.0 + std::sqrt(3.0)) / 4.0, 1e-9));
  CHECK(std::abs(zero.gammaStar) <= 1e-12);
  CHECK_THAT(zero.gammaPrimeStar, Catch::Matchers::WithinAbs(pi / 4.0, 1e-12));

  // Flat objective at x = -1: the value is pinned but the argmax sits on
  // rounding noise, so only the first axis (which the objective ignores) has
  // a deterministic lexicographic winner.
  const TwoAngleScanResult flat = appendix_two_angle_scan(-1.0, 721);
  CHECK_THAT(flat.value, Catch::Matchers::WithinAbs(0.25, 1e-12));
  CHECK_THAT(flat.gammaStar, Catch::Matchers::WithinAbs(-pi / 2.0, 1e-12));
  const TwoAngleScanResult flatAgain = appendix_two_angle_scan(-1.0, 721);
  CHECK(flat.gammaPrimeStar == flatAgain.gammaPrimeStar);

  CHECK_THROWS_AS(appendix_two_angle_scan(0.0, 2), DomainError);

  // coarse grids still track the closed form within grid resolution
  for (double x : {-0.6, 0.1, 0.9}) {
    const TwoAngleScanResult r = appendix_two_angle_scan(x, 181);
    CHECK_THAT(r.value,
               Catch::Matchers::WithinAbs(fef_werner_complement_closed({2, x}), 1e-3));
  }
}
