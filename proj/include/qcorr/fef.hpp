/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_FEF_HPP
#define QCORR_FEF_HPP

#include <qcorr/linalg.hpp>
#include <qcorr/measures.hpp>
#include <qcorr/states.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace qcorr {

// dimension guard for the unitary ascent
inline constexpr int kMaxFefDim = 9;
// slack on the [K/(d d'), 1] band of reported values
inline constexpr double kFefBandSlack = 1e-9;

// K orthonormal vectors on d x d', each with all d Schmidt coefficients
// equal to 1/sqrt(d)
struct MaxEntangledSet {
  int d = 0;
  int dPrime = 0;
  int K = 0;
  std::vector<Vector> vectors;
};

namespace detail {

// singular values of the d x d' matrix reshaped from a bipartite ket
inline RealVector schmidt_coefficients(const Vector& v, int d, int dPrime) {
  Matrix m(d, dPrime);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < dPrime; ++b) m(a, b) = v(a * dPrime + b);
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

}  // namespace detail

inline MaxEntangledSet make_max_entangled_set(int d, int dPrime, std::vector<Vector> vectors) {
  if (d < 1 || dPrime < d) throw DimensionError("make_max_entangled_set: need 1 <= d <= dPrime");
  const double target = 1.0 / std::sqrt(static_cast<double>(d));
  for (const Vector& v : vectors) {
    if (v.size() != static_cast<long>(d) * dPrime) {
      throw DimensionError("make_max_entangled_set: vector length mismatch");
    }
    const RealVector sv = detail::schmidt_coefficients(v, d, dPrime);
    for (long i = 0; i < sv.size(); ++i) {
      if (std::abs(sv(i) - target) > 1e-12) {
        throw StateError("make_max_entangled_set: Schmidt coefficients not all 1/sqrt(d)");
      }
    }
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (std::abs(vectors[i].dot(vectors[j])) > 1e-12) {
        throw StateError("make_max_entangled_set: vectors not pairwise orthogonal");
      }
    }
  }
  MaxEntangledSet set;
  set.d = d;
  set.dPrime = dPrime;
  set.K = static_cast<int>(vectors.size());
  set.vectors = std::move(vectors);
  return set;
}

// the K = floor(d'/d) standard vectors (1/sqrt(d)) sum_j |j>|j + i d>
inline MaxEntangledSet max_entangled_basis(int d, int dPrime) {
  if (d < 1 || dPrime < d) throw DimensionError("max_entangled_basis: need 1 <= d <= dPrime");
  const int K = dPrime / d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Vector> vectors;
  vectors.reserve(K);
  for (int i = 0; i < K; ++i) {
    Vector v = Vector::Zero(static_cast<long>(d) * dPrime);
    for (int j = 0; j < d; ++j) v(static_cast<long>(j) * dPrime + j + i * d) = amp;
    vectors.push_back(std::move(v));
  }
  return make_max_entangled_set(d, dPrime, std::move(vectors));
}

struct FefResult {
  double value = 0.0;
  OptimizerReport report;
};

namespace detail {

// overlap of rho, conjugated by I (x) V on the second factor, with the
// projector onto the standard maximally entangled set
class FefObjective {
 public:
  FefObjective(const DensityOperator& rho, const MaxEntangledSet& set)
      : d_(rho.dims.dimA), dPrime_(rho.dims.dimB), rho_(rho.mat) {
    projector_ = Matrix::Zero(rho.mat.rows(), rho.mat.cols());
    for (const Vector& v : set.vectors) projector_ += v * v.adjoint();
  }

  double value(const Matrix& v) const {
    const Matrix conj = kron(Matrix::Identity(d_, d_), v);
    return (projector_ * conj * rho_ * conj.adjoint()).trace().real();
  }

  // gradient of the objective with respect to conj(V); the fixed-point
  // ascent feeds this through the polar decomposition
  Matrix environment(const Matrix& v) const {
    const Matrix conj = kron(Matrix::Identity(d_, d_), v);
    return partial_trace_raw(projector_ * conj * rho_, d_, dPrime_, Keep::Second);
  }

 private:
  int d_;
  int dPrime_;
  Matrix rho_;
  Matrix projector_;
};

}  // namespace detail

// objective values produced by successive polar updates starting from v0;
// exposed so the non-decreasing property can be observed directly
inline std::vector<double> fef_fixed_point_trace(const DensityOperator& rho, const Matrix& v0,
                                                 int steps) {
  const detail::FefObjective objective(rho, max_entangled_basis(rho.dims.dimA, rho.dims.dimB));
  Matrix v = v0;
  std::vector<double> values{objective.value(v)};
  for (int i = 0; i < steps; ++i) {
    v = polar_unitary(objective.environment(v));
    values.push_back(objective.value(v));
  }
  return values;
}

// Maximize sum_i <psi_i|(I (x) V) rho (I (x) V+)|psi_i> over unitaries V on
// the second subsystem by polar fixed-point iteration with Haar restarts.
// The first restart starts at V = I. A degenerate polar step ends its
// restart with the value accumulated so far. Deterministic given cfg.seed.
inline FefResult fef_numeric(const DensityOperator& rho, const OptimizerConfig& cfg) {
  const int d = rho.dims.dimA;
  const int dPrime = rho.dims.dimB;
  if (d < 1 || dPrime < d) throw DimensionError("fef_numeric: need 1 <= d <= dPrime");
  if (dPrime > kMaxFefDim) {
    std::ostringstream oss;
    oss << "fef_numeric: second dimension " << dPrime << " exceeds " << kMaxFefDim;
    throw CapabilityError(oss.str());
  }
  if (cfg.restarts < 1) throw DomainError("fef_numeric: restarts must be >= 1");

  const MaxEntangledSet set = max_entangled_basis(d, dPrime);
  const detail::FefObjective objective(rho, set);

  OptimizerReport report;
  report.restarts = cfg.restarts;
  report.seed = cfg.seed;

  double bestValue = 0.0;
  bool haveBest = false;
  bool bestConverged = false;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(seed_mix(cfg.seed, static_cast<std::uint64_t>(restart)));
    Matrix v = restart == 0 ? Matrix(Matrix::Identity(dPrime, dPrime))
                            : haar_random_unitary(dPrime, rng);
    double value = objective.value(v);
    bool converged = false;
    int iter = 0;
    for (; iter < cfg.maxIterations; ++iter) {
      Matrix next;
      try {
        next = polar_unitary(objective.environment(v));
      } catch (const DegeneratePolarError&) {
        break;
      }
      const double nextValue = objective.value(next);
      const double improvement = nextValue - value;
      if (nextValue > value) {
        v = std::move(next);
        value = nextValue;
      }
      if (improvement < cfg.tolerance) {
        converged = true;
        break;
      }
    }
    report.iterations += iter;
    report.restartValues.push_back(value);
    if (!haveBest || value > bestValue) {
      haveBest = true;
      bestValue = value;
      bestConverged = converged;
    }
  }

  report.bestValue = bestValue;
  report.converged = bestConverged;

  const double floor = static_cast<double>(set.K) / (static_cast<double>(d) * dPrime);
  if (bestValue < floor - kFefBandSlack || bestValue > 1.0 + kFefBandSlack) {
    std::ostringstream oss;
    oss << "fef_numeric: value " << bestValue << " outside [" << floor << ", 1]";
    throw StateError(oss.str());
  }
  return FefResult{bestValue, std::move(report)};
}

// closed form for the d x d^2 Werner complement
inline double fef_werner_complement_closed(const WernerParams& p) {
  const double d = p.d;
  return (d + p.x + std::sqrt((d * d - 1.0) * (1.0 - p.x * p.x))) / (2.0 * d);
}

// The x-independent optimal set for the Werner complement: vector r pairs
// A-level r with the r-th diagonal slot and every other level k with the
// matching (sym +/- antisym)/sqrt(2) combination of pair slots.
inline MaxEntangledSet werner_complement_max_set(int d) {
  if (d < 2) throw DomainError("werner_complement_max_set: d must be >= 2");
  const int dimC = d * d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  const double half = amp / std::sqrt(2.0);
  std::vector<Vector> vectors;
  vectors.reserve(d);
  for (int r = 0; r < d; ++r) {
    Vector v = Vector::Zero(static_cast<long>(d) * dimC);
    v(static_cast<long>(r) * dimC + werner_slot_diag(d, r)) = amp;
    for (int k = 0; k < r; ++k) {
      v(static_cast<long>(k) * dimC + werner_slot_sym(d, k, r)) = half;
      v(static_cast<long>(k) * dimC + werner_slot_asym(d, k, r)) = half;
    }
    for (int k = r + 1; k < d; ++k) {
      v(static_cast<long>(k) * dimC + werner_slot_sym(d, r, k)) = half;
      v(static_cast<long>(k) * dimC + werner_slot_asym(d, r, k)) = -half;
    }
    vectors.push_back(std::move(v));
  }
  return make_max_entangled_set(d, dimC, std::move(vectors));
}

// maximally entangled set aligned with the explicit isotropic complement:
// vector r pairs A-level k with C-slot (k, r) of the product basis
inline MaxEntangledSet eta_max_set(int d) {
  if (d < 2) throw DomainError("eta_max_set: d must be >= 2");
  const int dimC = d * d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Vector> vectors;
  vectors.reserve(d);
  for (int r = 0; r < d; ++r) {
    Vector v = Vector::Zero(static_cast<long>(d) * dimC);
    for (int k = 0; k < d; ++k) {
      v(static_cast<long>(k) * dimC + iso_slot(d, k, r)) = amp;
    }
    vectors.push_back(std::move(v));
  }
  return make_max_entangled_set(d, dimC, std::move(vectors));
}

// overlap of the explicit isotropic complement with the eta set; a lower
// bound on the fully entangled fraction of that state
inline double fef_isotropic_complement_lower_bound(const IsotropicParams& p) {
  const IsotropicComplementAngles a = isotropic_complement_angles(p);
  const double d = p.d;
  const double rootDm1 = std::sqrt(d - 1.0);
  const double top = a.cosBeta * a.cosVartheta + rootDm1 * a.sinBeta;
  const double rest = a.cosBetaTilde * a.sinVarthetaTilde + rootDm1 * a.sinBetaTilde;
  return (a.p * top * top + (1.0 - a.p) * rest * rest) / d;
}

struct PhiMaxSpecial {
  bool exists = false;
  double f1 = 0.0;
  std::vector<Vector> vectors;
};

// parameter at which the top explicit complement vector becomes maximally
// entangled; a physical parameter exists only for d = 2 and d = 3
inline PhiMaxSpecial phi_max_special(int d) {
  if (d < 2) throw DomainError("phi_max_special: d must be >= 2");
  PhiMaxSpecial out;
  if (d > 3) return out;
  out.exists = true;
  out.f1 = (3.0 - d) / (static_cast<double>(d) * d - d + 2.0);
  out.vectors = isotropic_complement_explicit_vectors({d, out.f1});
  return out;
}

struct TwoAngleScanResult {
  double gammaStar = 0.0;
  double gammaPrimeStar = 0.0;
  double value = 0.0;
};

// Exhaustive two-angle maximization of the 2 x 4 overlap objective on an
// inclusive uniform grid over [-pi/2, pi/2]^2. Ties break toward the
// lexicographically smallest (gamma, gamma') pair.
inline TwoAngleScanResult appendix_two_angle_scan(double x, int gridSize) {
  if (gridSize < 3) throw DomainError("appendix_two_angle_scan: gridSize must be >= 3");
  const WernerComplementAngles a = werner_complement_angles({2, x});
  const double pi = std::acos(-1.0);

  std::vector<double> angles(gridSize), c(gridSize), s(gridSize);
  for (int i = 0; i < gridSize; ++i) {
    angles[i] = pi * (static_cast<double>(i) / (gridSize - 1) - 0.5);
    c[i] = std::cos(angles[i]);
    s[i] = std::sin(angles[i]);
  }

  TwoAngleScanResult best;
  bool have = false;
  for (int i = 0; i < gridSize; ++i) {
    const double head = c[i] * a.cosAlpha;
    for (int j = 0; j < gridSize; ++j) {
      const double f1 = head + a.sinAlpha * (a.cosTheta * c[j] + a.sinTheta * s[j]);
      const double f2 = head + a.sinAlpha * (a.cosTheta * s[j] + a.sinTheta * c[j]);
      const double value = (f1 * f1 + f2 * f2) / 4.0;
      if (!have || value > best.value) {
        have = true;
        best.value = value;
        best.gammaStar = angles[i];
        best.gammaPrimeStar = angles[j];
      }
    }
  }
  return best;
}

}  // namespace qcorr

#endif  // QCORR_FEF_HPP
