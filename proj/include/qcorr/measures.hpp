/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_MEASURES_HPP
#define QCORR_MEASURES_HPP

#include <qcorr/linalg.hpp>
#include <qcorr/states.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qcorr {

// dimension guard for the projective-measurement oracle
inline constexpr int kMaxMeasuredDim = 16;

// ---------------------------------------------------------------------------
// entropies
// ---------------------------------------------------------------------------

// von Neumann entropy in bits; eigenvalues below tol::kEigenvalueZero are
// treated as exactly zero
inline double von_neumann_entropy(const Matrix& rho) {
  const EighResult eig = eigh(rho);
  double s = 0.0;
  for (long i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    if (lam < -tol::kEigenvalueFloor) {
      std::ostringstream oss;
      oss << "von_neumann_entropy: negative eigenvalue " << lam;
      throw StateError(oss.str());
    }
    if (lam < tol::kEigenvalueZero) continue;
    s -= xlog2x(std::min(lam, 1.0));
  }
  return s;
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  return von_neumann_entropy(rho.mat);
}

// I(A:B) = S(A) + S(B) - S(AB)
inline double mutual_information(const DensityOperator& rho) {
  const Matrix a = partial_trace_raw(rho.mat, rho.dims.dimA, rho.dims.dimB, Keep::First);
  const Matrix b = partial_trace_raw(rho.mat, rho.dims.dimA, rho.dims.dimB, Keep::Second);
  return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(rho.mat);
}

// ---------------------------------------------------------------------------
// entanglement of formation, closed forms
// ---------------------------------------------------------------------------

// Werner family: zero on the separable half x >= 0
inline double eof_werner(const WernerParams& p) {
  if (p.x >= 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - p.x * p.x)));
}

struct IsotropicEof {
  double value;
  // the d > 3 plateau expression extrapolates a result proved for d <= 3
  bool conjectured;
};

inline IsotropicEof eof_isotropic(const IsotropicParams& p) {
  const double d = p.d;
  if (p.f <= 1.0 / d) return IsotropicEof{0.0, false};
  if (p.d == 2) {
    const double g = 2.0 * p.f - 1.0;
    return IsotropicEof{binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - g * g))), false};
  }
  const bool conjectured = p.d > 3;
  const double knee = 4.0 * (d - 1.0) / (d * d);
  if (p.f < knee) {
    const double root = std::sqrt(p.f) + std::sqrt((d - 1.0) * (1.0 - p.f));
    const double xi = root * root / d;
    return IsotropicEof{binary_entropy(xi) + (1.0 - xi) * std::log2(d - 1.0), conjectured};
  }
  // linear stretch joining the curve to log2(d) at f = 1
  return IsotropicEof{(p.f - 1.0) * d / (d - 2.0) * std::log2(d - 1.0) + std::log2(d),
                      conjectured};
}

// ---------------------------------------------------------------------------
// discord closed forms for the complement states
// ---------------------------------------------------------------------------

// discord of the d x d^2 complement, from the entropic trade-off against the
// purifying system
inline double discord_werner_complement_closed(const WernerParams& p) {
  const WernerSpectrum s = werner_spectrum(p);
  const double sAB = -s.dimSym * xlog2x(s.lambdaPlus) - s.dimAntisym * xlog2x(s.lambdaMinus);
  return eof_werner(p) + sAB - std::log2(static_cast<double>(p.d));
}

inline double discord_isotropic_complement_closed(const IsotropicParams& p) {
  const IsotropicSpectrum s = isotropic_spectrum(p);
  const double dsq = static_cast<double>(p.d) * p.d;
  const double sAB = -xlog2x(s.lambdaMax) - (dsq - 1.0) * xlog2x(s.lambdaRest);
  return eof_isotropic(p).value + sAB - std::log2(static_cast<double>(p.d));
}

// ---------------------------------------------------------------------------
// optimizer configuration and reporting
// ---------------------------------------------------------------------------

struct OptimizerConfig {
  int restarts = 20;
  int maxIterations = 200;
  double tolerance = 1e-11;
  std::uint64_t seed = 42;

  // defaults for the unitary fixed-point ascent; the largest supported
  // environment gets the doubled restart budget
  static OptimizerConfig fef_defaults(int dPrime) {
    OptimizerConfig cfg;
    cfg.restarts = dPrime >= 9 ? 40 : 20;
    cfg.maxIterations = 200;
    cfg.tolerance = 1e-11;
    return cfg;
  }

  // defaults for the measurement-basis ascent
  static OptimizerConfig measurement_defaults() {
    OptimizerConfig cfg;
    cfg.restarts = 20;
    cfg.maxIterations = 600;
    cfg.tolerance = 1e-9;
    return cfg;
  }
};

struct OptimizerReport {
  double bestValue = 0.0;
  int restarts = 0;
  long iterations = 0;   // summed over restarts
  bool converged = false;
  std::uint64_t seed = 0;
  // best value found by each restart, in execution order; the running
  // maximum of this sequence is the best-so-far trace
  std::vector<double> restartValues;
};

// rank-1 projective measurement given by the columns of a unitary
struct MeasurementBasis {
  Matrix unitary;
};

inline MeasurementBasis make_measurement_basis(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("make_measurement_basis: matrix must be square");
  const double dev = (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream oss;
    oss << "make_measurement_basis: columns not orthonormal (deviation " << dev << ")";
    throw StateError(oss.str());
  }
  return MeasurementBasis{u};
}

namespace detail {

// number of real parameters of a Hermitian dC x dC matrix
inline int hermitian_param_count(int dC) { return dC * dC; }

inline Matrix hermitian_from_params(const std::vector<double>& theta, int dC) {
  Matrix h = Matrix::Zero(dC, dC);
  int idx = 0;
  for (int k = 0; k < dC; ++k) h(k, k) = Complex(theta[idx++], 0.0);
  for (int k = 0; k < dC; ++k) {
    for (int l = k + 1; l < dC; ++l) {
      const Complex v(theta[idx], theta[idx + 1]);
      idx += 2;
      h(k, l) = v;
      h(l, k) = std::conj(v);
    }
  }
  return h;
}

// measured classical correlation for the basis exp(i H(theta)):
// S(A) - sum_i p_i S(A | outcome i)
class ClassicalCorrelationObjective {
 public:
  ClassicalCorrelationObjective(const DensityOperator& rho)
      : dA_(rho.dims.dimA), dC_(rho.dims.dimB) {
    blocks_.reserve(dA_ * dA_);
    for (int a = 0; a < dA_; ++a) {
      for (int a2 = 0; a2 < dA_; ++a2) {
        blocks_.push_back(rho.mat.block(a * dC_, a2 * dC_, dC_, dC_));
      }
    }
    entropyA_ = von_neumann_entropy(
        partial_trace_raw(rho.mat, dA_, dC_, Keep::First));
  }

  double entropy_a() const { return entropyA_; }

  double operator()(const std::vector<double>& theta) const {
    const Matrix u = unitary_from_hermitian(hermitian_from_params(theta, dC_));
    return evaluate_basis(u);
  }

  double evaluate_basis(const Matrix& u) const {
    double conditional = 0.0;
    Matrix m(dA_, dA_);
    for (int i = 0; i < dC_; ++i) {
      const Vector b = u.col(i);
      for (int a = 0; a < dA_; ++a) {
        for (int a2 = 0; a2 < dA_; ++a2) {
          m(a, a2) = (b.adjoint() * blocks_[a * dA_ + a2] * b)(0, 0);
        }
      }
      const double p = m.trace().real();
      if (p < 1e-12) continue;
      Matrix normalized = m / p;
      // round off the tiny anti-Hermitian part before taking eigenvalues
      normalized = (normalized + normalized.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Matrix> solver(normalized);
      double s = 0.0;
      for (long k = 0; k < solver.eigenvalues().size(); ++k) {
        const double lam = solver.eigenvalues()(k);
        if (lam < tol::kEigenvalueZero) continue;
        s -= xlog2x(std::min(lam, 1.0));
      }
      conditional += p * s;
    }
    return entropyA_ - conditional;
  }

 private:
  int dA_;
  int dC_;
  std::vector<Matrix> blocks_;
  double entropyA_ = 0.0;
};

}  // namespace detail

struct ClassicalCorrelationResult {
  double value = 0.0;
  MeasurementBasis basis;
  OptimizerReport report;
};

// Maximize S(A) - sum_i p_i S(A|i) over rank-1 projective measurements of
// the second subsystem. Finite-difference steepest ascent on the Hermitian
// generator of the basis, restarted from scratch cfg.restarts times; the
// first restart starts at the computational basis, the rest start from
// random generators. Deterministic for a fixed cfg.seed.
inline ClassicalCorrelationResult classical_correlation_oracle(const DensityOperator& rho,
                                                               const OptimizerConfig& cfg) {
  const int dC = rho.dims.dimB;
  if (dC > kMaxMeasuredDim) {
    std::ostringstream oss;
    oss << "classical_correlation_oracle: measured dimension " << dC << " exceeds "
        << kMaxMeasuredDim;
    throw CapabilityError(oss.str());
  }
  if (cfg.restarts < 1) throw DomainError("classical_correlation_oracle: restarts must be >= 1");

  const detail::ClassicalCorrelationObjective objective(rho);
  const int nParams = detail::hermitian_param_count(dC);
  // the convergence window of the stall rule
  constexpr int kWindow = 50;
  constexpr double kFdStep = 1e-5;

  OptimizerReport report;
  report.restarts = cfg.restarts;
  report.seed = cfg.seed;

  std::vector<double> bestTheta;
  bool haveBest = false;
  bool bestConverged = false;
  double bestValue = 0.0;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(seed_mix(cfg.seed, static_cast<std::uint64_t>(restart)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> theta(nParams, 0.0);
    if (restart > 0) {
      for (double& t : theta) t = gauss(rng);
    }

    double value = objective(theta);
    double step = 0.25;
    bool converged = false;
    std::vector<double> history{value};
    std::vector<double> grad(nParams, 0.0);
    std::vector<double> trial(nParams, 0.0);

    int iter = 0;
    for (; iter < cfg.maxIterations; ++iter) {
      for (int k = 0; k < nParams; ++k) {
        std::vector<double> probe = theta;
        probe[k] = theta[k] + kFdStep;
        const double up = objective(probe);
        probe[k] = theta[k] - kFdStep;
        const double down = objective(probe);
        grad[k] = (up - down) / (2.0 * kFdStep);
      }

      bool accepted = false;
      while (step > 1e-9) {
        for (int k = 0; k < nParams; ++k) trial[k] = theta[k] + step * grad[k];
        const double trialValue = objective(trial);
        if (trialValue > value) {
          theta = trial;
          value = trialValue;
          step = std::min(step * 1.6, 2.0);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      history.push_back(value);
      if (!accepted) {
        converged = true;  // no uphill direction at resolvable step size
        break;
      }
      const int back = static_cast<int>(history.size()) - 1 - kWindow;
      if (back >= 0 && value - history[back] < cfg.tolerance) {
        converged = true;
        break;
      }
    }
    report.iterations += iter;
    report.restartValues.push_back(value);

    if (!haveBest || value > bestValue) {
      haveBest = true;
      bestValue = value;
      bestTheta = theta;
      bestConverged = converged;
    }
  }

  report.bestValue = bestValue;
  report.converged = bestConverged;

  ClassicalCorrelationResult result;
  result.value = bestValue;
  result.basis = make_measurement_basis(
      unitary_from_hermitian(detail::hermitian_from_params(bestTheta, dC)));
  result.report = report;
  return result;
}

struct DiscordResult {
  double discord = 0.0;
  double classicalCorrelation = 0.0;
  double mutualInformation = 0.0;
  MeasurementBasis basis;
  OptimizerReport report;
};

// quantum discord with measurement on the second subsystem, via the
// classical-correlation maximization
inline DiscordResult discord_oracle(const DensityOperator& rho, const OptimizerConfig& cfg) {
  ClassicalCorrelationResult cc = classical_correlation_oracle(rho, cfg);
  DiscordResult out;
  out.mutualInformation = mutual_information(rho);
  out.classicalCorrelation = cc.value;
  out.discord = out.mutualInformation - cc.value;
  out.basis = cc.basis;
  out.report = cc.report;
  return out;
}

// Residual of the entropic trade-off linking the partner state's formation
// entanglement to the complement's classical correlation: for a maximally
// mixed marginal both must add up to log2(d).
inline double koashi_winter_residual(const WernerParams& p, const OptimizerConfig& cfg) {
  const DensityOperator rho = werner_complement(p);
  const ClassicalCorrelationResult cc = classical_correlation_oracle(rho, cfg);
  return std::abs(eof_werner(p) + cc.value - std::log2(static_cast<double>(p.d)));
}

inline double koashi_winter_residual(const IsotropicParams& p, const OptimizerConfig& cfg) {
  const DensityOperator rho = isotropic_complement(p);
  const ClassicalCorrelationResult cc = classical_correlation_oracle(rho, cfg);
  return std::abs(eof_isotropic(p).value + cc.value - std::log2(static_cast<double>(p.d)));
}

}  // namespace qcorr

#endif  // QCORR_MEASURES_HPP
