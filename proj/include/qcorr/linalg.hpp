/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_LINALG_HPP
#define QCORR_LINALG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Pinned numerical tolerances. These are part of the public contract and are
// referenced by the test suite; do not tune them per call site.
namespace tol {
// hermiticity required of freshly constructed density operators
inline constexpr double kHermitianConstruct = 1e-12;
// hermiticity accepted by the eigensolver wrapper before symmetrizing
inline constexpr double kHermitianEigh = 1e-10;
// most negative eigenvalue a density operator may carry
inline constexpr double kEigenvalueFloor = 1e-10;
// eigenvalues below this are treated as exactly zero in entropy sums
inline constexpr double kEigenvalueZero = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kUnitNorm = 1e-12;
// probabilities may stray this far outside [0, 1] before it is an error
inline constexpr double kProbabilityClamp = 1e-12;
// relative singular value floor below which a polar factor is ambiguous
inline constexpr double kPolarRank = 1e-12;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// a matrix that was supposed to be a physical state is not one
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// request exceeds a documented dimension guard
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePolarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BipartiteDims {
  int dimA = 0;
  int dimB = 0;

  int total() const { return dimA * dimB; }
};

inline double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tolerance) {
  return m.rows() == m.cols() && hermiticity_deviation(m) <= tolerance;
}

struct EighResult {
  RealVector values;  // ascending
  Matrix vectors;     // columns match values
};

// Hermitian eigendecomposition. The input must be Hermitian within
// tol::kHermitianEigh; it is symmetrized as (m + m^dag)/2 before solving so
// that round-off on constructed states cannot leak into the spectrum.
inline EighResult eigh(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eigh: matrix must be square");
  }
  const double dev = hermiticity_deviation(m);
  if (dev > tol::kHermitianEigh) {
    std::ostringstream oss;
    oss << "eigh: matrix is not Hermitian (deviation " << dev << ")";
    throw DomainError(oss.str());
  }
  Matrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw StateError("eigh: eigensolver failed to converge");
  }
  return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

struct DensityOperator {
  Matrix mat;
  BipartiteDims dims;
};

// checked constructor for density operators: Hermitian, unit trace, positive
// semidefinite up to the pinned tolerances
inline DensityOperator make_density(const Matrix& m, BipartiteDims dims) {
  if (dims.dimA < 1 || dims.dimB < 1) {
    throw DimensionError("make_density: subsystem dimensions must be positive");
  }
  if (m.rows() != m.cols() || m.rows() != dims.total()) {
    std::ostringstream oss;
    oss << "make_density: matrix is " << m.rows() << "x" << m.cols()
        << " but dims give " << dims.total();
    throw DimensionError(oss.str());
  }
  const double herm = hermiticity_deviation(m);
  if (herm > tol::kHermitianConstruct) {
    std::ostringstream oss;
    oss << "make_density: not Hermitian (deviation " << herm << ")";
    throw StateError(oss.str());
  }
  const double traceErr = std::abs(m.trace() - Complex(1.0, 0.0));
  if (traceErr > tol::kTrace) {
    std::ostringstream oss;
    oss << "make_density: trace deviates from 1 by " << traceErr;
    throw StateError(oss.str());
  }
  EighResult eig = eigh(m);
  if (eig.values.minCoeff() < -tol::kEigenvalueFloor) {
    std::ostringstream oss;
    oss << "make_density: negative eigenvalue " << eig.values.minCoeff();
    throw StateError(oss.str());
  }
  return DensityOperator{m, dims};
}

struct PureStateVector {
  Vector amps;
  std::vector<int> dims;
};

inline PureStateVector make_pure_state(const Vector& amps, std::vector<int> dims) {
  long expected = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("make_pure_state: dims must be positive");
    expected *= d;
  }
  if (amps.size() != expected) {
    throw DimensionError("make_pure_state: amplitude count does not match dims");
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > tol::kUnitNorm) {
    std::ostringstream oss;
    oss << "make_pure_state: norm deviates from 1 by " << std::abs(norm - 1.0);
    throw StateError(oss.str());
  }
  return PureStateVector{amps, std::move(dims)};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

enum class Keep { First, Second };

// partial trace over one tensor factor of a (not necessarily Hermitian)
// matrix on a bipartite space
inline Matrix partial_trace_raw(const Matrix& m, int dimA, int dimB, Keep keep) {
  if (dimA < 1 || dimB < 1 || m.rows() != m.cols() ||
      m.rows() != static_cast<long>(dimA) * dimB) {
    throw DimensionError("partial_trace: matrix does not match dims");
  }
  if (keep == Keep::First) {
    Matrix out = Matrix::Zero(dimA, dimA);
    for (int a = 0; a < dimA; ++a) {
      for (int a2 = 0; a2 < dimA; ++a2) {
        Complex sum(0.0, 0.0);
        for (int b = 0; b < dimB; ++b) {
          sum += m(a * dimB + b, a2 * dimB + b);
        }
        out(a, a2) = sum;
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dimB, dimB);
  for (int b = 0; b < dimB; ++b) {
    for (int b2 = 0; b2 < dimB; ++b2) {
      Complex sum(0.0, 0.0);
      for (int a = 0; a < dimA; ++a) {
        sum += m(a * dimB + b, a * dimB + b2);
      }
      out(b, b2) = sum;
    }
  }
  return out;
}

inline DensityOperator partial_trace(const DensityOperator& op, Keep keep) {
  Matrix reduced = partial_trace_raw(op.mat, op.dims.dimA, op.dims.dimB, keep);
  const int kept = keep == Keep::First ? op.dims.dimA : op.dims.dimB;
  return make_density(reduced, BipartiteDims{kept, 1});
}

// reduced density matrix of a multipartite pure state on the subsystems
// listed in `keep` (ascending order of subsystem index is enforced)
inline Matrix reduce_pure_state(const PureStateVector& psi, const std::vector<int>& keep) {
  const int n = static_cast<int>(psi.dims.size());
  std::vector<char> keepMask(n, 0);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("reduce_pure_state: subsystem index out of range");
    if (keepMask[k]) throw DimensionError("reduce_pure_state: duplicate subsystem index");
    keepMask[k] = 1;
  }
  if (keep.empty()) throw DimensionError("reduce_pure_state: nothing kept");
  for (size_t i = 1; i < keep.size(); ++i) {
    if (keep[i] <= keep[i - 1]) {
      throw DimensionError("reduce_pure_state: keep list must be ascending");
    }
  }

  std::vector<long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * psi.dims[i + 1];

  long keptDim = 1, tracedDim = 1;
  std::vector<int> traced;
  for (int i = 0; i < n; ++i) {
    if (keepMask[i]) {
      keptDim *= psi.dims[i];
    } else {
      traced.push_back(i);
      tracedDim *= psi.dims[i];
    }
  }

  // flat offsets of every kept / traced multi-index combination
  auto offsets = [&](const std::vector<int>& subs, long count) {
    std::vector<long> off(count, 0);
    for (long lin = 0; lin < count; ++lin) {
      long rest = lin;
      for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
        const int d = psi.dims[subs[s]];
        off[lin] += (rest % d) * stride[subs[s]];
        rest /= d;
      }
    }
    return off;
  };
  const std::vector<long> keptOff = offsets(keep, keptDim);
  const std::vector<long> tracedOff = offsets(traced, tracedDim);

  Matrix rho = Matrix::Zero(keptDim, keptDim);
  for (long a = 0; a < keptDim; ++a) {
    for (long b = 0; b < keptDim; ++b) {
      Complex sum(0.0, 0.0);
      for (long t = 0; t < tracedDim; ++t) {
        sum += psi.amps(keptOff[a] + tracedOff[t]) * std::conj(psi.amps(keptOff[b] + tracedOff[t]));
      }
      rho(a, b) = sum;
    }
  }
  return rho;
}

// exp(i h) for Hermitian h, via the spectral decomposition
inline Matrix unitary_from_hermitian(const Matrix& h) {
  EighResult eig = eigh(h);
  Vector phases(eig.values.size());
  for (long i = 0; i < eig.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, eig.values(i)));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
// R diagonal phases folded back into Q
inline Matrix haar_random_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw DimensionError("haar_random_unitary: n must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

// unitary factor of the polar decomposition; maximizes Re tr(W^dag m) over
// unitary W. Rank-deficient input has no unique factor and is an error.
inline Matrix polar_unitary(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("polar_unitary: matrix must be square");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  // a rank-deficient input still has a valid (non-unique) maximizer; only a
  // vanishing input gives no direction at all
  if (smax <= tol::kPolarRank) {
    std::ostringstream oss;
    oss << "polar_unitary: largest singular value " << smax << " is negligible";
    throw DegeneratePolarError(oss.str());
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

// p * log2(p) with the 0 log 0 = 0 convention; p may stray outside [0, 1]
// by at most tol::kProbabilityClamp
inline double xlog2x(double p) {
  if (p < -tol::kProbabilityClamp || p > 1.0 + tol::kProbabilityClamp) {
    std::ostringstream oss;
    oss << "xlog2x: " << p << " is not a probability";
    throw DomainError(oss.str());
  }
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  if (p == 0.0) return 0.0;
  return p * std::log2(p);
}

inline double binary_entropy(double p) {
  return -xlog2x(p) - xlog2x(1.0 - p);
}

// deterministic per-item seed derivation (splitmix64 finalizer)
inline std::uint64_t seed_mix(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qcorr

#endif  // QCORR_LINALG_HPP
