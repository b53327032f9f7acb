/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_STATES_HPP
#define QCORR_STATES_HPP

#include <qcorr/linalg.hpp>

#include <cmath>
#include <utility>
#include <vector>

namespace qcorr {

// ---------------------------------------------------------------------------
// parameter families
// ---------------------------------------------------------------------------

// d x d Werner state, parameterized by the flip expectation x in [-1, 1]
struct WernerParams {
  int d;
  double x;

  WernerParams(int d_, double x_) : d(d_), x(x_) {
    if (d < 2) throw DomainError("WernerParams: d must be at least 2");
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError("WernerParams: x must lie in [-1, 1]");
  }
};

// d x d isotropic state, parameterized by the singlet fraction f in [0, 1]
struct IsotropicParams {
  int d;
  double f;

  IsotropicParams(int d_, double f_) : d(d_), f(f_) {
    if (d < 2) throw DomainError("IsotropicParams: d must be at least 2");
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("IsotropicParams: f must lie in [0, 1]");
  }
};

// eigenvalues on the symmetric / antisymmetric subspaces
struct WernerSpectrum {
  double lambdaPlus;
  double lambdaMinus;
  int dimSym;
  int dimAntisym;
};

inline WernerSpectrum werner_spectrum(const WernerParams& p) {
  const double d = p.d;
  return WernerSpectrum{
      (1.0 + p.x) / (d * (d + 1.0)),
      (1.0 - p.x) / (d * (d - 1.0)),
      p.d * (p.d + 1) / 2,
      p.d * (p.d - 1) / 2,
  };
}

struct IsotropicSpectrum {
  double lambdaMax;   // on the maximally entangled ket, equals f
  double lambdaRest;  // on its orthocomplement, multiplicity d^2 - 1
};

inline IsotropicSpectrum isotropic_spectrum(const IsotropicParams& p) {
  const double dsq = static_cast<double>(p.d) * p.d;
  return IsotropicSpectrum{p.f, (1.0 - p.f) / (dsq - 1.0)};
}

// ---------------------------------------------------------------------------
// basic operators
// ---------------------------------------------------------------------------

// swap (flip) operator on d x d: sum_kl |kl><lk|
inline Matrix flip_operator(int d) {
  if (d < 2) throw DomainError("flip_operator: d must be at least 2");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      f(k * d + l, l * d + k) = Complex(1.0, 0.0);
    }
  }
  return f;
}

inline Vector max_entangled_ket(int d) {
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) v(k * d + k) = Complex(amp, 0.0);
  return v;
}

inline DensityOperator werner_state(const WernerParams& p) {
  const double d = p.d;
  const double denom = d * d * d - d;
  Matrix m = ((d - p.x) / denom) * Matrix::Identity(p.d * p.d, p.d * p.d) +
             ((d * p.x - 1.0) / denom) * flip_operator(p.d);
  return make_density(m, BipartiteDims{p.d, p.d});
}

inline DensityOperator isotropic_state(const IsotropicParams& p) {
  const double dsq = static_cast<double>(p.d) * p.d;
  const Vector phi = max_entangled_ket(p.d);
  Matrix m = ((1.0 - p.f) / (dsq - 1.0)) * Matrix::Identity(p.d * p.d, p.d * p.d) +
             ((dsq * p.f - 1.0) / (dsq - 1.0)) * (phi * phi.adjoint());
  return make_density(m, BipartiteDims{p.d, p.d});
}

// ---------------------------------------------------------------------------
// symmetric / antisymmetric eigenbasis of the Werner family
// ---------------------------------------------------------------------------

struct SymAsymBasis {
  // ordering: d diagonal vectors |kk>, then pairs k<l lexicographic
  std::vector<Vector> symmetric;
  // pairs k<l lexicographic
  std::vector<Vector> antisymmetric;
};

// rank of the pair (k, l), k < l, in lexicographic order
inline int pair_rank(int d, int k, int l) {
  return k * d - k * (k + 1) / 2 + (l - k - 1);
}

inline SymAsymBasis symmetric_antisymmetric_basis(int d) {
  if (d < 2) throw DomainError("symmetric_antisymmetric_basis: d must be at least 2");
  SymAsymBasis basis;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    Vector v = Vector::Zero(d * d);
    v(k * d + k) = Complex(1.0, 0.0);
    basis.symmetric.push_back(std::move(v));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      Vector s = Vector::Zero(d * d);
      s(k * d + l) = Complex(r2, 0.0);
      s(l * d + k) = Complex(r2, 0.0);
      basis.symmetric.push_back(std::move(s));
      Vector a = Vector::Zero(d * d);
      a(k * d + l) = Complex(r2, 0.0);
      a(l * d + k) = Complex(-r2, 0.0);
      basis.antisymmetric.push_back(std::move(a));
    }
  }
  return basis;
}

// Slot layout of the d^2 purifying system for the Werner family: the d
// diagonal symmetric labels first, then symmetric pairs k<l lexicographic,
// then antisymmetric pairs k<l lexicographic.
inline int werner_slot_diag(int /*d*/, int k) { return k; }
inline int werner_slot_sym(int d, int k, int l) { return d + pair_rank(d, k, l); }
inline int werner_slot_asym(int d, int k, int l) {
  return d + d * (d - 1) / 2 + pair_rank(d, k, l);
}

// Slot layout for the isotropic family: diagonal labels (k, k) first, then
// ordered pairs (k, l), k != l, lexicographic.
inline int iso_slot(int d, int k, int l) {
  if (k == l) return k;
  return d + k * (d - 1) + (l > k ? l - 1 : l);
}

// ---------------------------------------------------------------------------
// Werner complement
// ---------------------------------------------------------------------------

// mixing angles of the complement construction, stored as exact cos/sin
// pairs so the endpoints x = +-1 stay free of 0/0 forms
struct WernerComplementAngles {
  double cosAlpha, sinAlpha;
  double cosTheta, sinTheta;

  double alpha() const { return std::atan2(sinAlpha, cosAlpha); }
  double theta() const { return std::atan2(sinTheta, cosTheta); }
};

inline WernerComplementAngles werner_complement_angles(const WernerParams& p) {
  const WernerSpectrum s = werner_spectrum(p);
  const double d = p.d;
  WernerComplementAngles a{};
  a.cosAlpha = std::sqrt(d * s.lambdaPlus);
  a.sinAlpha = std::sqrt((d - p.x) / (d + 1.0));
  a.cosTheta = std::sqrt(s.lambdaPlus / (s.lambdaPlus + s.lambdaMinus));
  a.sinTheta = std::sqrt(s.lambdaMinus / (s.lambdaPlus + s.lambdaMinus));
  return a;
}

// the d orthonormal vectors whose uniform mixture is the complement state
inline std::vector<Vector> werner_complement_vectors(const WernerParams& p) {
  const int d = p.d;
  const int dimC = d * d;
  const WernerComplementAngles a = werner_complement_angles(p);
  const double offNorm = 1.0 / std::sqrt(static_cast<double>(d - 1));
  std::vector<Vector> out;
  out.reserve(d);
  for (int r = 0; r < d; ++r) {
    Vector v = Vector::Zero(d * dimC);
    v(r * dimC + werner_slot_diag(d, r)) = Complex(a.cosAlpha, 0.0);
    for (int k = 0; k < d; ++k) {
      if (k == r) continue;
      const double w = a.sinAlpha * offNorm;
      const int sym = k < r ? werner_slot_sym(d, k, r) : werner_slot_sym(d, r, k);
      const int asym = k < r ? werner_slot_asym(d, k, r) : werner_slot_asym(d, r, k);
      const double sign = k < r ? 1.0 : -1.0;
      v(k * dimC + sym) = Complex(w * a.cosTheta, 0.0);
      v(k * dimC + asym) = Complex(sign * w * a.sinTheta, 0.0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// complement of the Werner state across the purifying cut: a d x d^2 state
// with flat spectrum {1/d}
inline DensityOperator werner_complement(const WernerParams& p) {
  const int d = p.d;
  const std::vector<Vector> vecs = werner_complement_vectors(p);
  Matrix m = Matrix::Zero(d * d * d, d * d * d);
  for (const Vector& v : vecs) {
    m += v * v.adjoint();
  }
  m /= static_cast<double>(d);
  return make_density(m, BipartiteDims{d, d * d});
}

// purification of the Werner state against a d^2 dimensional third system
inline PureStateVector werner_purification(const WernerParams& p) {
  const int d = p.d;
  const int dimC = d * d;
  const WernerSpectrum s = werner_spectrum(p);
  const SymAsymBasis basis = symmetric_antisymmetric_basis(d);
  const double wPlus = std::sqrt(s.lambdaPlus);
  const double wMinus = std::sqrt(s.lambdaMinus);

  Vector amps = Vector::Zero(d * d * dimC);
  auto add = [&](const Vector& ab, int slot, double weight) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const Complex c = ab(a * d + b);
        if (c != Complex(0.0, 0.0)) {
          amps(a * d * dimC + b * dimC + slot) += weight * c;
        }
      }
    }
  };
  for (size_t i = 0; i < basis.symmetric.size(); ++i) {
    add(basis.symmetric[i], static_cast<int>(i), wPlus);
  }
  const int asymBase = d * (d + 1) / 2;
  for (size_t i = 0; i < basis.antisymmetric.size(); ++i) {
    add(basis.antisymmetric[i], asymBase + static_cast<int>(i), wMinus);
  }
  return make_pure_state(amps, {d, d, dimC});
}

// closed-form 8x8 complement matrix for d = 2, assembled from the two
// subspace eigenvalues; used as a verification fixture
inline Matrix werner_complement_closed_form_d2(double x) {
  const WernerSpectrum s = werner_spectrum(WernerParams(2, x));
  const double lp = s.lambdaPlus;
  const double lm = s.lambdaMinus;
  const double cross = std::sqrt(lp * lm);
  const double r2 = std::sqrt(2.0);

  Matrix m = Matrix::Zero(8, 8);
  auto set = [&](int i, int j, double v) {
    m(i, j) = Complex(v, 0.0);
    m(j, i) = Complex(v, 0.0);
  };
  set(0, 0, lp);
  set(0, 6, lp / r2);
  set(0, 7, -cross / r2);
  set(2, 2, lp / 2.0);
  set(2, 3, cross / 2.0);
  set(2, 5, lp / r2);
  set(3, 3, lm / 2.0);
  set(3, 5, cross / r2);
  set(5, 5, lp);
  set(6, 6, lp / 2.0);
  set(6, 7, -cross / 2.0);
  set(7, 7, lm / 2.0);
  return m;
}

// ---------------------------------------------------------------------------
// isotropic complement
// ---------------------------------------------------------------------------

struct IsotropicComplementAngles {
  double cosBeta, sinBeta;
  double cosVartheta, sinVartheta;
  double cosBetaTilde, sinBetaTilde;
  double cosVarthetaTilde, sinVarthetaTilde;
  double p;  // weight of the distinguished vector in the explicit mixture
};

inline IsotropicComplementAngles isotropic_complement_angles(const IsotropicParams& p) {
  const IsotropicSpectrum s = isotropic_spectrum(p);
  const double d = p.d;
  const double lf = s.lambdaMax;
  const double lr = s.lambdaRest;
  IsotropicComplementAngles a{};
  a.cosBeta = std::sqrt((2.0 * lf + d * (d - 1.0) * lr) / (2.0 * lf + 3.0 * d * (d - 1.0) * lr));
  a.sinBeta = std::sqrt(2.0 * d * (d - 1.0) * lr / (2.0 * lf + 3.0 * d * (d - 1.0) * lr));
  a.cosVartheta = std::sqrt(2.0 * lf / (2.0 * lf + d * (d - 1.0) * lr));
  a.sinVartheta = std::sqrt(d * (d - 1.0) * lr / (2.0 * lf + d * (d - 1.0) * lr));
  a.cosBetaTilde = std::sqrt((2.0 * lf + d * lr) / (2.0 * lf + d * (2.0 * d - 1.0) * lr));
  a.sinBetaTilde = std::sqrt(2.0 * d * (d - 1.0) * lr / (2.0 * lf + d * (2.0 * d - 1.0) * lr));
  a.cosVarthetaTilde = std::sqrt(2.0 * lf / (2.0 * lf + d * lr));
  a.sinVarthetaTilde = std::sqrt(d * lr / (2.0 * lf + d * lr));
  a.p = lf / d + 1.5 * (d - 1.0) * lr;
  return a;
}

// orthonormal eigenbasis of the isotropic state: the maximally entangled ket
// first, a Gram-Schmidt pass over {|kk> - |00>} next, then the off-diagonal
// computational kets
inline std::vector<Vector> isotropic_eigenbasis(int d) {
  std::vector<Vector> basis;
  basis.push_back(max_entangled_ket(d));
  for (int k = 1; k < d; ++k) {
    Vector v = Vector::Zero(d * d);
    v(k * d + k) = Complex(1.0, 0.0);
    v(0) = Complex(-1.0, 0.0);
    for (const Vector& prev : basis) {
      v -= prev.dot(v) * prev;
    }
    v /= v.norm();
    basis.push_back(std::move(v));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k == l) continue;
      Vector v = Vector::Zero(d * d);
      v(k * d + l) = Complex(1.0, 0.0);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

// purification of the isotropic state built on the orthonormal eigenbasis
inline PureStateVector isotropic_purification(const IsotropicParams& p) {
  const int d = p.d;
  const int dimC = d * d;
  const IsotropicSpectrum s = isotropic_spectrum(p);
  const std::vector<Vector> basis = isotropic_eigenbasis(d);

  Vector amps = Vector::Zero(d * d * dimC);
  // slot enumeration matches the eigenbasis ordering: diagonal labels first,
  // then off-diagonal pairs in lexicographic order
  std::vector<int> slots;
  for (int k = 0; k < d; ++k) slots.push_back(k);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k != l) slots.push_back(iso_slot(d, k, l));
    }
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    const double weight = std::sqrt(i == 0 ? s.lambdaMax : s.lambdaRest);
    if (weight == 0.0) continue;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const Complex c = basis[i](a * d + b);
        if (c != Complex(0.0, 0.0)) {
          amps(a * d * dimC + b * dimC + slots[i]) += weight * c;
        }
      }
    }
  }
  return make_pure_state(amps, {d, d, dimC});
}

// complement of the isotropic state across the purifying cut, traced down
// from the orthonormal-basis purification
inline DensityOperator isotropic_complement(const IsotropicParams& p) {
  const PureStateVector psi = isotropic_purification(p);
  Matrix m = reduce_pure_state(psi, {0, 2});
  return make_density(m, BipartiteDims{p.d, p.d * p.d});
}

// the d explicit complement vectors of the angle construction
inline std::vector<Vector> isotropic_complement_explicit_vectors(const IsotropicParams& p) {
  const int d = p.d;
  const int dimC = d * d;
  const IsotropicComplementAngles a = isotropic_complement_angles(p);
  const double offNorm = 1.0 / std::sqrt(static_cast<double>(d - 1));
  std::vector<Vector> out;
  out.reserve(d);

  Vector v0 = Vector::Zero(d * dimC);
  v0(0 * dimC + iso_slot(d, 0, 0)) = Complex(a.cosBeta * a.cosVartheta, 0.0);
  for (int k = 1; k < d; ++k) {
    v0(0 * dimC + iso_slot(d, k, k)) = Complex(-a.cosBeta * a.sinVartheta * offNorm, 0.0);
    v0(k * dimC + iso_slot(d, k, 0)) = Complex(a.sinBeta * offNorm, 0.0);
  }
  out.push_back(std::move(v0));

  for (int r = 1; r < d; ++r) {
    Vector v = Vector::Zero(d * dimC);
    v(r * dimC + iso_slot(d, 0, 0)) = Complex(a.cosBetaTilde * a.cosVarthetaTilde, 0.0);
    v(r * dimC + iso_slot(d, r, r)) = Complex(a.cosBetaTilde * a.sinVarthetaTilde, 0.0);
    for (int k = 0; k < d; ++k) {
      if (k == r) continue;
      v(k * dimC + iso_slot(d, k, r)) = Complex(a.sinBetaTilde * offNorm, 0.0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// complement candidate assembled from the explicit vectors and the weight p.
// For d = 2 this agrees with the traced-down complement up to a unitary on
// the purifying system; for d >= 3 the two constructions genuinely differ
// (see spectral_basis_consistency).
inline DensityOperator isotropic_complement_explicit(const IsotropicParams& p) {
  const int d = p.d;
  const IsotropicComplementAngles a = isotropic_complement_angles(p);
  const std::vector<Vector> vecs = isotropic_complement_explicit_vectors(p);
  Matrix m = a.p * (vecs[0] * vecs[0].adjoint());
  const double wRest = (1.0 - a.p) / (d - 1.0);
  for (int r = 1; r < d; ++r) {
    m += wRest * (vecs[r] * vecs[r].adjoint());
  }
  return make_density(m, BipartiteDims{d, d * d});
}

// ---------------------------------------------------------------------------
// consistency report for the non-orthogonal spectral labeling
// ---------------------------------------------------------------------------

// The compact spectral labeling {|phi>, (|kk> - |00>)/sqrt(2), |kl>} is not
// orthonormal for d >= 3. This report quantifies how far it is from a basis
// and how far the purification built literally on it lands from the state it
// should trace back to.
struct SpectralBasisReport {
  double gramDeviation;      // max |<v_i|v_j> - delta_ij|
  double traceBackDeviation; // max entrywise |Tr_C(purification) - state|
};

inline SpectralBasisReport spectral_basis_consistency(const IsotropicParams& p) {
  const int d = p.d;
  const int dimC = d * d;
  const IsotropicSpectrum s = isotropic_spectrum(p);
  const double r2 = 1.0 / std::sqrt(2.0);

  // the literal labeling
  std::vector<Vector> lit;
  lit.push_back(max_entangled_ket(d));
  for (int k = 1; k < d; ++k) {
    Vector v = Vector::Zero(d * d);
    v(k * d + k) = Complex(r2, 0.0);
    v(0) = Complex(-r2, 0.0);
    lit.push_back(std::move(v));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k == l) continue;
      Vector v = Vector::Zero(d * d);
      v(k * d + l) = Complex(1.0, 0.0);
      lit.push_back(std::move(v));
    }
  }

  double gram = 0.0;
  for (size_t i = 0; i < lit.size(); ++i) {
    for (size_t j = 0; j < lit.size(); ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      gram = std::max(gram, std::abs(lit[i].dot(lit[j]) - Complex(delta, 0.0)));
    }
  }

  // purification assembled literally on the labeling
  Vector amps = Vector::Zero(d * d * dimC);
  std::vector<int> slots;
  for (int k = 0; k < d; ++k) slots.push_back(k);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k != l) slots.push_back(iso_slot(d, k, l));
    }
  }
  for (size_t i = 0; i < lit.size(); ++i) {
    const double weight = std::sqrt(i == 0 ? s.lambdaMax : s.lambdaRest);
    if (weight == 0.0) continue;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const Complex c = lit[i](a * d + b);
        if (c != Complex(0.0, 0.0)) {
          amps(a * d * dimC + b * dimC + slots[i]) += weight * c;
        }
      }
    }
  }
  PureStateVector psi{amps, {d, d, dimC}};  // unit norm, but built unchecked
  Matrix tracedBack = reduce_pure_state(psi, {0, 1});
  const Matrix target = isotropic_state(p).mat;
  const double back = (tracedBack - target).cwiseAbs().maxCoeff();

  return SpectralBasisReport{gram, back};
}

}  // namespace qcorr

#endif  // QCORR_STATES_HPP
