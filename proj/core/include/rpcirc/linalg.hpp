#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "rpcirc/errors.hpp"

namespace rpcirc {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default relative tolerance for positivity certificates; the same knob is
// reused for rank cutoffs in Gram quotients.
inline constexpr double kDefaultPsdTol = 1e-9;

bool is_finite(const ComplexMatrix& m);

// ‖M - M*‖_F / max(1, ‖M‖_F)
double hermiticity_defect(const ComplexMatrix& m);

ComplexMatrix hermitize(const ComplexMatrix& m);

// Kronecker product, column-major vec convention: vec(AXB) = (B^T ⊗ A) vec(X).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigensystem of a Hermitian matrix, eigenvalues ascending.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // unitary, columns paired with eigenvalues

  ComplexMatrix reconstruct() const;
  double spectral_norm() const;  // max |λ|
};

// Throws NotHermitian when ‖M - M*‖_F > 1e-10 ‖M‖_F, NonFinite on NaN/Inf.
SpectralDecomposition eig_hermitian(const ComplexMatrix& m);

/// A named scalar map pushed through the spectral calculus.
struct ScalarMap {
  std::string name;
  std::function<Complex(double)> value;
  std::function<bool(double)> in_domain;  // empty = defined everywhere
};

ScalarMap exp_scaled(double t);  // λ ↦ e^{-tλ}
ScalarMap exp_it(double t);      // λ ↦ e^{itλ}
ScalarMap exp_iz(Complex z);     // λ ↦ e^{izλ}
ScalarMap power_it(double t);    // λ ↦ λ^{it},  λ > 0
ScalarMap power(double s);       // λ ↦ λ^s,     λ > 0 unless s is a nonnegative integer
ScalarMap log_map();             // λ ↦ log λ,   λ > 0

// U diag(f(λ)) U*.  Throws DomainError if f is undefined on an eigenvalue.
ComplexMatrix apply_function(const SpectralDecomposition& s, const ScalarMap& f);

struct PsdCertificate {
  double min_eig = 0.0;
  double scale = 1.0;  // max(1, ‖G‖₂)
  bool is_psd = false;
};

// is_psd ⇔ min_eig ≥ -tol·max(1, ‖G‖₂).  Throws NotHermitian.
PsdCertificate psd_certificate(const ComplexMatrix& g, double tol = kDefaultPsdTol);

/// Rank factorization G = B*B of a PSD Gram matrix together with its null
/// space; the quotient map sends a coordinate vector c to B c.
struct QuotientModel {
  Index ambient_dim = 0;
  Index rank = 0;
  ComplexMatrix factor;      // B, rank × ambient
  ComplexMatrix null_basis;  // ambient × (ambient - rank), orthonormal

  ComplexVector embed(const ComplexVector& coords) const;  // q(c) = B c
  ComplexMatrix null_projector() const;
};

// Eigenvalues within ±tol·max(1, ‖G‖₂) are treated as zero.  Throws NotPSD
// when the certificate fails.
QuotientModel gram_quotient(const ComplexMatrix& g, double tol = kDefaultPsdTol);

/// Antilinear map v ↦ u · conj(v) with no constraint on u.
struct AntilinearMap {
  ComplexMatrix u;

  ComplexVector apply(const ComplexVector& v) const { return u * v.conjugate(); }
  Index dim() const { return u.rows(); }
};

/// Antiunitary map v ↦ u · conj(v); u is validated to be unitary.
class AntiUnitaryMap {
 public:
  explicit AntiUnitaryMap(ComplexMatrix u, double tol = 1e-10);

  const ComplexMatrix& u() const { return u_; }
  Index dim() const { return u_.rows(); }
  ComplexVector apply(const ComplexVector& v) const { return u_ * v.conjugate(); }
  AntilinearMap antilinear() const { return AntilinearMap{u_}; }

  // J² = 1, i.e. u · conj(u) = 1
  bool is_involutive(double tol = 1e-10) const;

 private:
  ComplexMatrix u_;
};

// Matrix of v ↦ J(M(J(v))) = u · conj(M) · conj(u) · v.
ComplexMatrix antiunitary_conjugate(const AntiUnitaryMap& j, const ComplexMatrix& m);

double unitarity_defect(const ComplexMatrix& u);

}  // namespace rpcirc
