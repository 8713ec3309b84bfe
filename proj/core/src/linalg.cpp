#include "rpcirc/linalg.hpp"

#include <cmath>

namespace rpcirc {

bool is_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermiticity_defect: matrix not square");
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / scale;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::spectral_norm() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eig_hermitian: matrix not square");
  if (!is_finite(m)) throw NonFinite("eig_hermitian: NaN or Inf entry");
  const double defect = (m - m.adjoint()).norm();
  if (defect > 1e-10 * std::max(1.0, m.norm()))
    throw NotHermitian("eig_hermitian: ‖M - M*‖ = " + std::to_string(defect));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver failed");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

ScalarMap exp_scaled(double t) {
  return ScalarMap{"exp_scaled(" + std::to_string(t) + ")",
                   [t](double lam) { return Complex(std::exp(-t * lam), 0.0); }, {}};
}

ScalarMap exp_it(double t) {
  return ScalarMap{"exp_it(" + std::to_string(t) + ")",
                   [t](double lam) { return std::exp(Complex(0.0, t * lam)); }, {}};
}

ScalarMap exp_iz(Complex z) {
  return ScalarMap{"exp_iz", [z](double lam) { return std::exp(Complex(0.0, 1.0) * z * lam); }, {}};
}

ScalarMap power_it(double t) {
  return ScalarMap{"power_it(" + std::to_string(t) + ")",
                   [t](double lam) { return std::exp(Complex(0.0, t * std::log(lam))); },
                   [](double lam) { return lam > 0.0; }};
}

ScalarMap power(double s) {
  const bool nonneg_int = s >= 0.0 && s == std::floor(s);
  return ScalarMap{"power(" + std::to_string(s) + ")",
                   [s](double lam) { return Complex(std::pow(lam, s), 0.0); },
                   nonneg_int ? std::function<bool(double)>{}
                              : [](double lam) { return lam > 0.0; }};
}

ScalarMap log_map() {
  return ScalarMap{"log", [](double lam) { return Complex(std::log(lam), 0.0); },
                   [](double lam) { return lam > 0.0; }};
}

ComplexMatrix apply_function(const SpectralDecomposition& s, const ScalarMap& f) {
  const Index n = s.eigenvalues.size();
  ComplexVector mapped(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = s.eigenvalues[i];
    if (f.in_domain && !f.in_domain(lam))
      throw DomainError("apply_function: " + f.name + " undefined at eigenvalue " +
                        std::to_string(lam));
    mapped[i] = f.value(lam);
  }
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

PsdCertificate psd_certificate(const ComplexMatrix& g, double tol) {
  const SpectralDecomposition s = eig_hermitian(g);
  PsdCertificate cert;
  cert.min_eig = s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.minCoeff();
  cert.scale = std::max(1.0, s.spectral_norm());
  cert.is_psd = cert.min_eig >= -tol * cert.scale;
  return cert;
}

ComplexVector QuotientModel::embed(const ComplexVector& coords) const {
  if (coords.size() != ambient_dim) throw DimensionMismatch("QuotientModel::embed");
  return factor * coords;
}

ComplexMatrix QuotientModel::null_projector() const {
  return null_basis * null_basis.adjoint();
}

QuotientModel gram_quotient(const ComplexMatrix& g, double tol) {
  const SpectralDecomposition s = eig_hermitian(g);
  const double scale = std::max(1.0, s.spectral_norm());
  const double cutoff = tol * scale;
  if (s.eigenvalues.size() > 0 && s.eigenvalues.minCoeff() < -cutoff)
    throw NotPSD("gram_quotient: min eigenvalue " + std::to_string(s.eigenvalues.minCoeff()));

  const Index n = s.eigenvalues.size();
  Index rank = 0;
  for (Index i = 0; i < n; ++i)
    if (s.eigenvalues[i] > cutoff) ++rank;

  QuotientModel q;
  q.ambient_dim = n;
  q.rank = rank;
  q.factor.resize(rank, n);
  q.null_basis.resize(n, n - rank);
  Index r = 0, k = 0;
  // ascending eigenvalues: null directions first
  for (Index i = 0; i < n; ++i) {
    if (s.eigenvalues[i] > cutoff)
      q.factor.row(r++) = std::sqrt(s.eigenvalues[i]) * s.eigenvectors.col(i).adjoint();
    else
      q.null_basis.col(k++) = s.eigenvectors.col(i);
  }
  return q;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unitarity_defect: matrix not square");
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

AntiUnitaryMap::AntiUnitaryMap(ComplexMatrix u, double tol) : u_(std::move(u)) {
  if (!is_finite(u_)) throw NonFinite("AntiUnitaryMap: NaN or Inf entry");
  const double defect = unitarity_defect(u_);
  if (defect > tol * std::max(1.0, u_.norm()))
    throw NotUnitary("AntiUnitaryMap: ‖u*u - 1‖ = " + std::to_string(defect));
}

bool AntiUnitaryMap::is_involutive(double tol) const {
  return (u_ * u_.conjugate() - ComplexMatrix::Identity(u_.rows(), u_.cols())).norm() <= tol;
}

ComplexMatrix antiunitary_conjugate(const AntiUnitaryMap& j, const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() != j.dim())
    throw DimensionMismatch("antiunitary_conjugate: size mismatch");
  return j.u() * m.conjugate() * j.u().conjugate();
}

}  // namespace rpcirc
