#include "rpcirc/standard_subspace.hpp"

#include <cmath>
#include <random>

namespace rpcirc {

RealVector realify(const ComplexVector& v) {
  RealVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

ComplexVector complexify(const RealVector& v) {
  const Index n = v.size() / 2;
  ComplexVector out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

RealMatrix realify_linear(const ComplexMatrix& m) {
  const Index r = m.rows(), c = m.cols();
  RealMatrix out(2 * r, 2 * c);
  out.block(0, 0, r, c) = m.real();
  out.block(0, c, r, c) = -m.imag();
  out.block(r, 0, r, c) = m.imag();
  out.block(r, c, r, c) = m.real();
  return out;
}

RealMatrix realify_antilinear(const ComplexMatrix& u) {
  const Index r = u.rows(), c = u.cols();
  RealMatrix out(2 * r, 2 * c);
  out.block(0, 0, r, c) = u.real();
  out.block(0, c, r, c) = u.imag();
  out.block(r, 0, r, c) = u.imag();
  out.block(r, c, r, c) = -u.real();
  return out;
}

namespace {

RealMatrix orthonormal_image(const RealMatrix& m, double rank_tol = 1e-10) {
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol * std::max(1.0, smax)) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

double subspace_angle(const RealMatrix& a, const RealMatrix& b) {
  const RealMatrix qa = orthonormal_image(a);
  const RealMatrix qb = orthonormal_image(b);
  if (qa.cols() != qb.cols()) return M_PI / 2.0;
  if (qa.cols() == 0) return 0.0;
  // sine-based formulation, accurate for small angles
  const RealMatrix residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<RealMatrix> svd(residual);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  return std::asin(std::clamp(smax, 0.0, 1.0));
}

StandardSubspace::StandardSubspace(ComplexMatrix basis, double tol) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols())
    throw NotStandard("StandardSubspace: need n real basis vectors in C^n");
  if (!is_finite(basis_)) throw NonFinite("StandardSubspace: NaN or Inf entry");
  // V ∩ iV = {0} and V + iV = ℂⁿ together say the basis is a complex basis.
  Eigen::JacobiSVD<ComplexMatrix> svd(basis_);
  const double smax = svd.singularValues()[0];
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > tol * std::max(1.0, smax)))
    throw NotStandard("StandardSubspace: basis is degenerate (smin = " + std::to_string(smin) +
                      ")");
}

RealMatrix StandardSubspace::realified_basis() const {
  RealMatrix out(2 * basis_.rows(), basis_.cols());
  for (Index k = 0; k < basis_.cols(); ++k) out.col(k) = realify(basis_.col(k));
  return out;
}

ModularPair::ModularPair(ComplexMatrix delta, AntiUnitaryMap j, double tol)
    : delta_(std::move(delta)), j_(std::move(j)), delta_spec_(eig_hermitian(delta_)) {
  if (delta_.rows() != j_.dim()) throw DimensionMismatch("ModularPair: size mismatch");
  const double scale = std::max(1.0, delta_spec_.spectral_norm());
  if (delta_spec_.eigenvalues.minCoeff() <= 1e-12 * scale)
    throw NotPSD("ModularPair: Delta is not positive definite");
  if (!j_.is_involutive(tol * scale))
    throw NotStandard("ModularPair: J is not an involution");
  const ComplexMatrix delta_inv = apply_function(delta_spec_, power(-1.0));
  const double defect = (antiunitary_conjugate(j_, delta_) - delta_inv).norm();
  if (defect > tol * std::max(1.0, delta_inv.norm()))
    throw NotStandard("ModularPair: J Delta J != Delta^{-1}, defect " + std::to_string(defect));
}

ComplexMatrix ModularPair::hamiltonian() const {
  return apply_function(delta_spec_, log_map());
}

StandardSubspace pair_to_subspace(const ModularPair& pair) {
  const ComplexMatrix sqrt_delta = apply_function(pair.delta_spec(), power(0.5));
  const ComplexMatrix u_s = pair.j().u() * sqrt_delta.conjugate();

  const RealMatrix s_real = realify_antilinear(u_s);
  const Index two_n = s_real.rows();
  const Index n = two_n / 2;
  const RealMatrix projector = 0.5 * (RealMatrix::Identity(two_n, two_n) + s_real);

  Eigen::JacobiSVD<RealMatrix> svd(projector, Eigen::ComputeThinU);
  const double smax = svd.singularValues()[0];
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-8 * std::max(1.0, smax)) ++rank;
  if (rank != n)
    throw DegenerateFixSpace("pair_to_subspace: Fix(S) has real dimension " +
                             std::to_string(rank) + ", expected " + std::to_string(n));

  ComplexMatrix basis(n, n);
  for (Index k = 0; k < n; ++k) basis.col(k) = complexify(svd.matrixU().col(k));
  return StandardSubspace(std::move(basis));
}

TomitaData subspace_to_tomita(const StandardSubspace& v) {
  const ComplexMatrix& b = v.basis();
  const ComplexMatrix u_s = b * b.conjugate().inverse();
  const ComplexMatrix delta = hermitize(u_s.transpose() * u_s.conjugate());  // S*S
  const SpectralDecomposition spec = eig_hermitian(delta);
  const ComplexMatrix inv_sqrt = apply_function(spec, power(-0.5));
  // S = J Δ^{1/2}  ⇒  u_J = u_S conj(Δ^{-1/2})
  AntiUnitaryMap j(u_s * inv_sqrt.conjugate());
  return TomitaData{AntilinearMap{u_s}, ModularPair(delta, std::move(j))};
}

double LemmaIdentitiesReport::max_identity_residual() const {
  double worst = s_involution;
  worst = std::max(worst, sstar_vs_jsj);
  worst = std::max(worst, fix_sstar_angle);
  worst = std::max(worst, orthogonal_angle);
  worst = std::max(worst, direct_sum_defect);
  worst = std::max(worst, symplectic_angle);
  worst = std::max(worst, graph_norm_defect);
  return worst;
}

LemmaIdentitiesReport check_lemma_identities(const StandardSubspace& v, const ModularPair& pair,
                                             int n_samples, unsigned seed) {
  LemmaIdentitiesReport report;
  const Index n = v.dim();
  const ComplexMatrix& b = v.basis();
  const ComplexMatrix u_s = b * b.conjugate().inverse();
  const ComplexMatrix& u_j = pair.j().u();

  report.s_involution = (u_s * u_s.conjugate() - ComplexMatrix::Identity(n, n)).norm();

  // (iii) S* = J S J as antilinear maps
  const ComplexMatrix u_sstar = u_s.transpose();
  const ComplexMatrix u_jsj = u_j * u_s.conjugate() * u_j;
  report.sstar_vs_jsj = (u_sstar - u_jsj).norm() / std::max(1.0, u_sstar.norm());

  // J(V): columns J(b_k)
  ComplexMatrix jv(n, n);
  for (Index k = 0; k < n; ++k) jv.col(k) = pair.j().apply(b.col(k));
  RealMatrix jv_real(2 * n, n);
  for (Index k = 0; k < n; ++k) jv_real.col(k) = realify(jv.col(k));

  // Fix(S*) via its realified projector
  {
    const RealMatrix sstar_real = realify_antilinear(u_sstar);
    const RealMatrix proj = 0.5 * (RealMatrix::Identity(2 * n, 2 * n) + sstar_real);
    report.fix_sstar_angle = subspace_angle(orthonormal_image(proj, 1e-8), jv_real);
  }

  const RealMatrix v_real = v.realified_basis();

  // (iv) the Re⟨·,·⟩-orthogonal complement of V is iJ(V)
  {
    Eigen::JacobiSVD<RealMatrix> svd(v_real.transpose(), Eigen::ComputeFullV);
    const RealMatrix complement = svd.matrixV().rightCols(n);  // kernel of V^T
    RealMatrix ijv_real(2 * n, n);
    for (Index k = 0; k < n; ++k) ijv_real.col(k) = realify(Complex(0, 1) * jv.col(k));
    report.orthogonal_angle = subspace_angle(complement, ijv_real);

    RealMatrix direct(2 * n, 2 * n);
    direct.leftCols(n) = v_real;
    direct.rightCols(n) = ijv_real;
    Eigen::JacobiSVD<RealMatrix> full(direct);
    report.direct_sum_defect =
        full.singularValues().minCoeff() > 1e-8 * full.singularValues()[0] ? 0.0 : 1.0;
  }

  // (v) J(V) = V^{⊥,ω} for ω = Im⟨·,·⟩
  {
    RealMatrix omega(2 * n, 2 * n);
    omega.setZero();
    omega.block(0, n, n, n) = RealMatrix::Identity(n, n);
    omega.block(n, 0, n, n) = -RealMatrix::Identity(n, n);
    // w ⊥_ω V  ⇔  (Ω v̂)ᵀ ŵ = 0 for all basis v
    const RealMatrix omega_v = omega * v_real;
    Eigen::JacobiSVD<RealMatrix> svd(omega_v.transpose(), Eigen::ComputeFullV);
    const RealMatrix sympl = svd.matrixV().rightCols(n);
    report.symplectic_angle = subspace_angle(sympl, jv_real);
  }

  // graph norm identity and reality of the scalar product on V × V
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double graph_defect = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    RealVector p(n), q(n);
    for (Index i = 0; i < n; ++i) {
      p[i] = gauss(rng);
      q[i] = gauss(rng);
    }
    const ComplexVector x = b * p.cast<Complex>();
    const ComplexVector y = b * q.cast<Complex>();
    const double lhs = (x + Complex(0, 1) * y).squaredNorm() + (x - Complex(0, 1) * y).squaredNorm();
    const double rhs = 2.0 * (x.squaredNorm() + y.squaredNorm());
    graph_defect = std::max(graph_defect, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  report.graph_norm_defect = graph_defect;

  double reality = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      const Complex ip = b.col(k).dot(b.col(i));  // ⟨b_i, b_k⟩ = b_k* b_i
      reality = std::max(reality, std::abs(ip.imag()) /
                                      std::max(1e-300, b.col(i).norm() * b.col(k).norm()));
    }
  report.reality_defect = reality;
  report.delta_vs_identity =
      (pair.delta() - ComplexMatrix::Identity(n, n)).norm();
  return report;
}

std::variant<ComplexMatrix, AntilinearMap> modular_rep(const ModularPair& pair, double t,
                                                       int eps) {
  const ComplexMatrix delta_it = apply_function(pair.delta_spec(), power_it(t));
  if (eps % 2 == 0) return delta_it;
  return AntilinearMap{delta_it * pair.j().u()};
}

namespace {

ComplexMatrix exp_minus_zh(const SpectralDecomposition& spec, Complex z) {
  ComplexVector mapped(spec.eigenvalues.size());
  for (Index i = 0; i < mapped.size(); ++i) mapped[i] = std::exp(-z * spec.eigenvalues[i]);
  return spec.eigenvectors * mapped.asDiagonal() * spec.eigenvectors.adjoint();
}

}  // namespace

SesqForm phi_strip_function(const ComplexMatrix& h, const StripInvolution& j,
                            const ComplexMatrix& embedding, Complex z, CircleParameter beta,
                            double tol) {
  if (!(z.real() >= 0.0 && z.real() <= beta.beta()))
    throw OutOfRange("phi_strip_function: Re z outside [0, beta]");
  const SpectralDecomposition spec = eig_hermitian(h);
  const ComplexMatrix decay = apply_function(spec, exp_scaled(0.5 * beta.beta()));

  // range of the embedding must be fixed by J e^{-βH/2}
  for (Index k = 0; k < embedding.cols(); ++k) {
    const ComplexVector col = embedding.col(k);
    ComplexVector image;
    if (const auto* r = std::get_if<ComplexMatrix>(&j)) {
      image = (*r) * (decay * col);
    } else {
      image = std::get<AntiUnitaryMap>(j).apply(decay * col);
    }
    if ((image - col).norm() > tol * std::max(1.0, col.norm()))
      throw NotFixed("phi_strip_function: embedding column " + std::to_string(k) +
                     " is not fixed by J e^{-beta H/2}");
  }
  return SesqForm(embedding.adjoint() * exp_minus_zh(spec, z) * embedding);
}

double strip_relation_residual(const ComplexMatrix& h, const AntiUnitaryMap& j,
                               const ComplexMatrix& embedding, CircleParameter beta, Complex z) {
  const SpectralDecomposition spec = eig_hermitian(h);
  const ComplexMatrix lhs =
      embedding.adjoint() * exp_minus_zh(spec, beta.beta() - std::conj(z)) * embedding;
  const ComplexMatrix rhs = embedding.adjoint() * exp_minus_zh(spec, z) * embedding;
  (void)j;
  return (lhs - rhs.conjugate()).norm();
}

ComplexMatrix strip_kernel(const ComplexMatrix& h, const ComplexMatrix& embedding,
                           const std::vector<Complex>& points) {
  const SpectralDecomposition spec = eig_hermitian(h);
  const Index d = embedding.cols();
  const Index m = static_cast<Index>(points.size());
  ComplexMatrix kernel(m * d, m * d);
  for (Index a = 0; a < m; ++a)
    for (Index c = 0; c < m; ++c) {
      const Complex mid = 0.5 * (points[static_cast<std::size_t>(a)] +
                                 std::conj(points[static_cast<std::size_t>(c)]));
      kernel.block(a * d, c * d, d, d) = embedding.adjoint() * exp_minus_zh(spec, mid) * embedding;
    }
  return kernel;
}

}  // namespace rpcirc
