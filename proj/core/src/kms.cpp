#include "rpcirc/kms.hpp"

#include <cmath>
#include <random>

namespace rpcirc {

GibbsSystem::GibbsSystem(ComplexMatrix h, double beta)
    : h_(std::move(h)), beta_(beta), h_spec_(eig_hermitian(h_)) {
  if (!(beta > 0.0)) throw OutOfRange("GibbsSystem: beta must be positive");
  const Index n = h_.rows();
  // Boltzmann weights, shifted for stability
  const double e_min = h_spec_.eigenvalues.minCoeff();
  p_.resize(n);
  double z = 0.0;
  for (Index i = 0; i < n; ++i) {
    p_[i] = std::exp(-beta_ * (h_spec_.eigenvalues[i] - e_min));
    z += p_[i];
  }
  p_ /= z;
  rho_ = h_spec_.eigenvectors * p_.cast<Complex>().asDiagonal() * h_spec_.eigenvectors.adjoint();
}

ComplexMatrix GibbsSystem::density_root() const {
  return h_spec_.eigenvectors * p_.cwiseSqrt().cast<Complex>().asDiagonal() *
         h_spec_.eigenvectors.adjoint();
}

Complex GibbsSystem::expectation(const ComplexMatrix& a) const {
  if (a.rows() != n() || a.cols() != n()) throw DimensionMismatch("GibbsSystem::expectation");
  return (rho_ * a).trace();
}

ComplexMatrix evolve(const GibbsSystem& sys, const ComplexMatrix& a, Complex z) {
  if (a.rows() != sys.n() || a.cols() != sys.n()) throw DimensionMismatch("evolve");
  const SpectralDecomposition& s = sys.h_spec();
  const ComplexMatrix tilde = s.eigenvectors.adjoint() * a * s.eigenvectors;
  ComplexMatrix out(sys.n(), sys.n());
  for (Index k = 0; k < sys.n(); ++k)
    for (Index l = 0; l < sys.n(); ++l)
      out(k, l) = tilde(k, l) *
                  std::exp(Complex(0.0, 1.0) * z * (s.eigenvalues[k] - s.eigenvalues[l]));
  return s.eigenvectors * out * s.eigenvectors.adjoint();
}

double kms_residual(const GibbsSystem& sys, const ComplexMatrix& a, const ComplexMatrix& b,
                    double t, const ComplexMatrix* state) {
  auto omega = [&](const ComplexMatrix& x) {
    return state ? Complex((*state * x).trace()) : sys.expectation(x);
  };
  const ComplexMatrix left = a * evolve(sys, b, Complex(t, sys.beta()));
  const ComplexMatrix right = evolve(sys, b, Complex(t, 0.0)) * a;
  return std::abs(omega(left) - omega(right));
}

ComplexMatrix psi_matrix(const GibbsSystem& sys, Complex z) {
  // ψ(z)(A,B) = tr(ρ B* α_z(A)) = vec(B)* [(ρ e^{-izh})ᵀ ⊗ e^{izh}] vec(A)
  const SpectralDecomposition& s = sys.h_spec();
  ComplexVector fwd(sys.n()), bwd(sys.n());
  for (Index i = 0; i < sys.n(); ++i) {
    fwd[i] = std::exp(Complex(0.0, 1.0) * z * s.eigenvalues[i]);
    bwd[i] = sys.probabilities()[i] * std::exp(Complex(0.0, -1.0) * z * s.eigenvalues[i]);
  }
  const ComplexMatrix u = s.eigenvectors;
  const ComplexMatrix left = u * fwd.asDiagonal() * u.adjoint();           // e^{izh}
  const ComplexMatrix right = u * bwd.asDiagonal() * u.adjoint();          // ρ e^{-izh}
  return kron(right.transpose(), left);
}

SesqForm psi_function(const GibbsSystem& sys, double t) {
  return SesqForm(psi_matrix(sys, Complex(t, 0.0)));
}

AncontReport kms_ancont_check(const GibbsSystem& sys, const ComplexMatrix& a,
                              const ComplexMatrix& b, double t) {
  const Index n = sys.n();
  if (a.rows() != n || b.rows() != n) throw DimensionMismatch("kms_ancont_check");
  Eigen::Map<const ComplexVector> va(a.data(), n * n);
  Eigen::Map<const ComplexVector> vb(b.data(), n * n);
  const ComplexMatrix a_star = a.adjoint();
  const ComplexMatrix b_star = b.adjoint();
  Eigen::Map<const ComplexVector> vas(a_star.data(), n * n);
  Eigen::Map<const ComplexVector> vbs(b_star.data(), n * n);

  auto psi_of = [&](Complex z, const Eigen::Map<const ComplexVector>& x,
                    const Eigen::Map<const ComplexVector>& y) {
    return (y.adjoint() * psi_matrix(sys, z) * x).value();
  };

  const double scale = std::max(1.0, std::abs(psi_of(Complex(0, 0), va, vb)));
  AncontReport report;
  // ψ(t + iβ)(A,B) = ψ(-t)(B*,A*)
  report.boundary_residual =
      std::abs(psi_of(Complex(t, sys.beta()), va, vb) - psi_of(Complex(-t, 0.0), vbs, vas)) /
      scale;
  // ψ(iβ - z)(A,B) = ψ(z)(B*,A*) at z = t
  report.strip_residual =
      std::abs(psi_of(Complex(-t, sys.beta()), va, vb) - psi_of(Complex(t, 0.0), vbs, vas)) /
      scale;
  return report;
}

CircleRPFunction rp_from_kms(const GibbsSystem& sys, const ComplexMatrix& a) {
  if (a.rows() != sys.n() || a.cols() != sys.n()) throw DimensionMismatch("rp_from_kms");
  if (hermiticity_defect(a) > 1e-10) throw NotSelfAdjoint("rp_from_kms: A != A*");

  // φ^{A,A}(t) = ψ(it)(A,A) = Σ_{k,m} p_m |ã_{km}|² e^{-t(E_k - E_m)}: a
  // Laplace transform of the atomic measure on the Bohr gaps.  Collect the
  // positive half (gaps λ ≥ 0); the λ = 0 weight splits in two so that the
  // symmetrized measure reproduces it.
  const SpectralDecomposition& s = sys.h_spec();
  const ComplexMatrix tilde = s.eigenvectors.adjoint() * a * s.eigenvectors;
  const double scale = std::max(1.0, s.spectral_norm());
  const double gap_tol = 1e-12 * scale;

  std::vector<Atom> plus;
  for (Index k = 0; k < sys.n(); ++k) {
    for (Index m = 0; m < sys.n(); ++m) {
      const double gap = s.eigenvalues[k] - s.eigenvalues[m];
      const double w = sys.probabilities()[m] * std::norm(tilde(k, m));
      if (w == 0.0) continue;
      if (gap < -gap_tol) continue;  // contributed by the mirror pair (m, k)
      ComplexMatrix weight(1, 1);
      weight(0, 0) = std::abs(gap) <= gap_tol ? 0.5 * w : w;
      plus.push_back(Atom{std::max(gap, 0.0), weight});
    }
  }
  return CircleRPFunction(CircleParameter(sys.beta()),
                          MeasureBacked{AtomicOperatorMeasure(1, std::move(plus))});
}

ComplexMatrix gns_generator(const GibbsSystem& sys) {
  const Index n = sys.n();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return kron(id, sys.hamiltonian()) - kron(sys.hamiltonian().transpose(), id);
}

double TomitaGibbsResult::max_residual() const {
  double worst = delta_residual;
  worst = std::max(worst, j_residual);
  worst = std::max(worst, subspace_angle);
  worst = std::max(worst, commutant_residual);
  worst = std::max(worst, flow_residual);
  worst = std::max(worst, generator_link_residual);
  worst = std::max(worst, normalization_residual);
  return worst;
}

namespace {

// vec(Xᵀ) = K vec(X)
ComplexMatrix commutation_matrix(Index n) {
  ComplexMatrix k = ComplexMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) k(j * n + i, i * n + j) = 1.0;  // careful: vec index r + c*n
  return k;
}

ComplexMatrix random_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

}  // namespace

TomitaGibbsResult tomita_from_gibbs(const GibbsSystem& sys, int n_random_pairs, unsigned seed) {
  const Index n = sys.n();
  const Index nn = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  const ComplexMatrix root = sys.density_root();
  if (sys.probabilities().minCoeff() <= 1e-14)
    throw NotSeparating("tomita_from_gibbs: density is singular");

  // V = {A Ω : A = A*} in vec coordinates: columns vec(H_a ρ^{1/2}) over a
  // Hermitian basis H_a.
  ComplexMatrix basis(nn, nn);
  Index col = 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    const ComplexMatrix v = e * root;
    basis.col(col++) = Eigen::Map<const ComplexVector>(v.data(), nn);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = inv_sqrt2;
      e(j, i) = inv_sqrt2;
      ComplexMatrix v = e * root;
      basis.col(col++) = Eigen::Map<const ComplexVector>(v.data(), nn);
      e(i, j) = Complex(0.0, inv_sqrt2);
      e(j, i) = Complex(0.0, -inv_sqrt2);
      v = e * root;
      basis.col(col++) = Eigen::Map<const ComplexVector>(v.data(), nn);
    }
  }
  StandardSubspace subspace(basis);

  // closed forms: Δ = (ρᵀ)^{-1} ⊗ ρ, J = transpose-permutation ∘ conj
  const SpectralDecomposition rho_spec = eig_hermitian(sys.density());
  const ComplexMatrix rho_inv = apply_function(rho_spec, power(-1.0));
  const ComplexMatrix delta_cf = kron(rho_inv.transpose(), sys.density());
  AntiUnitaryMap j_cf(commutation_matrix(n));
  ModularPair pair(hermitize(delta_cf), j_cf);

  TomitaData numeric = subspace_to_tomita(subspace);

  TomitaGibbsResult result{std::move(subspace),
                           std::move(pair),
                           std::move(numeric.pair),
                           0.0,
                           0.0,
                           0.0,
                           0.0,
                           0.0,
                           {},
                           0.0,
                           0.0,
                           {}};

  result.delta_residual = (result.pair.delta() - result.pair_numeric.delta()).norm() /
                          std::max(1.0, result.pair.delta().norm());
  result.j_residual = (result.pair.j().u() - result.pair_numeric.j().u()).norm();
  result.subspace_angle = subspace_angle(result.subspace.realified_basis(),
                                         pair_to_subspace(result.pair).realified_basis());

  // commutant: J π(A) J commutes with π(B)
  std::mt19937_64 rng(seed);
  double commutant = 0.0;
  for (int s = 0; s < n_random_pairs; ++s) {
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);
    const ComplexMatrix ja = antiunitary_conjugate(result.pair.j(), kron(id, a));
    const ComplexMatrix pb = kron(id, b);
    commutant = std::max(commutant, (ja * pb - pb * ja).norm() /
                                        std::max(1.0, ja.norm() * pb.norm()));
  }
  result.commutant_residual = commutant;

  // modular flow: Δ^{-it} π(M) Δ^{it} = π(α_{βt}(M))
  const SpectralDecomposition delta_spec = eig_hermitian(result.pair.delta());
  double flow = 0.0;
  for (const double t : {0.37, 1.21}) {
    const ComplexMatrix flow_fwd = apply_function(delta_spec, power_it(-t));
    const ComplexMatrix flow_bwd = apply_function(delta_spec, power_it(t));
    const ComplexMatrix m = random_matrix(n, rng);
    const ComplexMatrix lhs = flow_fwd * kron(id, m) * flow_bwd;
    const ComplexMatrix rhs = kron(id, evolve(sys, m, Complex(sys.beta() * t, 0.0)));
    flow = std::max(flow, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
  }
  result.flow_residual = flow;
  result.flow_convention =
      "Delta^{-it} pi(M) Delta^{it} = pi(alpha_{beta t}(M)); alpha_s(M) = e^{ish} M e^{-ish}";

  const ComplexMatrix h_gns = gns_generator(sys);
  const ComplexMatrix minus_log_delta = -apply_function(delta_spec, log_map());
  result.generator_link_residual = (minus_log_delta - sys.beta() * h_gns).norm() /
                                   std::max(1.0, h_gns.norm());

  // Rmk-style normalization: Δ^{1/2} = e^{-H/2} for H = -log Δ (β = 1 scaling)
  const SpectralDecomposition mld_spec = eig_hermitian(minus_log_delta);
  result.normalization_residual =
      (apply_function(delta_spec, power(0.5)) - apply_function(mld_spec, exp_scaled(0.5))).norm();

  result.delta_eigenvalues = delta_spec.eigenvalues;
  return result;
}

GeneratorPhi phi_via_generator(const GibbsSystem& sys, const ComplexMatrix& a,
                               const ComplexMatrix& b, double t) {
  if (!(t >= 0.0 && t <= sys.beta())) throw OutOfRange("phi_via_generator: t outside [0, beta]");
  const Index n = sys.n();
  const ComplexMatrix root = sys.density_root();
  const ComplexMatrix a_omega = a * root;
  const ComplexMatrix b_omega = b * root;
  Eigen::Map<const ComplexVector> va(a_omega.data(), n * n);
  Eigen::Map<const ComplexVector> vb(b_omega.data(), n * n);

  const SpectralDecomposition gen = eig_hermitian(gns_generator(sys));
  const ComplexMatrix decay = apply_function(gen, exp_scaled(t));

  GeneratorPhi out{(vb.adjoint() * decay * va).value(), 0.0, 0.0};
  // ψ acts on algebra coordinates, not on GNS vectors
  Eigen::Map<const ComplexVector> v_alg_a(a.data(), n * n);
  Eigen::Map<const ComplexVector> v_alg_b(b.data(), n * n);
  const Complex psi_alg =
      (v_alg_b.adjoint() * psi_matrix(sys, Complex(0.0, t)) * v_alg_a).value();
  out.residual_vs_psi = std::abs(out.value - psi_alg);

  const ComplexMatrix half = apply_function(gen, exp_scaled(0.5 * sys.beta()));
  out.halfline_norm = (half * va).norm();
  return out;
}

}  // namespace rpcirc
