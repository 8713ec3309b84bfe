#pragma once

#include <string>

#include "rpcirc/gns.hpp"
#include "rpcirc/rpfunc.hpp"
#include "rpcirc/standard_subspace.hpp"

namespace rpcirc {

/// Finite C*-dynamical system (Mₙ, α, ω_β): α_t(A) = e^{ith} A e^{-ith} and
/// ω(A) = tr(ρ A) with the Gibbs density ρ = e^{-βh}/tr e^{-βh}.
class GibbsSystem {
 public:
  GibbsSystem(ComplexMatrix h, double beta);

  Index n() const { return h_.rows(); }
  double beta() const { return beta_; }
  const ComplexMatrix& hamiltonian() const { return h_; }
  const SpectralDecomposition& h_spec() const { return h_spec_; }
  const ComplexMatrix& density() const { return rho_; }
  ComplexMatrix density_root() const;  // ρ^{1/2} = Ω in the Hilbert–Schmidt GNS space
  const RealVector& probabilities() const { return p_; }  // Boltzmann weights, h eigenbasis

  Complex expectation(const ComplexMatrix& a) const;  // ω(A)

 private:
  ComplexMatrix h_;
  double beta_;
  SpectralDecomposition h_spec_;
  RealVector p_;
  ComplexMatrix rho_;
};

// α_z(A) = e^{izh} A e^{-izh}, entire in z.
ComplexMatrix evolve(const GibbsSystem& sys, const ComplexMatrix& a, Complex z);

// |ω(A α_{t+iβ}(B)) - ω(α_t(B) A)|; zero (to roundoff) for the Gibbs state.
// A different state may be supplied to turn the identity into a detector.
double kms_residual(const GibbsSystem& sys, const ComplexMatrix& a, const ComplexMatrix& b,
                    double t, const ComplexMatrix* state = nullptr);

// ψ(t)(A, B) = ω(B* α_t(A)) as a form on the n²-dimensional algebra (column-
// major vec coordinates).
SesqForm psi_function(const GibbsSystem& sys, double t);

// Matrix of ψ(z), the entire continuation.
ComplexMatrix psi_matrix(const GibbsSystem& sys, Complex z);

struct AncontReport {
  double boundary_residual = 0.0;  // ψ(t + iβ)(A,B) vs ψ(-t)(B*,A*)
  double strip_residual = 0.0;     // ψ(iβ - z)(A,B) vs ψ(z)(B*,A*) at z = t
};

AncontReport kms_ancont_check(const GibbsSystem& sys, const ComplexMatrix& a,
                              const ComplexMatrix& b, double t);

// φ^{A,A}(t) = ψ(it)(A, A) for A = A*: a scalar reflection positive function
// on the circle of length β, returned measure-backed with atoms at the Bohr
// gaps E_k - E_m.  Throws NotSelfAdjoint.
CircleRPFunction rp_from_kms(const GibbsSystem& sys, const ComplexMatrix& a);

/// Modular data of (Mₙ, Ω = ρ^{1/2}) in Hilbert–Schmidt coordinates along
/// with the cross-check residuals.  The closed forms are Δ = ρ · ρ^{-1}
/// conjugation and J(X) = X*.
struct TomitaGibbsResult {
  StandardSubspace subspace;     // V = {AΩ : A = A*}
  ModularPair pair;              // closed form
  ModularPair pair_numeric;      // recovered through subspace_to_tomita
  double delta_residual = 0.0;   // closed form vs numeric
  double j_residual = 0.0;
  double subspace_angle = 0.0;   // V vs pair_to_subspace(closed form)
  double commutant_residual = 0.0;  // max ‖[J π(A) J, π(B)]‖ over random pairs
  double flow_residual = 0.0;    // Δ^{-it} π(M) Δ^{it} = π(α_{βt}(M))
  std::string flow_convention;
  double generator_link_residual = 0.0;  // ‖ -log Δ - β(1⊗h - hᵀ⊗1) ‖
  double normalization_residual = 0.0;   // Δ^{1/2} vs e^{-H/2}, H = -log Δ
  RealVector delta_eigenvalues;  // ascending

  double max_residual() const;
};

TomitaGibbsResult tomita_from_gibbs(const GibbsSystem& sys, int n_random_pairs = 20,
                                    unsigned seed = 0);

// GNS generator of the ω-preserving flow: H(X) = [h, X], i.e. 1⊗h - hᵀ⊗1 on
// vec coordinates.
ComplexMatrix gns_generator(const GibbsSystem& sys);

struct GeneratorPhi {
  Complex value;              // ⟨e^{-tH} π(A)Ω, π(B)Ω⟩
  double residual_vs_psi;     // against ψ(it)(A, B)
  double halfline_norm;       // ‖e^{-βH/2} π(A)Ω‖
};

GeneratorPhi phi_via_generator(const GibbsSystem& sys, const ComplexMatrix& a,
                               const ComplexMatrix& b, double t);

}  // namespace rpcirc
