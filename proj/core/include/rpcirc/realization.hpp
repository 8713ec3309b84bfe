#pragma once

#include <string>
#include <vector>

#include "rpcirc/rpfunc.hpp"

namespace rpcirc {

/// U(t) = e^{itH} for a Hermitian generator.
class OneParameterGroup {
 public:
  explicit OneParameterGroup(ComplexMatrix generator);

  const ComplexMatrix& generator() const { return generator_; }
  const SpectralDecomposition& spec() const { return spec_; }
  ComplexMatrix at(double t) const;           // e^{itH}
  ComplexMatrix semigroup(double t) const;    // e^{-tH}

 private:
  ComplexMatrix generator_;
  SpectralDecomposition spec_;
};

struct ClusterMatch {
  double lambda = 0.0;     // representative positive eigenvalue
  int mult_pos = 0;
  int mult_neg = 0;
};

/// Eigenvalue pairing report: the spectrum is negation-symmetric iff every
/// positive cluster is matched by a negative one of equal multiplicity.
struct PairingReport {
  bool exists = false;
  int zero_multiplicity = 0;
  std::vector<ClusterMatch> clusters;  // positive representatives

  std::string table() const;  // printable multiplicity table
};

// Clusters eigenvalues with a relative gap threshold and matches λ against
// -λ; the zero cluster needs no partner.
PairingReport check_J_existence(const ComplexMatrix& h, double cluster_tol = 1e-8);

// Antiunitary involution J with J H J = -H (swap paired eigenspaces, then
// conjugate in the eigenbasis).  Throws NoSuchJ when the spectrum is not
// negation-symmetric.
AntiUnitaryMap construct_J(const ComplexMatrix& h, double cluster_tol = 1e-8);

// Unitary involution R with R H R = -H.  Throws NoSuchR.
ComplexMatrix construct_R(const ComplexMatrix& h, double cluster_tol = 1e-8);

/// Euclidean realization data: H = A ⊕ (-A), the circle function
/// φ(t) = e^{-tA} + e^{-(β-t)A} = j* e^{-tH} j, and the involutions.
struct RealizationBundle {
  CircleRPFunction phi;        // generator-backed, dimension n/2
  ComplexMatrix embedding;     // j : V → H, n × (n/2)
  AntiUnitaryMap involution_j; // antiunitary, commutes with e^{itH}
  ComplexMatrix involution_r;  // unitary, R H R = -H
  ComplexMatrix hamiltonian;   // H
  double beta = 0.0;
};

// Requires a negation-symmetric spectrum with no zero modes; throws
// AsymmetricSpectrum or ZeroMode.
RealizationBundle euclidean_realize(const ComplexMatrix& h, CircleParameter beta,
                                    double cluster_tol = 1e-8);

// max over the grid of ‖φ(t) - j* e^{-tH} j‖_F
double dilation_check(const RealizationBundle& bundle, const RealVector& t_grid);

/// Finite L²(ℝ, μ; V) model of the dual one-parameter group: one block of
/// dimension rank(Wᵢ) per atom, generator λᵢ·1 on each block, constants
/// embedded by j.  j_model is the unitary involution (Jf)(λ) = e^{-βλ/2}f(-λ)
/// and r_model the flip (Rf)(λ) = f(-λ) = (e^{βH/2} J f)(λ).
struct DualModel {
  ComplexMatrix generator;   // block diagonal, Hermitian
  ComplexMatrix embedding;   // j : ℂ^d → model
  ComplexMatrix j_model;     // linear unitary involution, J H J = -H
  ComplexMatrix r_model;     // flip, fixes j(V)
  AtomicOperatorMeasure mu;  // the symmetrized measure the model integrates
  double beta = 0.0;
  Index dim = 0;             // model dimension
  Index v_dim = 0;

  OneParameterGroup group() const { return OneParameterGroup(generator); }
};

// μ₊ of a measure- or generator-backed function (spectral atoms of the
// generator in the latter case).  Throws WrongBacking for samples.
AtomicOperatorMeasure measure_of(const CircleRPFunction& phi, double cluster_tol = 1e-8);

DualModel reconstruct_dual(const CircleRPFunction& phi, double cluster_tol = 1e-8);

// max over the grid of |⟨U_t j(v), j(w)⟩ - φ(-it)(v, w)| over basis pairs
double dual_model_defect(const DualModel& model, const RealVector& t_grid);

// ψ(t) = φ(β/2 - it) via the ĵ(v)(λ) = e^{-βλ/4} v embedding; returns the
// max residual of ⟨U_t ĵv, ĵw⟩ = ψ(t)(v, w) over the grid, and checks the
// symmetry ψ(t) = ψ(-t)*.
double tilde_embedding_check(const CircleRPFunction& phi, const RealVector& t_grid);

struct LineCaseReport {
  bool invariance_psd = false;   // Gram [φ(tⱼ - tₖ)]
  double invariance_min_eig = 0.0;
  bool reflection_psd = false;   // OS kernel [φ(tⱼ + tₖ)]
  double reflection_min_eig = 0.0;

  bool passed() const { return invariance_psd && reflection_psd; }
};

// φ(t) = e^{-|t|H} on positive grids: both kernels are PSD iff H ≥ 0.
LineCaseReport line_case_check(const ComplexMatrix& h, const RealVector& t_grid,
                               double tol = kDefaultPsdTol);

}  // namespace rpcirc
