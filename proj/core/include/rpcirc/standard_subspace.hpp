#pragma once

#include <variant>

#include "rpcirc/gns.hpp"
#include "rpcirc/linalg.hpp"
#include "rpcirc/measure.hpp"

namespace rpcirc {

// ℂⁿ → ℝ²ⁿ via (Re; Im) stacking.
RealVector realify(const ComplexVector& v);
ComplexVector complexify(const RealVector& v);
RealMatrix realify_linear(const ComplexMatrix& m);
// real matrix of v ↦ u · conj(v)
RealMatrix realify_antilinear(const ComplexMatrix& u);

// Largest principal angle between the column spans of two real matrices of
// equal rank.
double subspace_angle(const RealMatrix& a, const RealMatrix& b);

/// Standard real subspace V ⊂ ℂⁿ: the columns of `basis` span V over ℝ and,
/// because V ∩ iV = {0} and V + iV = ℂⁿ, they also form a complex basis, so
/// standardness is exactly invertibility of the basis matrix.
class StandardSubspace {
 public:
  explicit StandardSubspace(ComplexMatrix basis, double tol = 1e-10);

  Index dim() const { return basis_.rows(); }  // complex ambient dimension
  const ComplexMatrix& basis() const { return basis_; }
  RealMatrix realified_basis() const;  // 2n × n

 private:
  ComplexMatrix basis_;
};

/// Modular pair (Δ, J): Δ positive definite, J an antiunitary involution with
/// J Δ J = Δ⁻¹.
class ModularPair {
 public:
  ModularPair(ComplexMatrix delta, AntiUnitaryMap j, double tol = 1e-10);

  Index dim() const { return delta_.rows(); }
  const ComplexMatrix& delta() const { return delta_; }
  const AntiUnitaryMap& j() const { return j_; }
  const SpectralDecomposition& delta_spec() const { return delta_spec_; }
  ComplexMatrix hamiltonian() const;  // H = log Δ, satisfies J H J = -H

 private:
  ComplexMatrix delta_;
  AntiUnitaryMap j_;
  SpectralDecomposition delta_spec_;
};

// V = Fix(J Δ^{1/2}) as the +1 eigenspace of the realified Tomita operator.
// Throws DegenerateFixSpace when the fixed space does not have real
// dimension n.
StandardSubspace pair_to_subspace(const ModularPair& pair);

struct TomitaData {
  AntilinearMap s;   // S(x + iy) = x - iy on V; u_S = B conj(B)^{-1}
  ModularPair pair;  // Δ = S*S, J = S Δ^{-1/2}
};

TomitaData subspace_to_tomita(const StandardSubspace& v);

struct LemmaIdentitiesReport {
  double s_involution = 0.0;        // ‖S² - 1‖
  double sstar_vs_jsj = 0.0;        // (iii) ‖u_{S*} - u_{JSJ}‖
  double fix_sstar_angle = 0.0;     // (iii) Fix(S*) vs J(V)
  double orthogonal_angle = 0.0;    // (iv) V^⊥ (Re⟨·,·⟩) vs iJ(V)
  double direct_sum_defect = 0.0;   // (iv) rank defect of [V | iJ(V)]
  double symplectic_angle = 0.0;    // (v) J(V) vs V^{⊥,ω}
  double graph_norm_defect = 0.0;   // max relative defect of the norm identity
  double reality_defect = 0.0;      // max |Im⟨x, y⟩| over unit x, y ∈ V
  double delta_vs_identity = 0.0;   // ‖Δ - 1‖

  double max_identity_residual() const;
};

LemmaIdentitiesReport check_lemma_identities(const StandardSubspace& v, const ModularPair& pair,
                                             int n_samples = 100, unsigned seed = 0);

// U_{(t,ε)} = Δ^{it} J^ε: a matrix for ε = 0, an antilinear map for ε = 1.
std::variant<ComplexMatrix, AntilinearMap> modular_rep(const ModularPair& pair, double t,
                                                       int eps);

/// Either a unitary involution with R H R = -H or an antiunitary involution
/// with J H J = -H.
using StripInvolution = std::variant<ComplexMatrix, AntiUnitaryMap>;

// φ(z)(v, w) = ⟨e^{-zH} j(v), j(w)⟩ as a sesquilinear form.  The range of
// `embedding` must lie in Fix(J e^{-βH/2}) (throws NotFixed).
SesqForm phi_strip_function(const ComplexMatrix& h, const StripInvolution& j,
                            const ComplexMatrix& embedding, Complex z, CircleParameter beta,
                            double tol = 1e-8);

// ‖φ(β - conj z) - conj(φ(z))‖ for the antiunitary case.
double strip_relation_residual(const ComplexMatrix& h, const AntiUnitaryMap& j,
                               const ComplexMatrix& embedding, CircleParameter beta, Complex z);

// Block kernel [φ((z_a + conj(z_b))/2)] over strip points; PSD when the
// embedding lies in the fixed space.
ComplexMatrix strip_kernel(const ComplexMatrix& h, const ComplexMatrix& embedding,
                           const std::vector<Complex>& points);

}  // namespace rpcirc
