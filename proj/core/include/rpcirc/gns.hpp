#pragma once

#include <string>
#include <vector>

#include "rpcirc/linalg.hpp"

namespace rpcirc {

/// Sesquilinear form on ℂ^d, linear in the first argument:
/// form(v, w) = w* F v.
class SesqForm {
 public:
  explicit SesqForm(ComplexMatrix f);

  Index dim() const { return f_.rows(); }
  const ComplexMatrix& matrix() const { return f_; }
  Complex operator()(const ComplexVector& v, const ComplexVector& w) const;

  bool is_hermitian(double tol = 1e-10) const;
  SesqForm adjoint() const;  // ψ*(v, w) = conj(ψ(w, v))

 private:
  ComplexMatrix f_;
};

/// Sesq(V)-valued positive definite function on the cyclic group Z_N.  The
/// block kernel K(g, h) = φ(g - h) is checked PSD on construction.
class CyclicSesqFunction {
 public:
  explicit CyclicSesqFunction(std::vector<ComplexMatrix> values, double psd_tol = kDefaultPsdTol);

  long order() const { return static_cast<long>(values_.size()); }
  Index dim() const { return values_.empty() ? 0 : values_.front().rows(); }
  const ComplexMatrix& value(long k) const;  // indices mod N
  const std::vector<ComplexMatrix>& values() const { return values_; }

  // N·d × N·d matrix with block (g, h) = φ(g - h); this is the Gram matrix of
  // the kernel vectors K_{g,v} under the linear-in-first-argument convention.
  ComplexMatrix block_kernel() const;

 private:
  std::vector<ComplexMatrix> values_;
};

// Gram-factor model of the reproducing kernel space of a flattened
// Sesq-valued kernel sample: H_K = ℂ^rank with K_{(x,v)} ↦ column (x,v) of
// the factor.  The reproducing identity ⟨K_{y,w}, K_{x,v}⟩ = K(x,y)(w,v)
// holds at the level of the factorization.
QuotientModel kernel_to_rkhs(const ComplexMatrix& block_kernel, double tol = kDefaultPsdTol);

/// Concrete GNS data for a positive definite function on Z_N.
struct GNSModel {
  long order = 0;            // N
  Index v_dim = 0;           // d
  Index hilbert_dim = 0;     // rank of the kernel
  std::vector<ComplexMatrix> rep;  // π(k), unitary, k = 0, …, N-1
  ComplexMatrix embedding;   // j : ℂ^d → model, hilbert_dim × d
  QuotientModel quotient;    // factor of the block kernel

  const ComplexMatrix& pi(long k) const;
};

GNSModel gns_construct(const CyclicSesqFunction& phi, double tol = kDefaultPsdTol);

// GNS reconstruction defect: max over g, basis v, w of
// |φ(g)(v, w) - ⟨π(g) j v, j w⟩|.
double gns_reconstruction_defect(const GNSModel& model, const CyclicSesqFunction& phi);

// Model matrix of (θ f)(x) = f(-x); requires the kernel symmetry φ(k) = φ(-k).
ComplexMatrix induced_reflection(const GNSModel& model, double tol = 1e-8);

/// Reflection positive Hilbert space (E, E₊, θ): θ a unitary involution,
/// E₊ spanned by the given columns, with ⟨θu, v⟩ PSD on E₊.
class RPHilbertSpace {
 public:
  RPHilbertSpace(ComplexMatrix theta, ComplexMatrix plus_basis, double tol = 1e-10);

  Index ambient_dim() const { return theta_.rows(); }
  Index plus_dim() const { return plus_basis_.cols(); }
  const ComplexMatrix& theta() const { return theta_; }
  const ComplexMatrix& plus_basis() const { return plus_basis_; }

  // G_ij = ⟨θ u_j, u_i⟩ = (U* θ U)_ij
  ComplexMatrix twisted_gram() const;

 private:
  ComplexMatrix theta_;
  ComplexMatrix plus_basis_;
};

struct OSQuantization {
  QuotientModel quotient;  // of the twisted Gram
  // q maps E₊ coordinates to Ê: q(c) = quotient.factor · c
  ComplexVector q(const ComplexVector& plus_coords) const { return quotient.embed(plus_coords); }
};

// Throws NotThetaPositive (message carries the offending min eigenvalue).
OSQuantization os_quantize(const RPHilbertSpace& rph, double tol = kDefaultPsdTol);

// Descends T (given on E₊ coordinates) to T̂ on Ê; requires T to map the
// null space of the twisted form into itself.
ComplexMatrix descend_operator(const RPHilbertSpace& rph, const ComplexMatrix& t_coords,
                               double tol = 1e-10);

// Compresses an ambient operator to E₊ coordinates; throws NotInvariant when
// T does not map span(E₊) into itself.
ComplexMatrix compress_to_plus(const RPHilbertSpace& rph, const ComplexMatrix& t_ambient,
                               double tol = 1e-10);

struct RPConditionReport {
  bool rp1 = false;
  double rp1_residual = 0.0;
  bool rp2 = true;
  std::string rp2_note;
  bool rp3 = true;
  std::string rp3_note;
};

// (RP1): π(-k) = θ π(k) θ for all k.  (RP2) is trivial for the circle since
// the fixed-point group is {0}; (RP3) is vacuous in finite dimensions.  Both
// are reported with explanatory notes.  Throws NotRepresentation when rep is
// not a unitary homomorphism of Z_N.
RPConditionReport check_rp_conditions(const std::vector<ComplexMatrix>& rep,
                                      const ComplexMatrix& theta, double tol = 1e-10);

}  // namespace rpcirc
