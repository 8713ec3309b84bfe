#pragma once

#include <utility>
#include <vector>

#include "rpcirc/linalg.hpp"

namespace rpcirc {

/// Circle length β > 0.
class CircleParameter {
 public:
  explicit CircleParameter(double beta);
  double beta() const { return beta_; }

 private:
  double beta_;
};

struct Atom {
  double lambda = 0.0;
  ComplexMatrix weight;  // PSD
};

/// Finitely atomic Herm(V)₊-valued measure on ℝ.  Atoms are kept sorted by
/// location; locations within relative 1e-12 are merged and zero weights are
/// dropped.
class AtomicOperatorMeasure {
 public:
  AtomicOperatorMeasure(Index dim, std::vector<Atom> atoms, double psd_tol = kDefaultPsdTol);

  static AtomicOperatorMeasure scalar(const std::vector<std::pair<double, double>>& atoms);
  static AtomicOperatorMeasure empty(Index dim);

  Index dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_empty() const { return atoms_.empty(); }

  // merge threshold used for atom locations
  static double location_tolerance(double lambda_scale);

 private:
  Index dim_;
  std::vector<Atom> atoms_;
};

// Σ e^{-tλᵢ} Wᵢ — Hermitian PSD for every real t.
ComplexMatrix laplace(const AtomicOperatorMeasure& mu, double t);

// Σ e^{-zλᵢ} Wᵢ for complex arguments (analytic continuation of the above).
ComplexMatrix laplace(const AtomicOperatorMeasure& mu, Complex z);

// μ̂(z) = Σ e^{izλᵢ} Wᵢ, defined for all z; the natural strip is 0 ≤ Im z ≤ β.
ComplexMatrix fourier(const AtomicOperatorMeasure& mu, Complex z);

bool fourier_in_strip(Complex z, double beta);

struct FourierValue {
  ComplexMatrix value;
  bool in_strip = true;
};
FourierValue fourier_checked(const AtomicOperatorMeasure& mu, Complex z, CircleParameter beta);

// dμ(λ) = dμ₊(λ) + e^{βλ} dμ₊(-λ): an atom (λ, W) of μ₊ contributes (λ, W)
// and (-λ, e^{-βλ} W); an atom at λ = 0 doubles.  Throws NegativeAtom when
// μ₊ has an atom at λ < 0.
AtomicOperatorMeasure symmetrize_from_plus(const AtomicOperatorMeasure& mu_plus,
                                           CircleParameter beta);

// r_*μ = e_{-β} μ atomwise: every atom (λ, W) is matched by (-λ, e^{-βλ} W).
bool check_reflection_relation(const AtomicOperatorMeasure& mu, CircleParameter beta,
                               double tol = 1e-10);

// μ(ℝ) = Σ Wᵢ
ComplexMatrix total_mass(const AtomicOperatorMeasure& mu);

// ∫ e^{-βλ} dμ = Σ e^{-βλᵢ} Wᵢ.  Always finite for atomic measures; this is
// the quantity whose finiteness characterizes membership in D(e^{-βH/2}).
ComplexMatrix rescaled_mass(const AtomicOperatorMeasure& mu, CircleParameter beta);

// Discrete Fourier transform over the cyclic grid tₖ = kβ/N:
//   ĉ_m = (1/N) Σₖ e^{-2πi mk/N} φ(tₖ),  m = 0, …, N-1  (ĉ_{-m} = ĉ_{N-m}).
// Throws NonHermitianSample when a sample fails the Hermitian check.
std::vector<ComplexMatrix> bochner_coefficients(const std::vector<ComplexMatrix>& samples);

// Inverse DFT: φ(tₖ) = Σ_m ĉ_m e^{2πi mk/N}.
std::vector<ComplexMatrix> bochner_inverse(const std::vector<ComplexMatrix>& coefficients);

}  // namespace rpcirc
