#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rpcirc/measure.hpp"

namespace rpcirc {

struct MeasureBacked {
  AtomicOperatorMeasure mu_plus;  // atoms at λ ≥ 0
};

struct GeneratorBacked {
  ComplexMatrix generator;  // PSD Hermitian A
};

struct SampleBacked {
  RealVector grid;                    // strictly increasing, inside [0, β]
  std::vector<ComplexMatrix> values;  // Hermitian samples φ(tⱼ)
};

/// β-periodic operator-valued function on the circle, given by a measure
/// (φ(t) = Σ (e^{-tλ} + e^{-(β-t)λ}) W), a PSD generator
/// (φ(t) = e^{-tA} + e^{-(β-t)A}) or raw samples.
class CircleRPFunction {
 public:
  enum class Backing { kMeasure, kGenerator, kSample };

  CircleRPFunction(CircleParameter beta, MeasureBacked backing);
  CircleRPFunction(CircleParameter beta, GeneratorBacked backing);
  CircleRPFunction(CircleParameter beta, SampleBacked backing);

  double beta() const { return beta_.beta(); }
  CircleParameter circle() const { return beta_; }
  Index dim() const { return dim_; }
  Backing backing() const;

  const AtomicOperatorMeasure& mu_plus() const;       // WrongBacking unless measure
  const ComplexMatrix& generator() const;             // WrongBacking unless generator
  const SpectralDecomposition& generator_spec() const;
  const SampleBacked& samples() const;                // WrongBacking unless samples

 private:
  CircleParameter beta_;
  Index dim_;
  std::variant<MeasureBacked, GeneratorBacked, SampleBacked> backing_;
  std::optional<SpectralDecomposition> generator_spec_;
};

// φ(t) for 0 ≤ t ≤ β.  SampleBacked functions refuse off-grid arguments
// (NotOnGrid) instead of interpolating.
ComplexMatrix eval(const CircleRPFunction& phi, double t);

// f_λ(t) = e^{-tλ} + e^{-(β-t)λ} as a scalar measure-backed function (μ₊ = δ_λ).
CircleRPFunction basic_flambda(double lambda, CircleParameter beta);

// c_n(λ) = 2βλ(1 - e^{-βλ}) / ((λβ)² + (2πn)²), with c_n(0) = 2·[n = 0].
double flambda_coefficient(double lambda, double beta, long n);

// Σᵢ c_n(λᵢ) Wᵢ for measure-backed φ; PSD for every n.
ComplexMatrix fourier_coefficient(const CircleRPFunction& phi, long n);

// Block matrix with block (j,k) = φ((tⱼ + tₖ)/2); grid strictly inside (0, β).
ComplexMatrix os_kernel(const CircleRPFunction& phi, const RealVector& grid);

// m uniform interior points tⱼ = jβ/(m+1).
RealVector default_verification_grid(double beta, int m = 20);

struct RPReport {
  bool kernel_psd = false;
  double kernel_min_eig = 0.0;
  std::optional<bool> fourier_psd;  // absent when samples cannot be placed on a cyclic grid
  long fourier_worst_n = 0;
  double fourier_min_eig = 0.0;
  bool symmetric = false;
  double symmetry_defect = 0.0;

  bool passed() const {
    return kernel_psd && symmetric && fourier_psd.value_or(false);
  }
};

// Certificates both halves of reflection positivity on finite data: the OS
// kernel on the grid and the DFT coefficients on the N-point subgroup.
RPReport check_reflection_positive(const CircleRPFunction& phi, const RealVector& grid,
                                   int n_fourier = 256, double tol = kDefaultPsdTol);

RPReport check_reflection_positive(const CircleRPFunction& phi, double tol = kDefaultPsdTol);

struct FitOptions {
  double stop_rel_residual = 1e-10;
  int max_iters = 10000;
  double psd_tol = kDefaultPsdTol;
};

struct FitResult {
  AtomicOperatorMeasure mu_plus;
  double residual;      // sqrt(Σⱼ ‖φⱼ - model(tⱼ)‖_F²)
  double rel_residual;
  bool converged;       // false when the iteration budget ran out first
  int iterations;
};

// Least squares fit of PSD weights on a fixed λ-grid: scalar data short-
// circuits to Lawson–Hanson NNLS, matrix data runs projected gradient on the
// PSD cone from an eigenvalue-clipped unconstrained warm start.
FitResult fit_measure(const RealVector& sample_times,
                      const std::vector<ComplexMatrix>& sample_values,
                      const RealVector& lambda_grid, CircleParameter beta,
                      const FitOptions& options = {});

// Lawson–Hanson nonnegative least squares, min ‖Ax - b‖ s.t. x ≥ 0.
RealVector nnls(const RealMatrix& a, const RealVector& b, int max_iters = 0);

}  // namespace rpcirc
