#include "rpcirc/rpfunc.hpp"

#include <algorithm>
#include <cmath>

namespace rpcirc {

namespace {

void validate_samples(const SampleBacked& s, double beta) {
  if (s.grid.size() == 0) throw OutOfRange("SampleBacked: empty grid");
  if (static_cast<std::size_t>(s.grid.size()) != s.values.size())
    throw DimensionMismatch("SampleBacked: grid/value count mismatch");
  const Index d = s.values.front().rows();
  for (Index j = 0; j < s.grid.size(); ++j) {
    const double t = s.grid[j];
    if (!(t >= 0.0 && t <= beta)) throw OutOfRange("SampleBacked: grid point outside [0, beta]");
    if (j > 0 && !(s.grid[j] > s.grid[j - 1]))
      throw OutOfRange("SampleBacked: grid not strictly increasing");
    const ComplexMatrix& v = s.values[static_cast<std::size_t>(j)];
    if (v.rows() != d || v.cols() != d) throw DimensionMismatch("SampleBacked: value size");
    if (hermiticity_defect(v) > 1e-10) throw NonHermitianSample("SampleBacked: value not Hermitian");
  }
}

}  // namespace

CircleRPFunction::CircleRPFunction(CircleParameter beta, MeasureBacked backing)
    : beta_(beta), dim_(backing.mu_plus.dim()), backing_(std::move(backing)) {
  const auto& mu = std::get<MeasureBacked>(backing_).mu_plus;
  if (!mu.is_empty() && mu.atoms().front().lambda < 0.0)
    throw NegativeAtom("CircleRPFunction: measure backing needs atoms at lambda >= 0");
}

CircleRPFunction::CircleRPFunction(CircleParameter beta, GeneratorBacked backing)
    : beta_(beta), dim_(backing.generator.rows()), backing_(std::move(backing)) {
  const auto& a = std::get<GeneratorBacked>(backing_).generator;
  const PsdCertificate cert = psd_certificate(a);
  if (!cert.is_psd)
    throw NotPSD("CircleRPFunction: generator min eigenvalue " + std::to_string(cert.min_eig));
  generator_spec_ = eig_hermitian(a);
}

CircleRPFunction::CircleRPFunction(CircleParameter beta, SampleBacked backing)
    : beta_(beta), dim_(backing.values.empty() ? 0 : backing.values.front().rows()),
      backing_(std::move(backing)) {
  validate_samples(std::get<SampleBacked>(backing_), beta_.beta());
}

CircleRPFunction::Backing CircleRPFunction::backing() const {
  if (std::holds_alternative<MeasureBacked>(backing_)) return Backing::kMeasure;
  if (std::holds_alternative<GeneratorBacked>(backing_)) return Backing::kGenerator;
  return Backing::kSample;
}

const AtomicOperatorMeasure& CircleRPFunction::mu_plus() const {
  if (const auto* m = std::get_if<MeasureBacked>(&backing_)) return m->mu_plus;
  throw WrongBacking("CircleRPFunction: not measure-backed");
}

const ComplexMatrix& CircleRPFunction::generator() const {
  if (const auto* g = std::get_if<GeneratorBacked>(&backing_)) return g->generator;
  throw WrongBacking("CircleRPFunction: not generator-backed");
}

const SpectralDecomposition& CircleRPFunction::generator_spec() const {
  if (!generator_spec_) throw WrongBacking("CircleRPFunction: not generator-backed");
  return *generator_spec_;
}

const SampleBacked& CircleRPFunction::samples() const {
  if (const auto* s = std::get_if<SampleBacked>(&backing_)) return *s;
  throw WrongBacking("CircleRPFunction: not sample-backed");
}

ComplexMatrix eval(const CircleRPFunction& phi, double t) {
  const double beta = phi.beta();
  if (!(t >= 0.0 && t <= beta))
    throw OutOfRange("eval: t = " + std::to_string(t) + " outside [0, " + std::to_string(beta) +
                     "]");
  switch (phi.backing()) {
    case CircleRPFunction::Backing::kMeasure: {
      const auto& mu = phi.mu_plus();
      ComplexMatrix out = ComplexMatrix::Zero(phi.dim(), phi.dim());
      for (const Atom& a : mu.atoms())
        out += (std::exp(-t * a.lambda) + std::exp(-(beta - t) * a.lambda)) * a.weight;
      return out;
    }
    case CircleRPFunction::Backing::kGenerator: {
      const SpectralDecomposition& s = phi.generator_spec();
      return apply_function(s, exp_scaled(t)) + apply_function(s, exp_scaled(beta - t));
    }
    case CircleRPFunction::Backing::kSample: {
      const SampleBacked& s = phi.samples();
      const double tol = 1e-9 * std::max(1.0, beta);
      for (Index j = 0; j < s.grid.size(); ++j)
        if (std::abs(s.grid[j] - t) <= tol) return s.values[static_cast<std::size_t>(j)];
      throw NotOnGrid("eval: t = " + std::to_string(t) + " not on the sample grid");
    }
  }
  throw Error("eval: unreachable");
}

CircleRPFunction basic_flambda(double lambda, CircleParameter beta) {
  if (lambda < 0.0) throw NegativeRate("basic_flambda: lambda must be >= 0");
  return CircleRPFunction(beta, MeasureBacked{AtomicOperatorMeasure::scalar({{lambda, 1.0}})});
}

double flambda_coefficient(double lambda, double beta, long n) {
  if (lambda < 0.0) throw NegativeRate("flambda_coefficient: lambda must be >= 0");
  if (lambda == 0.0) return n == 0 ? 2.0 : 0.0;  // continuity at the 0/0 point
  const double lb = lambda * beta;
  const double pn = 2.0 * M_PI * static_cast<double>(n);
  return 2.0 * beta * lambda * (1.0 - std::exp(-lb)) / (lb * lb + pn * pn);
}

ComplexMatrix fourier_coefficient(const CircleRPFunction& phi, long n) {
  const auto& mu = phi.mu_plus();  // throws WrongBacking otherwise
  ComplexMatrix out = ComplexMatrix::Zero(phi.dim(), phi.dim());
  for (const Atom& a : mu.atoms()) out += flambda_coefficient(a.lambda, phi.beta(), n) * a.weight;
  return out;
}

ComplexMatrix os_kernel(const CircleRPFunction& phi, const RealVector& grid) {
  const double beta = phi.beta();
  const Index m = grid.size();
  if (m == 0) throw GridOutOfRange("os_kernel: empty grid");
  for (Index j = 0; j < m; ++j)
    if (!(grid[j] > 0.0 && grid[j] < beta))
      throw GridOutOfRange("os_kernel: grid point " + std::to_string(grid[j]) +
                           " not strictly inside (0, beta)");
  const Index d = phi.dim();
  ComplexMatrix k(m * d, m * d);
  for (Index j = 0; j < m; ++j) {
    for (Index l = j; l < m; ++l) {
      const ComplexMatrix block = eval(phi, 0.5 * (grid[j] + grid[l]));
      k.block(j * d, l * d, d, d) = block;
      if (l != j) k.block(l * d, j * d, d, d) = block.adjoint();
    }
  }
  return k;
}

RealVector default_verification_grid(double beta, int m) {
  RealVector grid(m);
  for (int j = 1; j <= m; ++j) grid[j - 1] = beta * static_cast<double>(j) / (m + 1);
  return grid;
}

namespace {

// Detect grids of the cyclic form tₖ = kβ/N, k = 0, …, N-1.
bool is_cyclic_grid(const RealVector& grid, double beta) {
  const Index n = grid.size();
  if (n < 2) return false;
  const double step = beta / static_cast<double>(n);
  for (Index k = 0; k < n; ++k)
    if (std::abs(grid[k] - step * static_cast<double>(k)) > 1e-9 * std::max(1.0, beta))
      return false;
  return true;
}

}  // namespace

RPReport check_reflection_positive(const CircleRPFunction& phi, const RealVector& grid,
                                   int n_fourier, double tol) {
  RPReport report;

  const PsdCertificate kernel = psd_certificate(os_kernel(phi, grid), tol);
  report.kernel_psd = kernel.is_psd;
  report.kernel_min_eig = kernel.min_eig;

  // symmetry φ(β - t) = φ(t)
  double defect = 0.0;
  bool symmetric_checkable = true;
  if (phi.backing() == CircleRPFunction::Backing::kSample) {
    const SampleBacked& s = phi.samples();
    const double match_tol = 1e-9 * std::max(1.0, phi.beta());
    bool any_pair = false;
    for (Index j = 0; j < s.grid.size(); ++j) {
      const double mirrored = phi.beta() - s.grid[j];
      for (Index l = 0; l < s.grid.size(); ++l) {
        if (std::abs(s.grid[l] - mirrored) <= match_tol) {
          any_pair = true;
          defect = std::max(defect, (s.values[static_cast<std::size_t>(j)] -
                                     s.values[static_cast<std::size_t>(l)])
                                        .norm());
        }
      }
    }
    symmetric_checkable = any_pair;
  } else {
    for (Index j = 0; j < grid.size(); ++j)
      defect = std::max(defect, (eval(phi, grid[j]) - eval(phi, phi.beta() - grid[j])).norm());
  }
  double sym_scale = 1.0;
  if (grid.size() > 0) sym_scale = std::max(1.0, eval(phi, grid[0]).norm());
  report.symmetry_defect = defect;
  report.symmetric = symmetric_checkable && defect <= 1e-12 * sym_scale * 10.0;

  // positive definiteness on the N-point subgroup
  std::vector<ComplexMatrix> samples;
  bool have_samples = false;
  if (phi.backing() == CircleRPFunction::Backing::kSample) {
    const SampleBacked& s = phi.samples();
    if (is_cyclic_grid(s.grid, phi.beta())) {
      samples = s.values;
      have_samples = true;
    }
  } else {
    const int n = std::max(2, n_fourier);
    samples.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      samples.push_back(eval(phi, phi.beta() * static_cast<double>(k) / n));
    have_samples = true;
  }
  if (have_samples) {
    const std::vector<ComplexMatrix> coeffs = bochner_coefficients(samples);
    bool all_psd = true;
    double worst = 0.0;
    long worst_n = 0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      const PsdCertificate c = psd_certificate(hermitize(coeffs[m]), tol);
      if (c.min_eig < worst) {
        worst = c.min_eig;
        worst_n = static_cast<long>(m);
      }
      all_psd = all_psd && c.is_psd;
    }
    report.fourier_psd = all_psd;
    report.fourier_min_eig = worst;
    report.fourier_worst_n = worst_n;
  }
  return report;
}

RPReport check_reflection_positive(const CircleRPFunction& phi, double tol) {
  return check_reflection_positive(phi, default_verification_grid(phi.beta()), 256, tol);
}

RealVector nnls(const RealMatrix& a, const RealVector& b, int max_iters) {
  const Index n = a.cols();
  if (max_iters <= 0) max_iters = static_cast<int>(3 * n) + 30;
  RealVector x = RealVector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  RealVector w = a.transpose() * (b - a * x);
  const double tol = 1e-12 * std::max(1.0, a.norm() * b.norm());

  for (int outer = 0; outer < max_iters; ++outer) {
    // most violated zero-constrained coordinate
    Index best = -1;
    double best_w = tol;
    for (Index i = 0; i < n; ++i)
      if (!passive[static_cast<std::size_t>(i)] && w[i] > best_w) {
        best_w = w[i];
        best = i;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    for (int inner = 0; inner < max_iters; ++inner) {
      std::vector<Index> idx;
      for (Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
      RealMatrix ap(a.rows(), static_cast<Index>(idx.size()));
      for (std::size_t c = 0; c < idx.size(); ++c) ap.col(static_cast<Index>(c)) = a.col(idx[c]);
      const RealVector zp = ap.colPivHouseholderQr().solve(b);

      bool feasible = true;
      for (Index c = 0; c < zp.size(); ++c)
        if (zp[c] <= 0.0) feasible = false;
      if (feasible) {
        x.setZero();
        for (std::size_t c = 0; c < idx.size(); ++c) x[idx[c]] = zp[static_cast<Index>(c)];
        break;
      }
      // step back to the feasibility boundary and drop tight coordinates
      double alpha = 1.0;
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const double z = zp[static_cast<Index>(c)];
        if (z <= 0.0) {
          const double xc = x[idx[c]];
          if (xc - z > 0.0) alpha = std::min(alpha, xc / (xc - z));
        }
      }
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const double z = zp[static_cast<Index>(c)];
        x[idx[c]] += alpha * (z - x[idx[c]]);
        if (x[idx[c]] <= tol) {
          x[idx[c]] = 0.0;
          passive[static_cast<std::size_t>(idx[c])] = false;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return x;
}

namespace {

ComplexMatrix clip_to_psd(const ComplexMatrix& w) {
  const SpectralDecomposition s = eig_hermitian(hermitize(w));
  RealVector clipped = s.eigenvalues.cwiseMax(0.0);
  return s.eigenvectors * clipped.asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace

FitResult fit_measure(const RealVector& sample_times,
                      const std::vector<ComplexMatrix>& sample_values,
                      const RealVector& lambda_grid, CircleParameter beta,
                      const FitOptions& options) {
  const Index m = sample_times.size();
  if (m < 2) throw OutOfRange("fit_measure: need at least 2 samples");
  if (static_cast<std::size_t>(m) != sample_values.size())
    throw DimensionMismatch("fit_measure: time/value count mismatch");
  const Index nl = lambda_grid.size();
  if (nl == 0) throw OutOfRange("fit_measure: empty lambda grid");
  const Index d = sample_values.front().rows();
  const double b = beta.beta();
  for (Index j = 0; j < m; ++j) {
    if (!(sample_times[j] >= 0.0 && sample_times[j] <= b))
      throw OutOfRange("fit_measure: sample time outside [0, beta]");
    if (sample_values[static_cast<std::size_t>(j)].rows() != d ||
        sample_values[static_cast<std::size_t>(j)].cols() != d)
      throw DimensionMismatch("fit_measure: sample value size mismatch");
  }
  for (Index l = 0; l < nl; ++l)
    if (lambda_grid[l] < 0.0) throw NegativeRate("fit_measure: lambda grid must be >= 0");

  // design matrix g_l(t_j) = e^{-t_j λ_l} + e^{-(β - t_j) λ_l}
  RealMatrix design(m, nl);
  for (Index j = 0; j < m; ++j)
    for (Index l = 0; l < nl; ++l)
      design(j, l) =
          std::exp(-sample_times[j] * lambda_grid[l]) + std::exp(-(b - sample_times[j]) * lambda_grid[l]);

  double data_norm_sq = 0.0;
  for (const ComplexMatrix& v : sample_values) data_norm_sq += v.squaredNorm();
  const double data_norm = std::sqrt(data_norm_sq);

  std::vector<ComplexMatrix> weights(static_cast<std::size_t>(nl));

  auto residual_of = [&](const std::vector<ComplexMatrix>& w) {
    double acc = 0.0;
    for (Index j = 0; j < m; ++j) {
      ComplexMatrix model = ComplexMatrix::Zero(d, d);
      for (Index l = 0; l < nl; ++l) model += design(j, l) * w[static_cast<std::size_t>(l)];
      acc += (sample_values[static_cast<std::size_t>(j)] - model).squaredNorm();
    }
    return std::sqrt(acc);
  };

  int iterations = 0;
  bool converged = true;
  if (d == 1) {
    // scalar case: classical NNLS on the real parts
    RealVector rhs(m);
    for (Index j = 0; j < m; ++j) rhs[j] = sample_values[static_cast<std::size_t>(j)](0, 0).real();
    const RealVector x = nnls(design, rhs);
    for (Index l = 0; l < nl; ++l) {
      ComplexMatrix w(1, 1);
      w(0, 0) = x[l];
      weights[static_cast<std::size_t>(l)] = w;
    }
  } else {
    // unconstrained least squares warm start, projected onto the PSD cone;
    // two rounds of iterative refinement keep the residual near roundoff on
    // ill-conditioned designs
    const Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
    auto refined_solve = [&](const RealVector& rhs) {
      RealVector x = qr.solve(rhs);
      for (int round = 0; round < 2; ++round) x += qr.solve(rhs - design * x);
      return x;
    };
    std::vector<ComplexMatrix> w0(static_cast<std::size_t>(nl), ComplexMatrix::Zero(d, d));
    for (Index r = 0; r < d; ++r) {
      for (Index c = 0; c < d; ++c) {
        ComplexVector rhs(m);
        for (Index j = 0; j < m; ++j) rhs[j] = sample_values[static_cast<std::size_t>(j)](r, c);
        const ComplexVector sol = refined_solve(rhs.real()).cast<Complex>() +
                                  Complex(0.0, 1.0) * refined_solve(rhs.imag()).cast<Complex>();
        for (Index l = 0; l < nl; ++l) w0[static_cast<std::size_t>(l)](r, c) = sol[l];
      }
    }
    for (Index l = 0; l < nl; ++l)
      weights[static_cast<std::size_t>(l)] = clip_to_psd(w0[static_cast<std::size_t>(l)]);

    // projected gradient, step 1/λ_max of the design Gram
    const RealMatrix gram = design.transpose() * design;
    const double lip = std::max(eig_hermitian(gram.cast<Complex>()).eigenvalues.maxCoeff(), 1e-30);
    const double step = 1.0 / lip;

    std::vector<ComplexMatrix> target(static_cast<std::size_t>(nl), ComplexMatrix::Zero(d, d));
    for (Index l = 0; l < nl; ++l)
      for (Index j = 0; j < m; ++j)
        target[static_cast<std::size_t>(l)] += design(j, l) * sample_values[static_cast<std::size_t>(j)];

    double res = residual_of(weights);
    const double target_res = options.stop_rel_residual * std::max(data_norm, 1e-300);
    for (; iterations < options.max_iters; ++iterations) {
      if (res <= target_res) break;
      for (Index l = 0; l < nl; ++l) {
        ComplexMatrix grad = -target[static_cast<std::size_t>(l)];
        for (Index k = 0; k < nl; ++k) grad += gram(l, k) * weights[static_cast<std::size_t>(k)];
        weights[static_cast<std::size_t>(l)] =
            clip_to_psd(weights[static_cast<std::size_t>(l)] - step * grad);
      }
      res = residual_of(weights);
    }
    converged = res <= target_res;

    // debias: re-solve on the detected support, where the design is far
    // better conditioned; adopt only when the residual strictly improves
    {
      double top = 0.0;
      for (const ComplexMatrix& w : weights) top = std::max(top, w.norm());
      std::vector<Index> support;
      for (Index l = 0; l < nl; ++l)
        if (weights[static_cast<std::size_t>(l)].norm() > 1e-6 * top) support.push_back(l);
      if (!support.empty() && static_cast<Index>(support.size()) < nl) {
        RealMatrix sub(m, static_cast<Index>(support.size()));
        for (std::size_t s = 0; s < support.size(); ++s)
          sub.col(static_cast<Index>(s)) = design.col(support[s]);
        const Eigen::ColPivHouseholderQR<RealMatrix> sub_qr(sub);
        auto sub_solve = [&](const RealVector& rhs) {
          RealVector x = sub_qr.solve(rhs);
          for (int round = 0; round < 2; ++round) x += sub_qr.solve(rhs - sub * x);
          return x;
        };
        std::vector<ComplexMatrix> candidate(static_cast<std::size_t>(nl),
                                             ComplexMatrix::Zero(d, d));
        for (Index r = 0; r < d; ++r) {
          for (Index col = 0; col < d; ++col) {
            ComplexVector rhs(m);
            for (Index j = 0; j < m; ++j)
              rhs[j] = sample_values[static_cast<std::size_t>(j)](r, col);
            const ComplexVector sol =
                sub_solve(rhs.real()).cast<Complex>() +
                Complex(0.0, 1.0) * sub_solve(rhs.imag()).cast<Complex>();
            for (std::size_t s = 0; s < support.size(); ++s)
              candidate[static_cast<std::size_t>(support[s])](r, col) =
                  sol[static_cast<Index>(s)];
          }
        }
        for (ComplexMatrix& w : candidate) w = clip_to_psd(w);
        const double candidate_res = residual_of(candidate);
        if (candidate_res < res) {
          weights = std::move(candidate);
          res = candidate_res;
          converged = res <= target_res;
        }
      }
    }
  }

  std::vector<Atom> atoms;
  for (Index l = 0; l < nl; ++l) {
    const ComplexMatrix w = clip_to_psd(weights[static_cast<std::size_t>(l)]);
    if (w.norm() > 0.0) atoms.push_back(Atom{lambda_grid[l], w});
  }
  const double residual = residual_of(weights);
  return FitResult{AtomicOperatorMeasure(d, std::move(atoms), options.psd_tol), residual,
                   residual / std::max(data_norm, 1e-300), converged, iterations};
}

}  // namespace rpcirc
