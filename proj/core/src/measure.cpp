#include "rpcirc/measure.hpp"

#include <algorithm>
#include <cmath>

namespace rpcirc {

CircleParameter::CircleParameter(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw OutOfRange("CircleParameter: beta must be positive, got " + std::to_string(beta));
}

double AtomicOperatorMeasure::location_tolerance(double lambda_scale) {
  return 1e-12 * std::max(1.0, lambda_scale);
}

AtomicOperatorMeasure::AtomicOperatorMeasure(Index dim, std::vector<Atom> atoms, double psd_tol)
    : dim_(dim) {
  if (dim <= 0) throw DimensionMismatch("AtomicOperatorMeasure: dim must be positive");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.lambda)) throw NonFinite("AtomicOperatorMeasure: non-finite location");
    if (a.weight.rows() != dim || a.weight.cols() != dim)
      throw DimensionMismatch("AtomicOperatorMeasure: weight size mismatch");
    if (!psd_certificate(a.weight, psd_tol).is_psd)
      throw NotPSD("AtomicOperatorMeasure: weight at lambda = " + std::to_string(a.lambda));
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.lambda < b.lambda; });

  double scale = 0.0;
  for (const Atom& a : atoms) scale = std::max(scale, std::abs(a.lambda));
  const double loc_tol = location_tolerance(scale);

  for (Atom& a : atoms) {
    if (!atoms_.empty() && a.lambda - atoms_.back().lambda <= loc_tol) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  // drop zero weights, re-hermitize accumulated sums
  std::vector<Atom> kept;
  kept.reserve(atoms_.size());
  for (Atom& a : atoms_) {
    if (a.weight.norm() > 0.0) {
      a.weight = hermitize(a.weight);
      kept.push_back(std::move(a));
    }
  }
  atoms_ = std::move(kept);
}

AtomicOperatorMeasure AtomicOperatorMeasure::scalar(
    const std::vector<std::pair<double, double>>& atoms) {
  std::vector<Atom> list;
  list.reserve(atoms.size());
  for (const auto& [lambda, w] : atoms) {
    ComplexMatrix m(1, 1);
    m(0, 0) = w;
    list.push_back(Atom{lambda, m});
  }
  return AtomicOperatorMeasure(1, std::move(list));
}

AtomicOperatorMeasure AtomicOperatorMeasure::empty(Index dim) {
  return AtomicOperatorMeasure(dim, {});
}

ComplexMatrix laplace(const AtomicOperatorMeasure& mu, double t) {
  ComplexMatrix out = ComplexMatrix::Zero(mu.dim(), mu.dim());
  for (const Atom& a : mu.atoms()) out += std::exp(-t * a.lambda) * a.weight;
  return out;
}

ComplexMatrix laplace(const AtomicOperatorMeasure& mu, Complex z) {
  ComplexMatrix out = ComplexMatrix::Zero(mu.dim(), mu.dim());
  for (const Atom& a : mu.atoms()) out += std::exp(-z * a.lambda) * a.weight;
  return out;
}

ComplexMatrix fourier(const AtomicOperatorMeasure& mu, Complex z) {
  ComplexMatrix out = ComplexMatrix::Zero(mu.dim(), mu.dim());
  for (const Atom& a : mu.atoms()) out += std::exp(Complex(0.0, 1.0) * z * a.lambda) * a.weight;
  return out;
}

bool fourier_in_strip(Complex z, double beta) {
  return z.imag() >= 0.0 && z.imag() <= beta;
}

FourierValue fourier_checked(const AtomicOperatorMeasure& mu, Complex z, CircleParameter beta) {
  return FourierValue{fourier(mu, z), fourier_in_strip(z, beta.beta())};
}

AtomicOperatorMeasure symmetrize_from_plus(const AtomicOperatorMeasure& mu_plus,
                                           CircleParameter beta) {
  std::vector<Atom> out;
  out.reserve(2 * mu_plus.size());
  double scale = 0.0;
  for (const Atom& a : mu_plus.atoms()) scale = std::max(scale, std::abs(a.lambda));
  const double loc_tol = AtomicOperatorMeasure::location_tolerance(scale);

  for (const Atom& a : mu_plus.atoms()) {
    if (a.lambda < -loc_tol)
      throw NegativeAtom("symmetrize_from_plus: atom at lambda = " + std::to_string(a.lambda));
    out.push_back(a);
    out.push_back(Atom{-a.lambda, std::exp(-beta.beta() * a.lambda) * a.weight});
  }
  return AtomicOperatorMeasure(mu_plus.dim(), std::move(out));
}

bool check_reflection_relation(const AtomicOperatorMeasure& mu, CircleParameter beta,
                               double tol) {
  double scale = 0.0;
  for (const Atom& a : mu.atoms()) scale = std::max(scale, std::abs(a.lambda));
  const double loc_tol = 100.0 * AtomicOperatorMeasure::location_tolerance(scale);

  for (const Atom& a : mu.atoms()) {
    const Atom* mirror = nullptr;
    for (const Atom& b : mu.atoms()) {
      if (std::abs(b.lambda + a.lambda) <= loc_tol) {
        mirror = &b;
        break;
      }
    }
    const ComplexMatrix expected = std::exp(-beta.beta() * a.lambda) * a.weight;
    if (mirror == nullptr) return false;
    if ((mirror->weight - expected).norm() > tol * std::max(1e-300, a.weight.norm())) return false;
  }
  return true;
}

ComplexMatrix total_mass(const AtomicOperatorMeasure& mu) {
  ComplexMatrix out = ComplexMatrix::Zero(mu.dim(), mu.dim());
  for (const Atom& a : mu.atoms()) out += a.weight;
  return out;
}

ComplexMatrix rescaled_mass(const AtomicOperatorMeasure& mu, CircleParameter beta) {
  return laplace(mu, beta.beta());
}

std::vector<ComplexMatrix> bochner_coefficients(const std::vector<ComplexMatrix>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw OutOfRange("bochner_coefficients: need at least 2 samples");
  const Index d = samples.front().rows();
  for (const ComplexMatrix& s : samples) {
    if (s.rows() != d || s.cols() != d)
      throw DimensionMismatch("bochner_coefficients: sample size mismatch");
    if (hermiticity_defect(s) > 1e-10)
      throw NonHermitianSample("bochner_coefficients: sample not Hermitian");
  }
  std::vector<ComplexMatrix> coeffs(n, ComplexMatrix::Zero(d, d));
  const double w = 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex phase = std::exp(Complex(0.0, -w * static_cast<double>(m * k % n)));
      coeffs[m] += phase * samples[k];
    }
    coeffs[m] /= static_cast<double>(n);
  }
  return coeffs;
}

std::vector<ComplexMatrix> bochner_inverse(const std::vector<ComplexMatrix>& coefficients) {
  const std::size_t n = coefficients.size();
  if (n == 0) return {};
  const Index d = coefficients.front().rows();
  std::vector<ComplexMatrix> samples(n, ComplexMatrix::Zero(d, d));
  const double w = 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m)
      samples[k] += std::exp(Complex(0.0, w * static_cast<double>(m * k % n))) * coefficients[m];
  return samples;
}

}  // namespace rpcirc
