#include "rpcirc/realization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rpcirc {

OneParameterGroup::OneParameterGroup(ComplexMatrix generator)
    : generator_(std::move(generator)), spec_(eig_hermitian(generator_)) {}

ComplexMatrix OneParameterGroup::at(double t) const {
  return apply_function(spec_, exp_it(t));
}

ComplexMatrix OneParameterGroup::semigroup(double t) const {
  return apply_function(spec_, exp_scaled(t));
}

namespace {

struct Cluster {
  double lambda = 0.0;           // mean location
  std::vector<Index> indices;    // eigenvector columns
};

std::vector<Cluster> cluster_spectrum(const SpectralDecomposition& s, double tol) {
  std::vector<Cluster> clusters;
  const double scale = std::max(1.0, s.spectral_norm());
  const double gap = tol * scale;
  for (Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (clusters.empty() || s.eigenvalues[i] - s.eigenvalues[clusters.back().indices.back()] > gap) {
      clusters.push_back(Cluster{s.eigenvalues[i], {i}});
    } else {
      clusters.back().indices.push_back(i);
    }
  }
  for (Cluster& c : clusters) {
    double sum = 0.0;
    for (Index i : c.indices) sum += s.eigenvalues[i];
    c.lambda = sum / static_cast<double>(c.indices.size());
  }
  return clusters;
}

struct Pairing {
  std::vector<Cluster> clusters;
  std::vector<Index> zero;                              // indices in the zero cluster
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (positive, negative) cluster ids
  bool exists = false;
};

Pairing pair_spectrum(const SpectralDecomposition& s, double tol) {
  Pairing p;
  p.clusters = cluster_spectrum(s, tol);
  const double scale = std::max(1.0, s.spectral_norm());
  const double match = tol * scale;

  std::vector<bool> used(p.clusters.size(), false);
  bool ok = true;
  for (std::size_t i = 0; i < p.clusters.size(); ++i) {
    const Cluster& c = p.clusters[i];
    if (std::abs(c.lambda) <= match) {
      for (Index idx : c.indices) p.zero.push_back(idx);
      used[i] = true;
      continue;
    }
    if (c.lambda < 0.0 || used[i]) continue;
    bool found = false;
    for (std::size_t j = 0; j < p.clusters.size(); ++j) {
      if (used[j] || i == j) continue;
      if (std::abs(p.clusters[j].lambda + c.lambda) <= match) {
        if (p.clusters[j].indices.size() == c.indices.size()) {
          p.pairs.emplace_back(i, j);
          used[i] = used[j] = true;
          found = true;
        }
        break;
      }
    }
    if (!found) ok = false;
  }
  for (std::size_t i = 0; i < p.clusters.size(); ++i)
    if (!used[i]) ok = false;
  p.exists = ok;
  return p;
}

}  // namespace

std::string PairingReport::table() const {
  std::ostringstream out;
  out << "lambda    mult(+)  mult(-)\n";
  for (const ClusterMatch& c : clusters)
    out << c.lambda << "  " << c.mult_pos << "  " << c.mult_neg
        << (c.mult_pos == c.mult_neg ? "" : "  <- mismatch") << "\n";
  if (zero_multiplicity > 0) out << "0 (fixed)  " << zero_multiplicity << "\n";
  return out.str();
}

PairingReport check_J_existence(const ComplexMatrix& h, double cluster_tol) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Pairing p = pair_spectrum(s, cluster_tol);

  PairingReport report;
  report.exists = p.exists;
  report.zero_multiplicity = static_cast<int>(p.zero.size());
  const double scale = std::max(1.0, s.spectral_norm());
  for (std::size_t i = 0; i < p.clusters.size(); ++i) {
    const Cluster& c = p.clusters[i];
    if (c.lambda <= cluster_tol * scale) continue;  // report positive side only
    ClusterMatch m;
    m.lambda = c.lambda;
    m.mult_pos = static_cast<int>(c.indices.size());
    m.mult_neg = 0;
    for (const Cluster& other : p.clusters)
      if (std::abs(other.lambda + c.lambda) <= cluster_tol * scale)
        m.mult_neg = static_cast<int>(other.indices.size());
    report.clusters.push_back(m);
  }
  // negative clusters with no positive partner
  for (const Cluster& c : p.clusters) {
    if (c.lambda >= -cluster_tol * scale) continue;
    bool matched = false;
    for (const ClusterMatch& m : report.clusters)
      if (std::abs(m.lambda + c.lambda) <= cluster_tol * scale) matched = true;
    if (!matched)
      report.clusters.push_back(
          ClusterMatch{-c.lambda, 0, static_cast<int>(c.indices.size())});
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const ClusterMatch& a, const ClusterMatch& b) { return a.lambda < b.lambda; });
  return report;
}

namespace {

// Permutation on eigenvector columns swapping each positive cluster with its
// negative partner, identity on the zero cluster.
ComplexMatrix pairing_permutation(const SpectralDecomposition& s, const Pairing& p) {
  const Index n = s.eigenvalues.size();
  ComplexMatrix perm = ComplexMatrix::Zero(n, n);
  for (Index idx : p.zero) perm(idx, idx) = 1.0;
  for (const auto& [pos, neg] : p.pairs) {
    const Cluster& cp = p.clusters[pos];
    const Cluster& cn = p.clusters[neg];
    for (std::size_t k = 0; k < cp.indices.size(); ++k) {
      perm(cn.indices[k], cp.indices[k]) = 1.0;
      perm(cp.indices[k], cn.indices[k]) = 1.0;
    }
  }
  return perm;
}

}  // namespace

AntiUnitaryMap construct_J(const ComplexMatrix& h, double cluster_tol) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Pairing p = pair_spectrum(s, cluster_tol);
  if (!p.exists)
    throw NoSuchJ("construct_J: spectrum is not negation-symmetric\n" +
                  check_J_existence(h, cluster_tol).table());
  const ComplexMatrix perm = pairing_permutation(s, p);
  // J v = U P conj(U* v) = (U P U^T) conj(v)
  return AntiUnitaryMap(s.eigenvectors * perm * s.eigenvectors.transpose());
}

ComplexMatrix construct_R(const ComplexMatrix& h, double cluster_tol) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Pairing p = pair_spectrum(s, cluster_tol);
  if (!p.exists)
    throw NoSuchR("construct_R: spectrum is not negation-symmetric\n" +
                  check_J_existence(h, cluster_tol).table());
  const ComplexMatrix perm = pairing_permutation(s, p);
  return s.eigenvectors * perm * s.eigenvectors.adjoint();
}

RealizationBundle euclidean_realize(const ComplexMatrix& h, CircleParameter beta,
                                    double cluster_tol) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Pairing p = pair_spectrum(s, cluster_tol);
  if (!p.zero.empty())
    throw ZeroMode("euclidean_realize: eigenvalue 0 has multiplicity " +
                   std::to_string(p.zero.size()));
  if (!p.exists)
    throw AsymmetricSpectrum("euclidean_realize: spectrum is not negation-symmetric\n" +
                             check_J_existence(h, cluster_tol).table());

  // split H = A ⊕ (-A): stack the positive clusters
  std::vector<Index> pos_idx, neg_idx;
  std::vector<double> a_eigs;
  for (const auto& [pos, neg] : p.pairs) {
    const Cluster& cp = p.clusters[pos];
    const Cluster& cn = p.clusters[neg];
    for (std::size_t k = 0; k < cp.indices.size(); ++k) {
      pos_idx.push_back(cp.indices[k]);
      neg_idx.push_back(cn.indices[k]);
      a_eigs.push_back(s.eigenvalues[cp.indices[k]]);
    }
  }
  const Index half = static_cast<Index>(pos_idx.size());
  ComplexMatrix u_pos(h.rows(), half), u_neg(h.rows(), half);
  RealVector a(half);
  for (Index k = 0; k < half; ++k) {
    u_pos.col(k) = s.eigenvectors.col(pos_idx[static_cast<std::size_t>(k)]);
    u_neg.col(k) = s.eigenvectors.col(neg_idx[static_cast<std::size_t>(k)]);
    a[k] = a_eigs[static_cast<std::size_t>(k)];
  }

  // j(v) = (v, e^{-βA/2} v) in the split coordinates
  RealVector half_decay(half);
  for (Index k = 0; k < half; ++k) half_decay[k] = std::exp(-0.5 * beta.beta() * a[k]);
  const ComplexMatrix embedding = u_pos + u_neg * half_decay.asDiagonal();

  const ComplexMatrix generator = a.cast<Complex>().asDiagonal();
  CircleRPFunction phi(beta, GeneratorBacked{generator});

  return RealizationBundle{std::move(phi), embedding, construct_J(h, cluster_tol),
                           construct_R(h, cluster_tol), h, beta.beta()};
}

double dilation_check(const RealizationBundle& bundle, const RealVector& t_grid) {
  const SpectralDecomposition s = eig_hermitian(bundle.hamiltonian);
  double worst = 0.0;
  for (Index i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const ComplexMatrix dilated =
        bundle.embedding.adjoint() * apply_function(s, exp_scaled(t)) * bundle.embedding;
    worst = std::max(worst, (eval(bundle.phi, t) - dilated).norm());
  }
  return worst;
}

AtomicOperatorMeasure measure_of(const CircleRPFunction& phi, double cluster_tol) {
  switch (phi.backing()) {
    case CircleRPFunction::Backing::kMeasure:
      return phi.mu_plus();
    case CircleRPFunction::Backing::kGenerator: {
      const SpectralDecomposition& s = phi.generator_spec();
      const std::vector<Cluster> clusters = cluster_spectrum(s, cluster_tol);
      std::vector<Atom> atoms;
      for (const Cluster& c : clusters) {
        ComplexMatrix proj = ComplexMatrix::Zero(phi.dim(), phi.dim());
        for (Index i : c.indices)
          proj += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
        atoms.push_back(Atom{c.lambda, proj});
      }
      return AtomicOperatorMeasure(phi.dim(), std::move(atoms));
    }
    case CircleRPFunction::Backing::kSample:
      throw WrongBacking("measure_of: sample-backed function has no stored measure");
  }
  throw Error("measure_of: unreachable");
}

DualModel reconstruct_dual(const CircleRPFunction& phi, double cluster_tol) {
  const double beta = phi.beta();
  const AtomicOperatorMeasure mu_plus = measure_of(phi, cluster_tol);
  const AtomicOperatorMeasure mu = symmetrize_from_plus(mu_plus, phi.circle());
  const Index d = phi.dim();

  // factor each weight W = R* R with R of full row rank; the coordinates of a
  // function value ξ at the atom are R ξ.  Blocks at ±λ are built coherently
  // from the same factor so that the flip maps are exact.
  struct Block {
    double lambda;
    ComplexMatrix coords;  // rank × d
  };
  std::vector<Block> blocks;
  double loc_scale = 0.0;
  for (const Atom& a : mu.atoms()) loc_scale = std::max(loc_scale, std::abs(a.lambda));
  const double loc_tol = 100.0 * AtomicOperatorMeasure::location_tolerance(loc_scale);

  for (const Atom& a : mu.atoms()) {
    if (a.lambda < -loc_tol) continue;  // negative side handled with its partner
    const QuotientModel q = gram_quotient(a.weight);
    if (q.rank == 0) continue;
    if (std::abs(a.lambda) <= loc_tol) {
      blocks.push_back(Block{0.0, q.factor});
    } else {
      blocks.push_back(Block{a.lambda, q.factor});
      blocks.push_back(Block{-a.lambda, std::exp(-0.5 * beta * a.lambda) * q.factor});
    }
  }

  Index total = 0;
  for (const Block& b : blocks) total += b.coords.rows();

  DualModel model{ComplexMatrix::Zero(total, total), ComplexMatrix::Zero(total, d),
                  ComplexMatrix::Zero(total, total), ComplexMatrix::Zero(total, total),
                  mu, beta, total, d};

  // offsets per block
  std::vector<Index> offset(blocks.size());
  Index at = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    offset[i] = at;
    at += blocks[i].coords.rows();
  }

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const Index r = b.coords.rows();
    model.generator.block(offset[i], offset[i], r, r) =
        b.lambda * ComplexMatrix::Identity(r, r);
    model.embedding.block(offset[i], 0, r, d) = b.coords;
  }

  // J swaps the paired ±λ blocks (identity on λ = 0); R = e^{βH/2} J
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const Index r = b.coords.rows();
    if (b.lambda == 0.0) {
      model.j_model.block(offset[i], offset[i], r, r) = ComplexMatrix::Identity(r, r);
      model.r_model.block(offset[i], offset[i], r, r) = ComplexMatrix::Identity(r, r);
      continue;
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (std::abs(blocks[j].lambda + b.lambda) <= loc_tol && blocks[j].coords.rows() == r) {
        model.j_model.block(offset[i], offset[j], r, r) = ComplexMatrix::Identity(r, r);
        model.r_model.block(offset[i], offset[j], r, r) =
            std::exp(0.5 * beta * b.lambda) * ComplexMatrix::Identity(r, r);
        break;
      }
    }
  }
  return model;
}

double dual_model_defect(const DualModel& model, const RealVector& t_grid) {
  const OneParameterGroup group = model.group();
  double worst = 0.0;
  for (Index i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const ComplexMatrix lhs =
        model.embedding.adjoint() * group.at(t) * model.embedding;  // entry (w,v)
    const ComplexMatrix rhs = fourier(model.mu, t);  // φ(-it) = Σ e^{itλ} W
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

double tilde_embedding_check(const CircleRPFunction& phi, const RealVector& t_grid) {
  const DualModel model = reconstruct_dual(phi);
  const OneParameterGroup group = model.group();
  // ĵ(v) = e^{-βλ/4} v blockwise
  const SpectralDecomposition gen_spec = eig_hermitian(model.generator);
  const ComplexMatrix damp = apply_function(gen_spec, exp_scaled(0.25 * model.beta));
  const ComplexMatrix jt = damp * model.embedding;

  double worst = 0.0;
  for (Index i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const ComplexMatrix lhs = jt.adjoint() * group.at(t) * jt;
    // ψ(t) = φ(β/2 - it) = ∫ e^{-(β/2 - it)λ} dμ
    const ComplexMatrix psi_t = laplace(model.mu, Complex(0.5 * model.beta, -t));
    const ComplexMatrix psi_mt = laplace(model.mu, Complex(0.5 * model.beta, t));
    worst = std::max(worst, (lhs - psi_t).norm());
    worst = std::max(worst, (psi_t - psi_mt.adjoint()).norm());  // ψ(t) = ψ(-t)*
  }
  return worst;
}

LineCaseReport line_case_check(const ComplexMatrix& h, const RealVector& t_grid, double tol) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Index m = t_grid.size();
  const Index d = h.rows();
  for (Index i = 0; i < m; ++i)
    if (!(t_grid[i] > 0.0)) throw GridOutOfRange("line_case_check: grid must be positive");

  auto phi_at = [&](double t) { return apply_function(s, exp_scaled(std::abs(t))); };

  ComplexMatrix invariance(m * d, m * d), reflection(m * d, m * d);
  for (Index j = 0; j < m; ++j) {
    for (Index k = 0; k < m; ++k) {
      invariance.block(j * d, k * d, d, d) = phi_at(t_grid[j] - t_grid[k]);
      reflection.block(j * d, k * d, d, d) = phi_at(t_grid[j] + t_grid[k]);
    }
  }
  LineCaseReport report;
  const PsdCertificate inv = psd_certificate(hermitize(invariance), tol);
  const PsdCertificate ref = psd_certificate(hermitize(reflection), tol);
  report.invariance_psd = inv.is_psd;
  report.invariance_min_eig = inv.min_eig;
  report.reflection_psd = ref.is_psd;
  report.reflection_min_eig = ref.min_eig;
  return report;
}

}  // namespace rpcirc
