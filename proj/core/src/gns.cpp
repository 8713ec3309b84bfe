#include "rpcirc/gns.hpp"

#include <cmath>

namespace rpcirc {

SesqForm::SesqForm(ComplexMatrix f) : f_(std::move(f)) {
  if (f_.rows() != f_.cols()) throw DimensionMismatch("SesqForm: matrix not square");
  if (!is_finite(f_)) throw NonFinite("SesqForm: NaN or Inf entry");
}

Complex SesqForm::operator()(const ComplexVector& v, const ComplexVector& w) const {
  if (v.size() != dim() || w.size() != dim()) throw DimensionMismatch("SesqForm: argument size");
  return w.adjoint() * f_ * v;
}

bool SesqForm::is_hermitian(double tol) const {
  return hermiticity_defect(f_) <= tol;
}

SesqForm SesqForm::adjoint() const {
  return SesqForm(f_.adjoint());
}

CyclicSesqFunction::CyclicSesqFunction(std::vector<ComplexMatrix> values, double psd_tol)
    : values_(std::move(values)) {
  if (values_.size() < 1) throw OutOfRange("CyclicSesqFunction: empty value list");
  const Index d = values_.front().rows();
  for (const ComplexMatrix& v : values_)
    if (v.rows() != d || v.cols() != d)
      throw DimensionMismatch("CyclicSesqFunction: value size mismatch");
  const PsdCertificate cert = psd_certificate(hermitize(block_kernel()), psd_tol);
  const double kernel_defect = hermiticity_defect(block_kernel());
  if (kernel_defect > 1e-8)
    throw NotPSD("CyclicSesqFunction: kernel not Hermitian, defect " +
                 std::to_string(kernel_defect));
  if (!cert.is_psd)
    throw NotPSD("CyclicSesqFunction: kernel min eigenvalue " + std::to_string(cert.min_eig));
}

const ComplexMatrix& CyclicSesqFunction::value(long k) const {
  const long n = order();
  long r = k % n;
  if (r < 0) r += n;
  return values_[static_cast<std::size_t>(r)];
}

ComplexMatrix CyclicSesqFunction::block_kernel() const {
  const long n = order();
  const Index d = dim();
  ComplexMatrix kernel(n * d, n * d);
  for (long g = 0; g < n; ++g)
    for (long h = 0; h < n; ++h)
      kernel.block(g * d, h * d, d, d) = value(g - h);
  return kernel;
}

QuotientModel kernel_to_rkhs(const ComplexMatrix& block_kernel, double tol) {
  return gram_quotient(hermitize(block_kernel), tol);
}

const ComplexMatrix& GNSModel::pi(long k) const {
  long r = k % order;
  if (r < 0) r += order;
  return rep[static_cast<std::size_t>(r)];
}

namespace {

// Solve X · factor = factor · action for X, using factor · factor* ≻ 0.
ComplexMatrix conjugate_through_factor(const ComplexMatrix& factor, const ComplexMatrix& action) {
  const ComplexMatrix gram = factor * factor.adjoint();  // rank × rank, invertible
  return (factor * action * factor.adjoint()) * gram.inverse();
}

}  // namespace

GNSModel gns_construct(const CyclicSesqFunction& phi, double tol) {
  const long n = phi.order();
  const Index d = phi.dim();
  GNSModel model;
  model.order = n;
  model.v_dim = d;
  model.quotient = kernel_to_rkhs(phi.block_kernel(), tol);
  model.hilbert_dim = model.quotient.rank;

  // π(g) sends the column block at h to the block at h - g (right translation
  // on kernel vectors: π(g) K_{h,v} = K_{h-g,v}).
  model.rep.reserve(static_cast<std::size_t>(n));
  const ComplexMatrix& factor = model.quotient.factor;
  for (long g = 0; g < n; ++g) {
    ComplexMatrix perm = ComplexMatrix::Zero(n * d, n * d);
    for (long h = 0; h < n; ++h) {
      long dest = (h - g) % n;
      if (dest < 0) dest += n;
      perm.block(dest * d, h * d, d, d) = ComplexMatrix::Identity(d, d);
    }
    model.rep.push_back(conjugate_through_factor(factor, perm));
  }
  model.embedding = factor.block(0, 0, model.hilbert_dim, d);  // block at g = 0
  return model;
}

double gns_reconstruction_defect(const GNSModel& model, const CyclicSesqFunction& phi) {
  double defect = 0.0;
  const Index d = model.v_dim;
  for (long g = 0; g < model.order; ++g) {
    // ⟨π(g) j v, j w⟩ = (j e_w)* π(g) (j e_v)
    const ComplexMatrix reproduced =
        model.embedding.adjoint() * model.pi(g) * model.embedding;  // entry (w,v)
    for (Index v = 0; v < d; ++v)
      for (Index w = 0; w < d; ++w)
        defect = std::max(defect,
                          std::abs(reproduced(w, v) - phi.value(g)(w, v)));
  }
  return defect;
}

ComplexMatrix induced_reflection(const GNSModel& model, double tol) {
  const long n = model.order;
  const Index d = model.v_dim;
  ComplexMatrix perm = ComplexMatrix::Zero(n * d, n * d);
  for (long h = 0; h < n; ++h) {
    long dest = (-h) % n;
    if (dest < 0) dest += n;
    perm.block(dest * d, h * d, d, d) = ComplexMatrix::Identity(d, d);
  }
  const ComplexMatrix theta = conjugate_through_factor(model.quotient.factor, perm);
  const Index r = model.hilbert_dim;
  if ((theta * theta - ComplexMatrix::Identity(r, r)).norm() > tol ||
      unitarity_defect(theta) > tol)
    throw NotRepresentation("induced_reflection: kernel is not reflection symmetric");
  return theta;
}

RPHilbertSpace::RPHilbertSpace(ComplexMatrix theta, ComplexMatrix plus_basis, double tol)
    : theta_(std::move(theta)), plus_basis_(std::move(plus_basis)) {
  if (theta_.rows() != theta_.cols()) throw DimensionMismatch("RPHilbertSpace: theta not square");
  if (plus_basis_.rows() != theta_.rows())
    throw DimensionMismatch("RPHilbertSpace: basis/theta size mismatch");
  if (unitarity_defect(theta_) > tol) throw NotUnitary("RPHilbertSpace: theta not unitary");
  const Index n = theta_.rows();
  if ((theta_ * theta_ - ComplexMatrix::Identity(n, n)).norm() > tol)
    throw NotRepresentation("RPHilbertSpace: theta is not an involution");
}

ComplexMatrix RPHilbertSpace::twisted_gram() const {
  return plus_basis_.adjoint() * theta_ * plus_basis_;
}

OSQuantization os_quantize(const RPHilbertSpace& rph, double tol) {
  const ComplexMatrix gram = hermitize(rph.twisted_gram());
  const PsdCertificate cert = psd_certificate(gram, tol);
  if (!cert.is_psd)
    throw NotThetaPositive("os_quantize: twisted form min eigenvalue " +
                           std::to_string(cert.min_eig));
  return OSQuantization{gram_quotient(gram, tol)};
}

ComplexMatrix descend_operator(const RPHilbertSpace& rph, const ComplexMatrix& t_coords,
                               double tol) {
  const Index m = rph.plus_dim();
  if (t_coords.rows() != m || t_coords.cols() != m)
    throw DimensionMismatch("descend_operator: operator must act on E+ coordinates");
  const OSQuantization os = os_quantize(rph);
  const ComplexMatrix& factor = os.quotient.factor;

  // null space must be preserved: ‖q(T n)‖ small for null directions n
  const ComplexMatrix& null_basis = os.quotient.null_basis;
  const double scale = std::max(1.0, t_coords.norm());
  for (Index k = 0; k < null_basis.cols(); ++k) {
    const double leak = (factor * (t_coords * null_basis.col(k))).norm();
    if (leak > tol * scale)
      throw NullSpaceNotPreserved("descend_operator: null direction leaks by " +
                                  std::to_string(leak));
  }
  const ComplexMatrix gram = factor * factor.adjoint();
  return (factor * t_coords * factor.adjoint()) * gram.inverse();
}

ComplexMatrix compress_to_plus(const RPHilbertSpace& rph, const ComplexMatrix& t_ambient,
                               double tol) {
  const ComplexMatrix& basis = rph.plus_basis();
  if (t_ambient.rows() != basis.rows() || t_ambient.cols() != basis.rows())
    throw DimensionMismatch("compress_to_plus: ambient operator size mismatch");
  const ComplexMatrix image = t_ambient * basis;
  // least-squares coordinates of T·u_k in the basis
  const Eigen::ColPivHouseholderQR<ComplexMatrix> qr(basis);
  const ComplexMatrix coords = qr.solve(image);
  const double leak = (basis * coords - image).norm();
  if (leak > tol * std::max(1.0, image.norm()))
    throw NotInvariant("compress_to_plus: T leaves span(E+) by " + std::to_string(leak));
  return coords;
}

RPConditionReport check_rp_conditions(const std::vector<ComplexMatrix>& rep,
                                      const ComplexMatrix& theta, double tol) {
  const long n = static_cast<long>(rep.size());
  if (n < 1) throw NotRepresentation("check_rp_conditions: empty representation");
  const Index dim = rep.front().rows();
  const double scale = std::max(1.0, theta.norm());
  if ((rep[0] - ComplexMatrix::Identity(dim, dim)).norm() > tol * scale)
    throw NotRepresentation("check_rp_conditions: pi(0) != 1");
  for (long k = 0; k < n; ++k) {
    if (unitarity_defect(rep[static_cast<std::size_t>(k)]) > tol * scale)
      throw NotRepresentation("check_rp_conditions: pi(k) not unitary");
    if (n >= 2) {
      const long next = (k + 1) % n;
      if ((rep[static_cast<std::size_t>(k)] * rep[1] - rep[static_cast<std::size_t>(next)]).norm() >
          1e-8 * scale)
        throw NotRepresentation("check_rp_conditions: pi is not a homomorphism");
    }
  }

  RPConditionReport report;
  double worst = 0.0;
  for (long k = 0; k < n; ++k) {
    const long neg = (n - k) % n;
    worst = std::max(worst, (rep[static_cast<std::size_t>(neg)] -
                             theta * rep[static_cast<std::size_t>(k)] * theta)
                                .norm());
  }
  report.rp1_residual = worst;
  report.rp1 = worst <= tol * scale * 100.0;
  report.rp2 = true;
  report.rp2_note = "trivial for the circle: the fixed-point subgroup is {0}";
  report.rp3 = true;
  report.rp3_note = "vacuous in finite dimensions: every vector is smooth";
  return report;
}

}  // namespace rpcirc
