#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rpcirc/kms.hpp"
#include "test_support.hpp"

using namespace rpcirc;

namespace {

GibbsSystem qubit(double beta = 1.0) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  return GibbsSystem(h, beta);
}

ComplexMatrix sigma_x() {
  ComplexMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

}  // namespace

TEST_CASE("GibbsSystem state properties") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 3;
    const GibbsSystem sys(testing::random_hermitian(n, rng), 0.5 + 0.5 * (trial % 3));
    CHECK(std::abs(sys.density().trace().real() - 1.0) <= 1e-12);
    CHECK(sys.probabilities().minCoeff() > 0.0);
    CHECK(std::abs(sys.expectation(ComplexMatrix::Identity(n, n)) - Complex(1.0, 0.0)) <= 1e-12);
    const ComplexMatrix a = testing::random_complex(n, n, rng);
    CHECK((sys.expectation(a.adjoint() * a)).real() >= -1e-12);
    CHECK((sys.density_root() * sys.density_root() - sys.density()).norm() <= 1e-12);
  }
}

TEST_CASE("evolve") {
  const GibbsSystem sys = qubit();
  SUBCASE("z = 0 is the identity map") {
    std::mt19937_64 rng(5);
    const ComplexMatrix a = testing::random_complex(2, 2, rng);
    CHECK((evolve(sys, a, Complex(0.0, 0.0)) - a).norm() <= 1e-14);
  }
  SUBCASE("qubit phases on the off-diagonals") {
    for (const double t : {0.3, 1.1, -0.8}) {
      const ComplexMatrix out = evolve(sys, sigma_x(), Complex(t, 0.0));
      CHECK(std::abs(out(0, 1) - std::exp(Complex(0.0, -t))) <= 1e-13);
      CHECK(std::abs(out(1, 0) - std::exp(Complex(0.0, t))) <= 1e-13);
    }
  }
  SUBCASE("the Hamiltonian is invariant") {
    CHECK((evolve(sys, sys.hamiltonian(), Complex(0.7, 0.3)) - sys.hamiltonian()).norm() <=
          1e-13);
  }
  SUBCASE("group law for real times") {
    std::mt19937_64 rng(7);
    const GibbsSystem sys3(testing::random_hermitian(3, rng), 1.0);
    const ComplexMatrix a = testing::random_complex(3, 3, rng);
    const ComplexMatrix lhs = evolve(sys3, evolve(sys3, a, Complex(0.4, 0.0)), Complex(0.9, 0.0));
    const ComplexMatrix rhs = evolve(sys3, a, Complex(1.3, 0.0));
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("kms_residual") {
  SUBCASE("qubit closed form vanishes at ten times") {
    const GibbsSystem sys = qubit();
    for (int k = 0; k < 10; ++k) {
      const double t = -2.0 + 0.4 * k;
      CHECK(kms_residual(sys, sigma_x(), sigma_x(), t) <= 1e-12);
    }
    // closed form cross-check: F(t) = ω(σ_x α_t(σ_x)) = p0 e^{it} + p1 e^{-it}
    const double p0 = 1.0 / (1.0 + std::exp(-1.0));
    const double p1 = 1.0 - p0;
    const double t = 0.6;
    const Complex f_t = sys.expectation(sigma_x() * evolve(sys, sigma_x(), Complex(t, 0.0)));
    const Complex expected = p0 * std::exp(Complex(0.0, t)) + p1 * std::exp(Complex(0.0, -t));
    CHECK(std::abs(f_t - expected) <= 1e-13);
    // continuation to t + iβ swaps the weights
    const Complex f_ti = sys.expectation(sigma_x() * evolve(sys, sigma_x(), Complex(t, 1.0)));
    const Complex swapped = p1 * std::exp(Complex(0.0, t)) + p0 * std::exp(Complex(0.0, -t));
    CHECK(std::abs(f_ti - swapped) <= 1e-13);
  }
  SUBCASE("identity observables are trivial") {
    const GibbsSystem sys = qubit();
    CHECK(kms_residual(sys, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 1.3) <=
          1e-14);
  }
  SUBCASE("random systems satisfy the boundary identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ts(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 2 + trial % 3;
      const double beta = std::vector<double>{0.5, 1.0, 2.0}[trial % 3];
      const GibbsSystem sys(testing::random_hermitian(n, rng), beta);
      const ComplexMatrix a = testing::random_complex(n, n, rng);
      const ComplexMatrix b = testing::random_complex(n, n, rng);
      CHECK(kms_residual(sys, a, b, ts(rng)) <= 1e-10 * std::max(1.0, a.norm() * b.norm()));
    }
  }
  SUBCASE("wrong-temperature states are detected") {
    const GibbsSystem sys = qubit(1.0);
    const GibbsSystem wrong = qubit(2.0);
    const ComplexMatrix state = wrong.density();
    CHECK(kms_residual(sys, sigma_x(), sigma_x(), 0.0, &state) > 1e-2);
  }
}

TEST_CASE("psi_function") {
  const GibbsSystem sys = qubit();
  SUBCASE("t = 0 is the GNS form") {
    const SesqForm psi0 = psi_function(sys, 0.0);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix a = testing::random_complex(2, 2, rng);
      const ComplexMatrix b = testing::random_complex(2, 2, rng);
      Eigen::Map<const ComplexVector> va(a.data(), 4), vb(b.data(), 4);
      CHECK(std::abs(psi0(va, vb) - sys.expectation(b.adjoint() * a)) <= 1e-13);
    }
    CHECK(psd_certificate(psi0.matrix()).is_psd);
  }
  SUBCASE("qubit sigma_x matrix element") {
    const double p0 = 1.0 / (1.0 + std::exp(-1.0));
    const double p1 = 1.0 - p0;
    for (const double t : {0.0, 0.5, 1.7}) {
      const SesqForm psi = psi_function(sys, t);
      Eigen::Map<const ComplexVector> vx(sigma_x().data(), 4);
      ComplexVector v = vx;
      const Complex expected = p0 * std::exp(Complex(0.0, t)) + p1 * std::exp(Complex(0.0, -t));
      CHECK(std::abs(psi(v, v) - expected) <= 1e-13);
    }
  }
  SUBCASE("block kernel over a grid is PSD") {
    std::mt19937_64 rng(17);
    const GibbsSystem sys2(testing::random_hermitian(2, rng), 1.0);
    const std::vector<double> grid{0.0, 0.7, 1.3};
    const Index block = 4;
    ComplexMatrix gram(3 * block, 3 * block);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j)
        gram.block(i * block, j * block, block, block) = psi_matrix(
            sys2, Complex(grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(j)],
                          0.0));
    const PsdCertificate cert = psd_certificate(hermitize(gram));
    CHECK(cert.min_eig >= -1e-10);
  }
  SUBCASE("psi(-t) is the adjoint form") {
    for (const double t : {0.4, 1.9}) {
      const SesqForm plus = psi_function(sys, t);
      const SesqForm minus = psi_function(sys, -t);
      CHECK((minus.matrix() - plus.adjoint().matrix()).norm() <= 1e-12);
    }
  }
}

TEST_CASE("kms_ancont_check") {
  SUBCASE("qubit at t = 0.4") {
    const AncontReport report = kms_ancont_check(qubit(), sigma_x(), sigma_x(), 0.4);
    CHECK(report.boundary_residual <= 1e-12);
    CHECK(report.strip_residual <= 1e-12);
  }
  SUBCASE("identity observables") {
    const AncontReport report =
        kms_ancont_check(qubit(), ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2),
                         1.1);
    CHECK(report.boundary_residual <= 1e-14);
    CHECK(report.strip_residual <= 1e-14);
  }
  SUBCASE("random triples") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
      const GibbsSystem sys(testing::random_hermitian(3, rng), 1.0);
      const ComplexMatrix a = testing::random_complex(3, 3, rng);
      const ComplexMatrix b = testing::random_complex(3, 3, rng);
      for (const double t : {0.0, 1.0}) {
        const AncontReport report = kms_ancont_check(sys, a, b, t);
        CHECK(report.boundary_residual <= 1e-10);
        CHECK(report.strip_residual <= 1e-10);
      }
    }
  }
}

TEST_CASE("rp_from_kms") {
  SUBCASE("identity observable gives the constant 1") {
    const CircleRPFunction phi = rp_from_kms(qubit(), ComplexMatrix::Identity(2, 2));
    for (const double t : {0.0, 0.4, 1.0})
      CHECK(eval(phi, t)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("qubit sigma_x closed form") {
    const CircleRPFunction phi = rp_from_kms(qubit(), sigma_x());
    const double p0 = 1.0 / (1.0 + std::exp(-1.0));
    const double p1 = 1.0 - p0;
    CHECK(eval(phi, 0.0)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    for (const double t : {0.2, 0.5, 0.8}) {
      const double expected = p0 * std::exp(-t) + p1 * std::exp(t);
      CHECK(eval(phi, t)(0, 0).real() == doctest::Approx(expected).epsilon(1e-13));
      CHECK((eval(phi, t) - eval(phi, 1.0 - t)).norm() <= 1e-13);
    }
    CHECK(check_reflection_positive(phi).passed());
  }
  SUBCASE("observables commuting with h give constants") {
    const GibbsSystem sys = qubit();
    const CircleRPFunction phi = rp_from_kms(sys, sys.hamiltonian());
    const double expected =
        sys.expectation(sys.hamiltonian() * sys.hamiltonian()).real();
    for (const double t : {0.1, 0.6})
      CHECK(eval(phi, t)(0, 0).real() == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("non-selfadjoint observables are rejected") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(rp_from_kms(qubit(), a), NotSelfAdjoint);
  }
  SUBCASE("random Hermitian observables certify") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
      const Index n = 2 + trial % 3;
      const double beta = std::vector<double>{0.5, 1.0, 2.0}[trial % 3];
      const GibbsSystem sys(testing::random_hermitian(n, rng), beta);
      const CircleRPFunction phi = rp_from_kms(sys, testing::random_hermitian(n, rng));
      CHECK(check_reflection_positive(phi).passed());
    }
  }
}

TEST_CASE("tomita_from_gibbs") {
  SUBCASE("tracial case is exact") {
    const GibbsSystem sys(ComplexMatrix::Zero(2, 2), 1.0);
    const TomitaGibbsResult result = tomita_from_gibbs(sys);
    CHECK((result.pair.delta() - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
    // J is the adjoint map X ↦ X*: in vec coordinates the transpose permutation
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(2, 2);
        e(i, j) = 1.0;
        Eigen::Map<const ComplexVector> ve(e.data(), 4);
        const ComplexVector out = result.pair.j().apply(ve);
        const ComplexMatrix back = Eigen::Map<const ComplexMatrix>(out.data(), 2, 2);
        CHECK((back - e.adjoint()).norm() == 0.0);
      }
    CHECK(result.max_residual() <= 1e-10);
  }
  SUBCASE("qubit Boltzmann ratios") {
    const TomitaGibbsResult result = tomita_from_gibbs(qubit());
    RealVector expected(4);
    expected << std::exp(-1.0), 1.0, 1.0, std::exp(1.0);
    REQUIRE(result.delta_eigenvalues.size() == 4);
    for (Index i = 0; i < 4; ++i)
      CHECK(result.delta_eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(result.max_residual() <= 1e-10);
    CHECK(result.flow_convention.find("alpha_{beta t}") != std::string::npos);
  }
  SUBCASE("random three-level systems") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
      const GibbsSystem sys(testing::random_hermitian(3, rng), 1.0);
      const TomitaGibbsResult result = tomita_from_gibbs(sys, 10, 42 + trial);
      CHECK(result.delta_residual <= 1e-8);
      CHECK(result.j_residual <= 1e-8);
      CHECK(result.subspace_angle <= 1e-8);
      CHECK(result.commutant_residual <= 1e-10);
      CHECK(result.flow_residual <= 1e-10);
      CHECK(result.generator_link_residual <= 1e-10);
      CHECK(result.normalization_residual <= 1e-10);
    }
  }
}

TEST_CASE("phi_via_generator") {
  const GibbsSystem sys = qubit();
  SUBCASE("t = 0 reduces to the GNS form") {
    std::mt19937_64 rng(31);
    const ComplexMatrix a = testing::random_complex(2, 2, rng);
    const ComplexMatrix b = testing::random_complex(2, 2, rng);
    const GeneratorPhi out = phi_via_generator(sys, a, b, 0.0);
    CHECK(std::abs(out.value - sys.expectation(b.adjoint() * a)) <= 1e-12);
    CHECK(out.residual_vs_psi <= 1e-12);
  }
  SUBCASE("qubit midpoint value") {
    const GeneratorPhi out = phi_via_generator(sys, sigma_x(), sigma_x(), 0.5);
    const double expected = 2.0 * std::exp(-0.5) / (1.0 + std::exp(-1.0));
    CHECK(out.value.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(out.value.imag()) <= 1e-13);
    CHECK(out.residual_vs_psi <= 1e-10);
    CHECK(out.halfline_norm > 0.0);
  }
  SUBCASE("boundary symmetry for selfadjoint observables") {
    const GeneratorPhi at0 = phi_via_generator(sys, sigma_x(), sigma_x(), 0.0);
    const GeneratorPhi at_beta = phi_via_generator(sys, sigma_x(), sigma_x(), 1.0);
    CHECK(std::abs(at0.value - at_beta.value) <= 1e-12);
  }
  SUBCASE("t outside the strip is rejected") {
    CHECK_THROWS_AS(phi_via_generator(sys, sigma_x(), sigma_x(), 1.4), OutOfRange);
  }
  SUBCASE("agreement with psi across random systems") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 8; ++trial) {
      const GibbsSystem s(testing::random_hermitian(3, rng), 1.0);
      const ComplexMatrix a = testing::random_complex(3, 3, rng);
      const ComplexMatrix b = testing::random_complex(3, 3, rng);
      const GeneratorPhi out = phi_via_generator(s, a, b, 0.6);
      CHECK(out.residual_vs_psi <= 1e-10 * std::max(1.0, std::abs(out.value)));
    }
  }
}

TEST_CASE("cross-module closure") {
  SUBCASE("the modular pair from a Gibbs system passes the subspace identity suite") {
    std::mt19937_64 rng(41);
    const GibbsSystem sys(testing::random_hermitian(2, rng), 1.0);
    const TomitaGibbsResult tomita = tomita_from_gibbs(sys);
    const LemmaIdentitiesReport lemma = check_lemma_identities(tomita.subspace, tomita.pair);
    CHECK(lemma.max_identity_residual() <= 1e-10);
  }
  SUBCASE("psi feeds the strip relation of the modular pair") {
    // ψ(iβ - z)(A,B) = ψ(z)(B*,A*) mirrors the Rmk 4.6 style conjugation
    const GibbsSystem sys = qubit();
    std::mt19937_64 rng(43);
    const ComplexMatrix a = hermitize(testing::random_complex(2, 2, rng));
    const AncontReport report = kms_ancont_check(sys, a, a, 0.8);
    CHECK(report.strip_residual <= 1e-11);
  }
}
