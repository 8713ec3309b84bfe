// Acceptance suite: runs every top-level requirement at its pinned tolerance
// and prints one PASS/FAIL line per criterion.  The path of the CLI binary is
// expected as argv[1] (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>
#include <unistd.h>

#include <json.hpp>

#include "rpcirc/gns.hpp"
#include "rpcirc/kms.hpp"
#include "rpcirc/realization.hpp"
#include "rpcirc/rpfunc.hpp"
#include "rpcirc/standard_subspace.hpp"
#include "test_support.hpp"

using namespace rpcirc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream log;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      log << "    failed: " << what << "\n";
    }
  }
  void require_le(double value, double bound, const std::string& what) {
    if (!(value <= bound)) {
      ok = false;
      log << "    failed: " << what << " = " << value << " > " << bound << "\n";
    }
  }
};

ComplexMatrix random_psd_weight(Index d, std::mt19937_64& rng) {
  return testing::random_psd(d, rng);
}

// ---------------------------------------------------------------- criterion 1
void fourier_golden_values(Checker& c) {
  const CircleRPFunction f1 = basic_flambda(1.0, CircleParameter(1.0));
  const double c0 = 2.0 * (1.0 - std::exp(-1.0));
  const double c1 = c0 / (1.0 + 4.0 * M_PI * M_PI);
  c.require_le(std::abs(fourier_coefficient(f1, 0)(0, 0).real() - c0), 1e-12, "|c_0 - closed form|");
  c.require_le(std::abs(fourier_coefficient(f1, 1)(0, 0).real() - c1), 1e-12, "|c_1 - closed form|");

  const int n = 4096;
  std::vector<ComplexMatrix> samples;
  samples.reserve(n);
  for (int k = 0; k < n; ++k) samples.push_back(eval(f1, static_cast<double>(k) / n));
  const auto dft = bochner_coefficients(samples);
  for (long m = -64; m <= 64; ++m) {
    const std::size_t idx = static_cast<std::size_t>((m + n) % n);
    const double closed = flambda_coefficient(1.0, 1.0, m);
    c.require_le(std::abs(dft[idx](0, 0).real() - closed), 1e-4,
                 "|DFT c_" + std::to_string(m) + " - closed form|");
  }
}

// ---------------------------------------------------------------- criterion 2
void forward_certificate(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> atom_count(1, 5), dim_pick(1, 3);
  std::uniform_real_distribution<double> loc(0.0, 4.0);
  const double betas[3] = {0.5, 1.0, 2.0};
  double worst_kernel = 0.0, worst_fourier = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = dim_pick(rng);
    std::vector<Atom> atoms;
    const int n_atoms = atom_count(rng);
    for (int a = 0; a < n_atoms; ++a) atoms.push_back(Atom{loc(rng), random_psd_weight(d, rng)});
    const double beta = betas[trial % 3];
    const CircleRPFunction phi(CircleParameter(beta),
                               MeasureBacked{AtomicOperatorMeasure(d, std::move(atoms))});

    const PsdCertificate kernel =
        psd_certificate(os_kernel(phi, default_verification_grid(beta, 20)), 1e-9);
    worst_kernel = std::min(worst_kernel, kernel.min_eig / kernel.scale);
    if (!kernel.is_psd) c.require(false, "os kernel PSD, trial " + std::to_string(trial));

    std::vector<ComplexMatrix> samples;
    samples.reserve(256);
    for (int k = 0; k < 256; ++k) samples.push_back(eval(phi, beta * k / 256.0));
    for (const ComplexMatrix& coeff : bochner_coefficients(samples)) {
      const PsdCertificate cert = psd_certificate(hermitize(coeff), 1e-9);
      worst_fourier = std::min(worst_fourier, cert.min_eig / cert.scale);
      if (!cert.is_psd) c.require(false, "Bochner coefficient PSD, trial " + std::to_string(trial));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.log << "    worst relative kernel eigenvalue " << worst_kernel << ", worst coefficient "
        << worst_fourier << ", " << seconds << " s\n";
  c.require_le(seconds, 10.0, "runtime (s)");
}

// ---------------------------------------------------------------- criterion 3
void measure_fit_roundtrip(Checker& c) {
  std::mt19937_64 rng(7);
  RealVector grid(5);
  grid << 0.0, 0.8, 1.8, 3.0, 4.5;
  std::uniform_int_distribution<int> dim_pick(1, 3), atom_pick(1, 3), idx_pick(0, 4);
  double worst_weight = 0.0, worst_residual = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = dim_pick(rng);
    std::vector<Atom> atoms;
    std::vector<bool> used(5, false);
    const int n_atoms = atom_pick(rng);
    for (int a = 0; a < n_atoms; ++a) {
      int k = idx_pick(rng);
      if (used[static_cast<std::size_t>(k)]) continue;
      used[static_cast<std::size_t>(k)] = true;
      atoms.push_back(Atom{grid[k], random_psd_weight(d, rng)});
    }
    const AtomicOperatorMeasure mu(d, atoms);
    const CircleRPFunction phi(CircleParameter(1.0), MeasureBacked{mu});
    const int m = 30;
    RealVector times(m);
    std::vector<ComplexMatrix> values;
    for (int j = 0; j < m; ++j) {
      times[j] = static_cast<double>(j) / (m - 1);
      values.push_back(eval(phi, times[j]));
    }
    const FitResult fit = fit_measure(times, values, grid, CircleParameter(1.0));
    worst_residual = std::max(worst_residual, fit.residual);
    for (const Atom& truth : mu.atoms()) {
      double gap = 1e9;
      for (const Atom& got : fit.mu_plus.atoms())
        if (std::abs(got.lambda - truth.lambda) < 1e-9)
          gap = (got.weight - truth.weight).norm();
      worst_weight = std::max(worst_weight, gap);
    }
  }
  c.log << "    worst weight error " << worst_weight << ", worst residual " << worst_residual
        << "\n";
  c.require_le(worst_weight, 1e-6, "weight recovery (Frobenius)");
  c.require_le(worst_residual, 1e-8, "fit residual");
}

// ---------------------------------------------------------------- criterion 4
void realization_roundtrip(Checker& c) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> half_pick(1, 4);
  const double betas[3] = {0.5, 1.0, 2.0};
  double worst_spec = 0.0, worst_jhj = 0.0, worst_dilation = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix h = testing::random_symmetric_spectrum(half_pick(rng), rng);
    const double beta = betas[trial % 3];
    const double scale = std::max(1.0, h.norm());

    const RealizationBundle bundle = euclidean_realize(h, CircleParameter(beta));
    const DualModel dual = reconstruct_dual(bundle.phi);
    const RealVector original = eig_hermitian(h).eigenvalues;
    const RealVector recovered = eig_hermitian(dual.generator).eigenvalues;
    if (original.size() != recovered.size()) {
      c.require(false, "model dimension, trial " + std::to_string(trial));
      continue;
    }
    worst_spec = std::max(worst_spec, (original - recovered).cwiseAbs().maxCoeff() / scale);

    const AntiUnitaryMap j = construct_J(h);
    worst_jhj = std::max(worst_jhj, (antiunitary_conjugate(j, h) + h).norm() / scale);
    worst_dilation = std::max(
        worst_dilation, dilation_check(bundle, default_verification_grid(beta, 20)) / scale);
  }
  c.log << "    worst spectrum gap " << worst_spec << ", JHJ+H " << worst_jhj << ", dilation "
        << worst_dilation << "\n";
  c.require_le(worst_spec, 1e-8, "eigenvalue multiset round trip");
  c.require_le(worst_jhj, 1e-10, "J H J = -H");
  c.require_le(worst_dilation, 1e-10, "dilation residual");
}

// ---------------------------------------------------------------- criterion 5
void negative_controls(Checker& c) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  h(2, 2) = -1.0;
  const PairingReport pairing = check_J_existence(h);
  c.require(!pairing.exists, "diag(1,1,-1) must be rejected");
  bool table_ok = false;
  for (const ClusterMatch& m : pairing.clusters)
    if (std::abs(m.lambda - 1.0) < 1e-9) table_ok = m.mult_pos == 2 && m.mult_neg == 1;
  c.require(table_ok, "multiplicity table reports 2 vs 1");
  bool threw = false;
  try {
    euclidean_realize(h, CircleParameter(1.0));
  } catch (const AsymmetricSpectrum&) {
    threw = true;
  }
  c.require(threw, "euclidean_realize throws AsymmetricSpectrum");

  // φ(t) = e^{|t|} is the line case of H = -1 on a 3-point grid
  RealVector grid(3);
  grid << 1.0, 2.0, 4.0;
  const LineCaseReport line = line_case_check(-ComplexMatrix::Identity(1, 1), grid);
  c.require(!line.passed(), "e^{|t|} must fail the line-case certificate");
}

// ---------------------------------------------------------------- criterion 6
void standard_subspace_correspondence(Checker& c) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> dim_pick(2, 6);
  double worst_angle = 0.0, worst_identity = 0.0, worst_pair = 0.0;
  bool reality_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = dim_pick(rng);
    ComplexMatrix h;
    if (trial % 10 == 0) {
      h = ComplexMatrix::Zero(n, n);  // Δ = 1 instances exercise the reality direction
    } else if (n % 2 == 0) {
      h = testing::random_symmetric_spectrum(n / 2, rng, 0.1, 1.5);
    } else {
      const ComplexMatrix core = testing::random_symmetric_spectrum((n - 1) / 2, rng, 0.1, 1.5);
      ComplexMatrix padded = ComplexMatrix::Zero(n, n);
      padded.topLeftCorner(n - 1, n - 1) = core;
      const ComplexMatrix u = testing::random_unitary(n, rng);
      h = hermitize(u * padded * u.adjoint());
    }
    const ComplexMatrix delta = hermitize(apply_function(eig_hermitian(h), exp_scaled(-1.0)));
    const ModularPair pair(delta, construct_J(h));

    const StandardSubspace v = pair_to_subspace(pair);
    const TomitaData recovered = subspace_to_tomita(v);
    worst_pair = std::max(worst_pair, (recovered.pair.delta() - pair.delta()).norm() /
                                          std::max(1.0, pair.delta().norm()));
    worst_pair = std::max(worst_pair, (recovered.pair.j().u() - pair.j().u()).norm());
    worst_angle = std::max(worst_angle,
                           subspace_angle(v.realified_basis(),
                                          pair_to_subspace(recovered.pair).realified_basis()));

    const LemmaIdentitiesReport lemma = check_lemma_identities(v, pair, 100, 100u + trial);
    worst_identity = std::max(worst_identity, lemma.max_identity_residual());

    const bool delta_is_identity = lemma.delta_vs_identity <= 1e-8;
    const bool product_real = lemma.reality_defect <= 1e-8;
    reality_ok = reality_ok && (delta_is_identity == product_real);
  }
  c.log << "    worst pair gap " << worst_pair << ", angle " << worst_angle << ", identities "
        << worst_identity << "\n";
  c.require_le(worst_angle, 1e-8, "principal angle of the round trip");
  c.require_le(worst_pair, 1e-8, "pair round trip");
  c.require_le(worst_identity, 1e-10, "Tomita identities");
  c.require(reality_ok, "reality holds iff Delta = 1, both directions");
}

// ---------------------------------------------------------------- criterion 7
void kms_exactness(Checker& c) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  const GibbsSystem sys(h, 1.0);
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) worst = std::max(worst, kms_residual(sys, sx, sx, -2.0 + 0.4 * k));
  c.require_le(worst, 1e-12, "qubit closed-form residual");

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ts(-2.0, 2.0);
  double worst_random = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + trial % 3;
    const double beta = std::vector<double>{0.5, 1.0, 2.0}[trial % 3];
    const GibbsSystem random_sys(testing::random_hermitian(n, rng), beta);
    const ComplexMatrix a = testing::random_complex(n, n, rng);
    const ComplexMatrix b = testing::random_complex(n, n, rng);
    worst_random = std::max(worst_random, kms_residual(random_sys, a, b, ts(rng)) /
                                              std::max(1.0, a.norm() * b.norm()));
  }
  c.require_le(worst_random, 1e-10, "random-system residual");

  const GibbsSystem wrong(h, 2.0);
  const ComplexMatrix state = wrong.density();
  const double detector = kms_residual(sys, sx, sx, 0.0, &state);
  c.log << "    detector residual " << detector << "\n";
  c.require(detector > 1e-2, "wrong-temperature detector");
}

// ---------------------------------------------------------------- criterion 8
void tomita_cross_check(Checker& c) {
  std::mt19937_64 rng(19);
  double worst_ratio = 0.0, worst_commutant = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const Index n = 2 + trial % 2;
    const double beta = std::vector<double>{0.5, 1.0, 2.0}[trial % 3];
    const GibbsSystem sys(testing::random_hermitian(n, rng), beta);
    const TomitaGibbsResult result = tomita_from_gibbs(sys, 50, 7u + trial);
    std::vector<double> ratios;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        ratios.push_back(std::exp(-beta * (sys.h_spec().eigenvalues[i] -
                                           sys.h_spec().eigenvalues[j])));
    std::sort(ratios.begin(), ratios.end());
    for (Index k = 0; k < result.delta_eigenvalues.size(); ++k)
      worst_ratio = std::max(worst_ratio,
                             std::abs(result.delta_eigenvalues[k] -
                                      ratios[static_cast<std::size_t>(k)]) /
                                 std::max(1.0, ratios[static_cast<std::size_t>(k)]));
    worst_commutant = std::max(worst_commutant, result.commutant_residual);
  }
  c.require_le(worst_ratio, 1e-10, "Boltzmann ratios");
  c.require_le(worst_commutant, 1e-10, "commutant residual over 50 random pairs");

  const GibbsSystem tracial(ComplexMatrix::Zero(3, 3), 1.0);
  const TomitaGibbsResult result = tomita_from_gibbs(tracial);
  c.require((result.pair.delta() - ComplexMatrix::Identity(9, 9)).norm() == 0.0,
            "tracial Delta = 1 exactly");
  ComplexMatrix e = ComplexMatrix::Zero(3, 3);
  e(0, 1) = 1.0;
  Eigen::Map<const ComplexVector> ve(e.data(), 9);
  const ComplexVector out = result.pair.j().apply(ve);
  const ComplexMatrix back = Eigen::Map<const ComplexMatrix>(out.data(), 3, 3);
  c.require((back - e.adjoint()).norm() == 0.0, "tracial J is the adjoint map exactly");
}

// ---------------------------------------------------------------- criterion 9
void cross_module_closure(Checker& c) {
  std::mt19937_64 rng(23);
  // φ^{A,A} from the KMS module passes the full circle certificate
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 2 + trial % 3;
    const GibbsSystem sys(testing::random_hermitian(n, rng), 1.0);
    const CircleRPFunction phi = rp_from_kms(sys, testing::random_hermitian(n, rng));
    const RPReport report = check_reflection_positive(phi);
    c.require(report.passed(), "rp_from_kms certificate, trial " + std::to_string(trial));
  }
  // the modular pair from the KMS module passes the subspace identity suite
  const GibbsSystem sys(testing::random_hermitian(2, rng), 1.0);
  const TomitaGibbsResult tomita = tomita_from_gibbs(sys);
  const LemmaIdentitiesReport lemma = check_lemma_identities(tomita.subspace, tomita.pair);
  c.require_le(lemma.max_identity_residual(), 1e-10, "KMS modular pair in the subspace suite");

  // GNS models reproduce their defining functions
  for (const int n : {8, 16}) {
    std::vector<ComplexMatrix> values;
    for (int k = 0; k < n; ++k) {
      Complex acc(0.0, 0.0);
      for (long m = -n / 2; m <= n / 2; ++m)
        acc += flambda_coefficient(1.0, 1.0, m) * std::exp(Complex(0.0, 2.0 * M_PI * k * m / n));
      ComplexMatrix v(1, 1);
      v(0, 0) = acc;
      values.push_back(v);
    }
    const CyclicSesqFunction phi(values);
    const GNSModel model = gns_construct(phi);
    c.require_le(gns_reconstruction_defect(model, phi), 1e-10,
                 "GNS reconstruction on Z_" + std::to_string(n));
  }
}

// --------------------------------------------------------------- criterion 10
struct CliFixture {
  fs::path dir;
  std::string binary;

  std::string file(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = binary + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

json strip_wall_time(const std::string& path) {
  std::ifstream in(path);
  json j = json::parse(in);
  j.erase("wall_time_ms");
  return j;
}

void cli_determinism(Checker& c, const std::string& binary) {
  if (binary.empty()) {
    c.require(false, "CLI binary path not supplied (argv[1])");
    return;
  }
  CliFixture cli;
  cli.binary = binary;
  cli.dir = fs::temp_directory_path() / ("rpcirc_accept_" + std::to_string(::getpid()));
  fs::create_directories(cli.dir);

  // demo inputs
  {
    std::ofstream f1(cli.file("f1.json"));
    f1 << R"({"schema_version":1,"beta":1.0,"dim":1,"backing":"measure",
              "mu_plus":{"dim":1,"atoms":[{"lambda":1.0,"weight_re":[[1.0]],"weight_im":[[0.0]]}]}})";
  }
  {
    std::ofstream h(cli.file("h.json"));
    h << R"({"re": [[1.0, 0.0],[0.0, -1.0]], "im": [[0.0,0.0],[0.0,0.0]]})";
  }
  {
    std::ofstream bad(cli.file("h_bad.json"));
    bad << R"({"re": [[1.0,0,0],[0,1.0,0],[0,0,-1.0]]})";
  }
  {
    std::ofstream pair(cli.file("pair.json"));
    pair << R"({"schema_version":1,
                "delta":{"re":[[2.718281828459045,0.0],[0.0,0.36787944117144233]],"im":[[0,0],[0,0]]},
                "j":{"re":[[0.0,1.0],[1.0,0.0]],"im":[[0,0],[0,0]]}})";
  }
  {
    std::ofstream pair(cli.file("pair_bad.json"));
    pair << R"({"schema_version":1,
                "delta":{"re":[[2.0,0.0],[0.0,1.0]],"im":[[0,0],[0,0]]},
                "j":{"re":[[1.0,0.0],[0.0,1.0]],"im":[[0,0],[0,0]]}})";
  }
  {
    std::ofstream sys(cli.file("sys.json"));
    sys << R"({"schema_version":1,"n":2,"h":{"re":[[0.0,0.0],[0.0,1.0]],"im":[[0,0],[0,0]]},"beta":1.0})";
  }
  {
    std::ofstream garbage(cli.file("garbage.json"));
    garbage << "{ not json";
  }
  {
    std::ofstream csv(cli.file("samples.csv"));
    csv << "t,phi\n";
    const CircleRPFunction f1 = basic_flambda(1.0, CircleParameter(1.0));
    for (int i = 0; i < 30; ++i) {
      const double t = i / 29.0;
      csv.precision(17);
      csv << t << "," << eval(f1, t)(0, 0).real() << "\n";
    }
  }

  // the tolerance override variable is documented in --help
  {
    const std::string cmd = binary + " --help > " + cli.file("help.txt") + " 2>&1";
    std::system(cmd.c_str());
    std::ifstream help(cli.file("help.txt"));
    std::stringstream text;
    text << help.rdbuf();
    c.require(text.str().find("RPCIRC_DEFAULT_TOL") != std::string::npos,
              "--help documents RPCIRC_DEFAULT_TOL");
  }

  // exit-code contract
  c.require(cli.run("check-function --input " + cli.file("f1.json")) == 0,
            "check-function pass exit 0");
  c.require(cli.run("realize --input " + cli.file("h_bad.json") + " --beta 1") == 1,
            "realize asymmetric exit 1");
  c.require(cli.run("check-function --input " + cli.file("garbage.json")) == 2,
            "schema error exit 2");
  c.require(cli.run("standard-roundtrip --input " + cli.file("pair_bad.json")) == 2,
            "invalid pair exit 2");

  // determinism: run every demo twice and compare reports modulo wall time
  const std::vector<std::pair<std::string, std::string>> demos = {
      {"check-function --input " + cli.file("f1.json"), "cf"},
      {"realize --input " + cli.file("h.json") + " --beta 1", "rz"},
      {"standard-roundtrip --input " + cli.file("pair.json"), "sr"},
      {"kms --input " + cli.file("sys.json") + " --samples 3 --seed 5", "kms"},
      {"fit --input " + cli.file("samples.csv") + " --lambda-grid 0,0.5,1,2 --beta 1", "fit"},
  };
  for (const auto& [args, tag] : demos) {
    const std::string r1 = cli.file(tag + "_1.json");
    const std::string r2 = cli.file(tag + "_2.json");
    const int code1 = cli.run(args + " --report " + r1);
    const int code2 = cli.run(args + " --report " + r2);
    c.require(code1 == 0, tag + " exit 0");
    c.require(code1 == code2, tag + " exit codes agree");
    try {
      c.require(strip_wall_time(r1).dump() == strip_wall_time(r2).dump(),
                tag + " reports identical modulo wall time");
    } catch (const std::exception& e) {
      c.require(false, tag + std::string(" report parse: ") + e.what());
    }
  }

  std::error_code ec;
  fs::remove_all(cli.dir, ec);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";

  struct Criterion {
    int id;
    std::string name;
    std::function<void(Checker&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Fourier coefficient golden values", fourier_golden_values},
      {2, "forward certificate over random measures", forward_certificate},
      {3, "measure-fit round trip", measure_fit_roundtrip},
      {4, "realization round trip", realization_roundtrip},
      {5, "negative controls", negative_controls},
      {6, "standard subspace correspondence", standard_subspace_correspondence},
      {7, "KMS exactness", kms_exactness},
      {8, "Tomita cross-check", tomita_cross_check},
      {9, "cross-module closure", cross_module_closure},
      {10, "CLI determinism and exit codes",
       [&binary](Checker& c) { cli_determinism(c, binary); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("unexpected exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (checker.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
              << criterion.name << " (" << ms << " ms)\n"
              << checker.log.str();
    if (!checker.ok) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
            << criteria.size() - failures << "/" << criteria.size() << ")\n";
  return failures == 0 ? 0 : 1;
}
