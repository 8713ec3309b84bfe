#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "rpcirc/realization.hpp"

namespace rpcirc::cli {

namespace {

using Clock = std::chrono::steady_clock;

class ReportBuilder {
 public:
  explicit ReportBuilder(std::string command, const CommonOptions& opts)
      : command_(std::move(command)), opts_(opts), start_(Clock::now()) {}

  void add(const std::string& name, bool pass, json details = json::object()) {
    details["name"] = name;
    details["pass"] = pass;
    checks_.push_back(std::move(details));
    pass_ = pass_ && pass;
  }

  void note(const std::string& key, json value) { extra_[key] = std::move(value); }

  bool passing() const { return pass_; }

  json finish() const {
    json out{{"schema_version", kSchemaVersion},
             {"toolkit_version", kVersion},
             {"command", command_},
             {"pass", pass_},
             {"seed", opts_.seed},
             {"tolerances",
              json{{"psd", opts_.tol}, {"identity", opts_.identity_tol}}},
             {"checks", checks_}};
    for (const auto& [key, value] : extra_.items()) out[key] = value;
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    out["wall_time_ms"] = ms;
    return out;
  }

  int emit(const CommonOptions& opts) const {
    const json report = finish();
    if (!opts.report_path.empty()) write_file(opts.report_path, report.dump(2) + "\n");
    std::cout << (pass_ ? "PASS" : "FAIL") << " " << command_ << "\n";
    for (const json& check : checks_)
      std::cout << "  [" << (check.at("pass").get<bool>() ? "ok" : "FAIL") << "] "
                << check.at("name").get<std::string>() << "\n";
    return pass_ ? 0 : 1;
  }

 private:
  std::string command_;
  CommonOptions opts_;
  Clock::time_point start_;
  json checks_ = json::array();
  json extra_ = json::object();
  bool pass_ = true;
};

ComplexMatrix random_complex(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

}  // namespace

RealVector parse_lambda_grid(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    double start = 0.0, step = 0.0, stop = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0)
      throw SchemaError("lambda grid: expected start:step:stop with step > 0");
    for (double v = start; v <= stop + 1e-12 * std::max(1.0, std::abs(stop)); v += step)
      values.push_back(v);
  } else {
    std::istringstream in(spec);
    std::string cell;
    while (std::getline(in, cell, ',')) {
      if (cell.empty()) continue;
      values.push_back(std::stod(cell));
    }
  }
  if (values.empty()) throw SchemaError("lambda grid: empty");
  RealVector out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Index>(i)] = values[i];
  return out;
}

int cmd_check_function(const std::string& input_path, int grid_points, int fourier_points,
                       const std::string& csv_prefix, const CommonOptions& opts) {
  const CircleRPFunction phi = function_from_json(load_json(input_path));
  ReportBuilder report("check-function", opts);

  RealVector grid;
  if (phi.backing() == CircleRPFunction::Backing::kSample) {
    // even-indexed interior points of a uniform grid keep midpoints on-grid
    const SampleBacked& s = phi.samples();
    std::vector<double> pts;
    const Index n = s.grid.size();
    const double step = phi.beta() / static_cast<double>(n);
    bool uniform = true;
    for (Index k = 0; k < n; ++k)
      uniform = uniform && std::abs(s.grid[k] - step * static_cast<double>(k)) <=
                               1e-9 * std::max(1.0, phi.beta());
    if (uniform) {
      for (Index k = 2; k < n; k += 2) pts.push_back(s.grid[k]);
    } else {
      for (Index k = 0; k < n; ++k)
        if (s.grid[k] > 0.0 && s.grid[k] < phi.beta()) pts.push_back(s.grid[k]);
    }
    grid.resize(static_cast<Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) grid[static_cast<Index>(i)] = pts[i];
  } else {
    grid = default_verification_grid(phi.beta(), grid_points);
  }

  RPReport rp;
  try {
    rp = check_reflection_positive(phi, grid, fourier_points, opts.tol);
  } catch (const NotOnGrid& e) {
    throw SchemaError(std::string("check-function: sample grid cannot be certified: ") + e.what());
  }

  report.add("os_kernel_psd", rp.kernel_psd, json{{"min_eig", rp.kernel_min_eig}});
  if (rp.fourier_psd.has_value())
    report.add("fourier_coefficients_psd", *rp.fourier_psd,
               json{{"worst_n", rp.fourier_worst_n}, {"min_eig", rp.fourier_min_eig}});
  else
    report.note("fourier_coefficients_psd", "skipped: samples not on a cyclic grid");
  report.add("beta_symmetry", rp.symmetric, json{{"defect", rp.symmetry_defect}});

  if (!csv_prefix.empty()) {
    // curve
    RealVector ts;
    std::vector<ComplexMatrix> vals;
    if (phi.backing() == CircleRPFunction::Backing::kSample) {
      ts = phi.samples().grid;
      vals = phi.samples().values;
    } else {
      const int n = 200;
      ts.resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        ts[i] = phi.beta() * static_cast<double>(i) / n;
        vals.push_back(eval(phi, ts[i]));
      }
    }
    write_file(csv_prefix + "_curve.csv", samples_to_csv(ts, vals));

    if (phi.backing() != CircleRPFunction::Backing::kSample) {
      const CircleRPFunction as_measure =
          phi.backing() == CircleRPFunction::Backing::kMeasure
              ? phi
              : CircleRPFunction(phi.circle(), MeasureBacked{measure_of(phi)});
      std::ostringstream csv;
      csv.precision(17);
      csv << "n";
      for (Index r = 0; r < phi.dim(); ++r)
        for (Index c = 0; c < phi.dim(); ++c) csv << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
      csv << "\n";
      const long half = std::max(1, fourier_points / 2);
      for (long n = -half; n <= half; ++n) {
        const ComplexMatrix cn = fourier_coefficient(as_measure, n);
        csv << n;
        for (Index r = 0; r < phi.dim(); ++r)
          for (Index c = 0; c < phi.dim(); ++c)
            csv << "," << cn(r, c).real() << "," << cn(r, c).imag();
        csv << "\n";
      }
      write_file(csv_prefix + "_coeffs.csv", csv.str());
    }
  }
  return report.emit(opts);
}

int cmd_realize(const std::string& input_path, double beta, const CommonOptions& opts) {
  const json input = load_json(input_path);
  ComplexMatrix h;
  if (input.is_object() && input.contains("h")) {
    expect_keys(input, {"schema_version", "h", "beta"}, "realize input");
    h = matrix_from_json(input.at("h"), "h");
    if (input.contains("beta")) beta = input.at("beta").get<double>();
  } else {
    h = matrix_from_json(input, "h");
  }
  if (!(beta > 0.0)) throw SchemaError("realize: beta must be positive");
  if (hermiticity_defect(h) > 1e-10) throw SchemaError("realize: H is not Hermitian");

  ReportBuilder report("realize", opts);
  const double scale = std::max(1.0, h.norm());

  const PairingReport pairing = check_J_existence(h);
  report.note("multiplicity_table", pairing.table());

  if (h.norm() <= 1e-14) {
    // trivial representation: J = conjugation, R = 1, φ constant
    report.add("spectrum_symmetric", true, json{{"note", "trivial representation"}});
    const Index n = h.rows();
    const AtomicOperatorMeasure mu(n, {Atom{0.0, ComplexMatrix::Identity(n, n)}});
    report.note("phi", function_to_json(
                           CircleRPFunction(CircleParameter(beta), MeasureBacked{mu})));
    report.note("involution_j", matrix_to_json(ComplexMatrix::Identity(n, n)));
    report.note("involution_r", matrix_to_json(ComplexMatrix::Identity(n, n)));
    return report.emit(opts);
  }

  if (!pairing.exists || pairing.zero_multiplicity > 0) {
    report.add("spectrum_symmetric", pairing.exists,
               json{{"zero_multiplicity", pairing.zero_multiplicity}});
    if (pairing.zero_multiplicity > 0)
      report.add("no_zero_modes", false,
                 json{{"note", "eigenvalue 0 present; realization requires E({0}) = 0"}});
    std::cout << pairing.table();
    return report.emit(opts);
  }
  report.add("spectrum_symmetric", true);

  const RealizationBundle bundle = euclidean_realize(h, CircleParameter(beta));

  const double jhj =
      (antiunitary_conjugate(bundle.involution_j, h) + h).norm() / scale;
  report.add("jhj_equals_minus_h", jhj <= opts.identity_tol, json{{"residual", jhj}});
  const double rhr = (bundle.involution_r * h * bundle.involution_r + h).norm() / scale;
  report.add("rhr_equals_minus_h", rhr <= opts.identity_tol, json{{"residual", rhr}});

  const double dilation = dilation_check(bundle, default_verification_grid(beta, 20));
  report.add("dilation_formula", dilation <= opts.identity_tol * scale,
             json{{"residual", dilation}});

  const RPReport rp = check_reflection_positive(bundle.phi, opts.tol);
  report.add("phi_reflection_positive", rp.passed(),
             json{{"kernel_min_eig", rp.kernel_min_eig}});

  const DualModel dual = reconstruct_dual(bundle.phi);
  const RealVector original = eig_hermitian(h).eigenvalues;
  const RealVector recovered = eig_hermitian(dual.generator).eigenvalues;
  double spectrum_gap = 1.0;
  if (original.size() == recovered.size())
    spectrum_gap = (original - recovered).cwiseAbs().maxCoeff() / scale;
  report.add("dual_spectrum_roundtrip", spectrum_gap <= 1e-8, json{{"residual", spectrum_gap}});

  report.note("phi", function_to_json(bundle.phi));
  report.note("involution_j", matrix_to_json(bundle.involution_j.u()));
  report.note("involution_r", matrix_to_json(bundle.involution_r));
  report.note("spectrum", [&] {
    json arr = json::array();
    for (Index i = 0; i < original.size(); ++i) arr.push_back(original[i]);
    return arr;
  }());
  return report.emit(opts);
}

int cmd_standard_roundtrip(const std::string& input_path, const CommonOptions& opts) {
  const ModularPair pair = pair_from_json(load_json(input_path));  // throws SchemaError → exit 2
  ReportBuilder report("standard-roundtrip", opts);

  const StandardSubspace v = pair_to_subspace(pair);
  const TomitaData recovered = subspace_to_tomita(v);

  const double delta_gap = (recovered.pair.delta() - pair.delta()).norm() /
                           std::max(1.0, pair.delta().norm());
  report.add("delta_roundtrip", delta_gap <= 1e-8, json{{"residual", delta_gap}});
  const double j_gap = (recovered.pair.j().u() - pair.j().u()).norm();
  report.add("j_roundtrip", j_gap <= 1e-8, json{{"residual", j_gap}});

  const double angle =
      subspace_angle(v.realified_basis(), pair_to_subspace(recovered.pair).realified_basis());
  report.add("subspace_roundtrip_angle", angle <= 1e-8, json{{"angle", angle}});

  const LemmaIdentitiesReport lemma =
      check_lemma_identities(v, pair, 100, static_cast<unsigned>(opts.seed));
  report.add("tomita_identities", lemma.max_identity_residual() <= opts.identity_tol,
             json{{"s_involution", lemma.s_involution},
                  {"sstar_vs_jsj", lemma.sstar_vs_jsj},
                  {"fix_sstar_angle", lemma.fix_sstar_angle},
                  {"orthogonal_angle", lemma.orthogonal_angle},
                  {"symplectic_angle", lemma.symplectic_angle},
                  {"graph_norm_defect", lemma.graph_norm_defect}});

  // ⟨·,·⟩ real on V×V ⇔ Δ = 1
  const bool delta_is_identity = lemma.delta_vs_identity <= 1e-8;
  const bool product_real = lemma.reality_defect <= 1e-8;
  report.add("reality_iff_delta_identity", delta_is_identity == product_real,
             json{{"delta_vs_identity", lemma.delta_vs_identity},
                  {"reality_defect", lemma.reality_defect}});

  report.note("subspace_basis", matrix_to_json(v.basis()));
  return report.emit(opts);
}

int cmd_kms(const std::string& input_path, int n_samples, const std::string& csv_path,
            const std::string& state_path, const CommonOptions& opts) {
  const GibbsSystem sys = gibbs_from_json(load_json(input_path));
  ReportBuilder report("kms", opts);
  std::mt19937_64 rng(opts.seed);
  const Index n = sys.n();

  if (!state_path.empty()) {
    // detector mode: verify the KMS boundary identity against a caller state
    const ComplexMatrix state = state_from_json(load_json(state_path), n);
    ComplexMatrix a;
    if (n == 2) {
      a = ComplexMatrix::Zero(2, 2);
      a(0, 1) = 1.0;
      a(1, 0) = 1.0;
    } else {
      a = hermitize(random_complex(n, rng));
    }
    double worst = 0.0;
    for (const double t : {0.0, 0.5, 1.0})
      worst = std::max(worst, kms_residual(sys, a, a, t, &state) /
                                  std::max(1.0, a.norm() * a.norm()));
    report.add("state_satisfies_kms", worst <= 1e-8, json{{"max_residual", worst}});
    return report.emit(opts);
  }

  // KMS boundary identity for the Gibbs state
  double worst_kms = 0.0;
  std::uniform_real_distribution<double> tdist(-2.0, 2.0);
  for (int s = 0; s < std::max(1, n_samples); ++s) {
    const ComplexMatrix a = random_complex(n, rng);
    const ComplexMatrix b = random_complex(n, rng);
    const double t = tdist(rng);
    worst_kms =
        std::max(worst_kms, kms_residual(sys, a, b, t) / std::max(1.0, a.norm() * b.norm()));
  }
  report.add("kms_identity", worst_kms <= opts.identity_tol, json{{"max_residual", worst_kms}});

  // ψ positive definiteness on a grid
  {
    const std::vector<double> grid{0.0, 0.7, 1.3};
    const Index block = n * n;
    ComplexMatrix gram(3 * block, 3 * block);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j)
        gram.block(i * block, j * block, block, block) =
            psi_matrix(sys, Complex(grid[static_cast<std::size_t>(i)] -
                                        grid[static_cast<std::size_t>(j)],
                                    0.0));
    const PsdCertificate cert = psd_certificate(hermitize(gram), opts.tol);
    report.add("psi_positive_definite", cert.is_psd, json{{"min_eig", cert.min_eig}});
  }

  // analytic continuation identities
  {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
      const ComplexMatrix a = random_complex(n, rng);
      const ComplexMatrix b = random_complex(n, rng);
      const AncontReport anc = kms_ancont_check(sys, a, b, tdist(rng));
      worst = std::max({worst, anc.boundary_residual, anc.strip_residual});
    }
    report.add("analytic_continuation", worst <= opts.identity_tol,
               json{{"max_residual", worst}});
  }

  // φ^{A,A} certificates and CSV curves
  {
    std::vector<CircleRPFunction> curves;
    if (n == 2) {
      ComplexMatrix sx = ComplexMatrix::Zero(2, 2);
      sx(0, 1) = 1.0;
      sx(1, 0) = 1.0;
      curves.push_back(rp_from_kms(sys, sx));
    }
    while (static_cast<int>(curves.size()) < std::max(1, n_samples)) {
      curves.push_back(rp_from_kms(sys, hermitize(random_complex(n, rng))));
    }
    bool all_pass = true;
    double worst_margin = 0.0;
    for (const CircleRPFunction& phi : curves) {
      const RPReport rp = check_reflection_positive(phi, opts.tol);
      all_pass = all_pass && rp.passed();
      worst_margin = std::min(worst_margin, rp.kernel_min_eig);
    }
    report.add("rp_from_kms_certified", all_pass, json{{"worst_kernel_min_eig", worst_margin}});

    if (!csv_path.empty()) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "t";
      for (std::size_t c = 0; c < curves.size(); ++c) csv << ",phi_" << c;
      csv << "\n";
      const int rows = 101;
      for (int r = 0; r < rows; ++r) {
        const double t = sys.beta() * static_cast<double>(r) / (rows - 1);
        csv << t;
        for (const CircleRPFunction& phi : curves) csv << "," << eval(phi, t)(0, 0).real();
        csv << "\n";
      }
      write_file(csv_path, csv.str());
    }
  }

  // Tomita–Takesaki data
  {
    const TomitaGibbsResult tomita = tomita_from_gibbs(sys, 20, static_cast<unsigned>(opts.seed));
    report.add("tomita_cross_checks", tomita.max_residual() <= opts.identity_tol * 100,
               json{{"delta_residual", tomita.delta_residual},
                    {"j_residual", tomita.j_residual},
                    {"commutant_residual", tomita.commutant_residual},
                    {"flow_residual", tomita.flow_residual},
                    {"flow_convention", tomita.flow_convention}});

    // Δ eigenvalues are the Boltzmann ratios e^{-β(E_i - E_j)}
    std::vector<double> ratios;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        ratios.push_back(std::exp(-sys.beta() * (sys.h_spec().eigenvalues[i] -
                                                 sys.h_spec().eigenvalues[j])));
    std::sort(ratios.begin(), ratios.end());
    double gap = 0.0;
    for (Index k = 0; k < tomita.delta_eigenvalues.size(); ++k)
      gap = std::max(gap, std::abs(tomita.delta_eigenvalues[k] -
                                   ratios[static_cast<std::size_t>(k)]) /
                              std::max(1.0, ratios[static_cast<std::size_t>(k)]));
    report.add("boltzmann_ratios", gap <= opts.identity_tol, json{{"max_gap", gap}});
  }
  return report.emit(opts);
}

int cmd_fit(const std::string& csv_path, const std::string& lambda_spec, double beta,
            const std::string& out_path, const CommonOptions& opts) {
  const SampleTable table = samples_from_csv(read_file(csv_path));
  if (table.times.size() < 2) throw SchemaError("fit: need at least 2 samples");
  const RealVector lambda_grid = parse_lambda_grid(lambda_spec);
  if (!(beta > 0.0)) throw SchemaError("fit: beta must be positive");

  ReportBuilder report("fit", opts);
  const FitResult fit =
      fit_measure(table.times, table.values, lambda_grid, CircleParameter(beta));

  report.add("fit_completed", true,
             json{{"residual", fit.residual},
                  {"rel_residual", fit.rel_residual},
                  {"iterations", fit.iterations},
                  {"converged", fit.converged},
                  {"atoms", fit.mu_plus.size()}});
  if (fit.rel_residual > 1e-8)
    report.note("warning", "residual above 1e-8: data is noisy or off-grid");
  report.note("mu_plus", measure_to_json(fit.mu_plus));

  if (!out_path.empty()) {
    json out = measure_to_json(fit.mu_plus);
    out["schema_version"] = kSchemaVersion;
    out["beta"] = beta;
    out["residual"] = fit.residual;
    write_file(out_path, out.dump(2) + "\n");
  }
  return report.emit(opts);
}

}  // namespace rpcirc::cli
