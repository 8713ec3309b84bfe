#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

double env_default_tol() {
  if (const char* raw = std::getenv("RPCIRC_DEFAULT_TOL")) {
    try {
      const double v = std::stod(raw);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid RPCIRC_DEFAULT_TOL\n";
  }
  return rpcirc::kDefaultPsdTol;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rpcirc — reflection positivity on the circle: certificates for "
      "operator-valued functions, euclidean realizations, standard subspaces "
      "and KMS systems.\n"
      "Exit codes: 0 pass, 1 certified failure, 2 input/schema error.\n"
      "RPCIRC_DEFAULT_TOL overrides the default PSD tolerance (1e-9)."};
  app.require_subcommand(1);
  app.fallthrough(true);  // global flags may follow the subcommand name

  rpcirc::cli::CommonOptions opts;
  opts.tol = env_default_tol();
  app.add_option("--tol", opts.tol, "relative PSD tolerance")->capture_default_str();
  app.add_option("--report", opts.report_path, "write the JSON report to this path");
  app.add_option("--seed", opts.seed, "seed for randomized checks")->capture_default_str();

  // check-function
  std::string fn_input, fn_csv;
  int grid_points = 20, fourier_points = 256;
  CLI::App* check = app.add_subcommand(
      "check-function", "certify reflection positivity of a circle function (JSON spec)");
  check->add_option("--input", fn_input, "function JSON")->required();
  check->add_option("--grid", grid_points, "number of interior grid points")
      ->capture_default_str();
  check->add_option("--fourier", fourier_points, "cyclic subgroup size for the DFT certificate")
      ->capture_default_str();
  check->add_option("--csv", fn_csv, "prefix for <prefix>_curve.csv and <prefix>_coeffs.csv");

  // realize
  std::string rz_input;
  double rz_beta = 1.0;
  CLI::App* realize = app.add_subcommand(
      "realize", "euclidean realization of e^{itH} on the circle of length beta");
  realize->add_option("--input", rz_input, "Hermitian matrix JSON ({\"re\":…,\"im\":…})")
      ->required();
  realize->add_option("--beta", rz_beta, "circle length")->capture_default_str();

  // standard-roundtrip
  std::string sr_input;
  CLI::App* standard = app.add_subcommand(
      "standard-roundtrip", "modular pair -> standard subspace -> modular pair");
  standard->add_option("--input", sr_input, "pair JSON ({\"delta\":…,\"j\":…})")->required();

  // kms
  std::string kms_input, kms_csv, kms_state;
  int kms_samples = 5;
  CLI::App* kms = app.add_subcommand("kms", "KMS and Tomita–Takesaki checks for a Gibbs system");
  kms->add_option("--input", kms_input, "system JSON ({\"h\":…,\"beta\":…})")->required();
  kms->add_option("--samples", kms_samples, "random observables per check")
      ->capture_default_str();
  kms->add_option("--csv", kms_csv, "write phi^{A,A} curves to this CSV");
  kms->add_option("--state", kms_state,
                  "detector mode: verify the KMS identity against this state JSON");

  // fit
  std::string fit_csv, fit_lambda, fit_out;
  double fit_beta = 1.0;
  CLI::App* fit = app.add_subcommand("fit", "fit an atomic measure to sampled phi values");
  fit->add_option("--input", fit_csv, "samples CSV (header t,phi or t,re_0_0,im_0_0,…)")
      ->required();
  fit->add_option("--lambda-grid", fit_lambda, "candidate locations: a,b,c or start:step:stop")
      ->required();
  fit->add_option("--beta", fit_beta, "circle length")->capture_default_str();
  fit->add_option("--out", fit_out, "write the fitted measure JSON to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return rpcirc::cli::cmd_check_function(fn_input, grid_points, fourier_points, fn_csv, opts);
    if (realize->parsed()) return rpcirc::cli::cmd_realize(rz_input, rz_beta, opts);
    if (standard->parsed()) return rpcirc::cli::cmd_standard_roundtrip(sr_input, opts);
    if (kms->parsed())
      return rpcirc::cli::cmd_kms(kms_input, kms_samples, kms_csv, kms_state, opts);
    if (fit->parsed())
      return rpcirc::cli::cmd_fit(fit_csv, fit_lambda, fit_beta, fit_out, opts);
  } catch (const rpcirc::cli::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const rpcirc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
