#pragma once

#include <string>

#include "cli/io.hpp"

namespace rpcirc::cli {

struct CommonOptions {
  std::string report_path;  // empty: stdout only
  double tol = kDefaultPsdTol;
  double identity_tol = 1e-10;
  unsigned long long seed = 0;
};

// exit codes: 0 pass, 1 certified failure, 2 input/schema error
int cmd_check_function(const std::string& input_path, int grid_points, int fourier_points,
                       const std::string& csv_prefix, const CommonOptions& opts);

int cmd_realize(const std::string& input_path, double beta, const CommonOptions& opts);

int cmd_standard_roundtrip(const std::string& input_path, const CommonOptions& opts);

int cmd_kms(const std::string& input_path, int n_samples, const std::string& csv_path,
            const std::string& state_path, const CommonOptions& opts);

int cmd_fit(const std::string& csv_path, const std::string& lambda_spec, double beta,
            const std::string& out_path, const CommonOptions& opts);

// "a,b,c" or "start:step:stop"
RealVector parse_lambda_grid(const std::string& spec);

}  // namespace rpcirc::cli
