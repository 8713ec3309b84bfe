#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rpcirc/kms.hpp"
#include "rpcirc/measure.hpp"
#include "rpcirc/rpfunc.hpp"
#include "rpcirc/standard_subspace.hpp"

namespace rpcirc::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class SchemaError : public Error {
 public:
  using Error::Error;
};

// Rejects unknown fields: every key of `obj` must appear in `allowed`.
void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& where);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& where);

// {"dim": d, "atoms": [{"lambda": x, "weight_re": [[...]], "weight_im": [[...]]}]}
json measure_to_json(const AtomicOperatorMeasure& mu);
AtomicOperatorMeasure measure_from_json(const json& j, const std::string& where);

json function_to_json(const CircleRPFunction& phi);
CircleRPFunction function_from_json(const json& j);

GibbsSystem gibbs_from_json(const json& j);
json gibbs_to_json(const GibbsSystem& sys);

ModularPair pair_from_json(const json& j);
json pair_to_json(const ModularPair& pair);

// density matrix from {"rho": matrix} or {"probabilities": [...]}
ComplexMatrix state_from_json(const json& j, Index n);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

json load_json(const std::string& path);

// CSV of samples: header "t,phi" (scalar) or "t,re_0_0,im_0_0,…" (row-major
// entries).  Returns times and matrices.
struct SampleTable {
  RealVector times;
  std::vector<ComplexMatrix> values;
};
SampleTable samples_from_csv(const std::string& text);
std::string samples_to_csv(const RealVector& times, const std::vector<ComplexMatrix>& values);

}  // namespace rpcirc::cli
