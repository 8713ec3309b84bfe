#include "cli/io.hpp"

#include <fstream>
#include <sstream>

namespace rpcirc::cli {

void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const std::string& name : allowed) ok = ok || key == name;
    if (!ok) throw SchemaError(where + ": unknown field \"" + key + "\"");
  }
}

namespace {

RealMatrix real_part_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty 2-d array");
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).size();
  RealMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw SchemaError(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row.at(c).is_number()) throw SchemaError(where + ": entry is not a number");
      m(static_cast<Index>(r), static_cast<Index>(c)) = row.at(c).get<double>();
    }
  }
  return m;
}

json real_part_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  return json{{"re", real_part_to_json(m.real())}, {"im", real_part_to_json(m.imag())}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  expect_keys(j, {"re", "im"}, where);
  if (!j.contains("re")) throw SchemaError(where + ": missing \"re\"");
  const RealMatrix re = real_part_from_json(j.at("re"), where + ".re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = real_part_from_json(j.at("im"), where + ".im");
    if (im.rows() != re.rows() || im.cols() != re.cols())
      throw SchemaError(where + ": re/im shape mismatch");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json measure_to_json(const AtomicOperatorMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) {
    atoms.push_back(json{{"lambda", a.lambda},
                         {"weight_re", real_part_to_json(a.weight.real())},
                         {"weight_im", real_part_to_json(a.weight.imag())}});
  }
  return json{{"dim", mu.dim()}, {"atoms", std::move(atoms)}};
}

AtomicOperatorMeasure measure_from_json(const json& j, const std::string& where) {
  expect_keys(j, {"dim", "atoms"}, where);
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw SchemaError(where + ": missing integer \"dim\"");
  const Index dim = j.at("dim").get<Index>();
  if (dim <= 0) throw SchemaError(where + ": dim must be positive");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw SchemaError(where + ": \"atoms\" must be an array");
    for (const json& entry : j.at("atoms")) {
      expect_keys(entry, {"lambda", "weight_re", "weight_im"}, where + ".atoms[]");
      if (!entry.contains("lambda") || !entry.at("lambda").is_number())
        throw SchemaError(where + ": atom missing numeric \"lambda\"");
      if (!entry.contains("weight_re")) throw SchemaError(where + ": atom missing \"weight_re\"");
      const RealMatrix re = real_part_from_json(entry.at("weight_re"), where + ".weight_re");
      RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
      if (entry.contains("weight_im"))
        im = real_part_from_json(entry.at("weight_im"), where + ".weight_im");
      if (re.rows() != dim || re.cols() != dim || im.rows() != dim || im.cols() != dim)
        throw SchemaError(where + ": weight shape must be dim x dim");
      ComplexMatrix w(dim, dim);
      w.real() = re;
      w.imag() = im;
      atoms.push_back(Atom{entry.at("lambda").get<double>(), std::move(w)});
    }
  }
  try {
    return AtomicOperatorMeasure(dim, std::move(atoms));
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

json function_to_json(const CircleRPFunction& phi) {
  json out{{"schema_version", kSchemaVersion}, {"beta", phi.beta()}, {"dim", phi.dim()}};
  switch (phi.backing()) {
    case CircleRPFunction::Backing::kMeasure:
      out["backing"] = "measure";
      out["mu_plus"] = measure_to_json(phi.mu_plus());
      break;
    case CircleRPFunction::Backing::kGenerator:
      out["backing"] = "generator";
      out["generator"] = matrix_to_json(phi.generator());
      break;
    case CircleRPFunction::Backing::kSample: {
      out["backing"] = "samples";
      const SampleBacked& s = phi.samples();
      json grid = json::array();
      for (Index i = 0; i < s.grid.size(); ++i) grid.push_back(s.grid[i]);
      json values = json::array();
      for (const ComplexMatrix& v : s.values) values.push_back(matrix_to_json(v));
      out["samples"] = json{{"grid", std::move(grid)}, {"values", std::move(values)}};
      break;
    }
  }
  return out;
}

CircleRPFunction function_from_json(const json& j) {
  expect_keys(j, {"schema_version", "beta", "dim", "backing", "mu_plus", "generator", "samples"},
              "function");
  if (!j.contains("beta") || !j.at("beta").is_number())
    throw SchemaError("function: missing numeric \"beta\"");
  if (!j.contains("backing") || !j.at("backing").is_string())
    throw SchemaError("function: missing string \"backing\"");
  double beta_value = j.at("beta").get<double>();
  if (!(beta_value > 0.0)) throw SchemaError("function: beta must be positive");
  const CircleParameter beta(beta_value);
  const std::string backing = j.at("backing").get<std::string>();

  try {
    if (backing == "measure") {
      if (!j.contains("mu_plus")) throw SchemaError("function: measure backing needs \"mu_plus\"");
      return CircleRPFunction(beta, MeasureBacked{measure_from_json(j.at("mu_plus"), "mu_plus")});
    }
    if (backing == "generator") {
      if (!j.contains("generator"))
        throw SchemaError("function: generator backing needs \"generator\"");
      return CircleRPFunction(beta,
                              GeneratorBacked{matrix_from_json(j.at("generator"), "generator")});
    }
    if (backing == "samples") {
      if (!j.contains("samples")) throw SchemaError("function: sample backing needs \"samples\"");
      const json& s = j.at("samples");
      expect_keys(s, {"grid", "values"}, "samples");
      if (!s.contains("grid") || !s.at("grid").is_array() || !s.contains("values") ||
          !s.at("values").is_array())
        throw SchemaError("samples: need \"grid\" and \"values\" arrays");
      RealVector grid(static_cast<Index>(s.at("grid").size()));
      for (std::size_t i = 0; i < s.at("grid").size(); ++i) {
        if (!s.at("grid").at(i).is_number()) throw SchemaError("samples.grid: not a number");
        grid[static_cast<Index>(i)] = s.at("grid").at(i).get<double>();
      }
      std::vector<ComplexMatrix> values;
      for (const json& v : s.at("values")) values.push_back(matrix_from_json(v, "samples.values"));
      return CircleRPFunction(beta, SampleBacked{std::move(grid), std::move(values)});
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("function: ") + e.what());
  }
  throw SchemaError("function: unknown backing \"" + backing + "\"");
}

GibbsSystem gibbs_from_json(const json& j) {
  expect_keys(j, {"schema_version", "n", "h", "beta"}, "system");
  if (!j.contains("h")) throw SchemaError("system: missing \"h\"");
  if (!j.contains("beta") || !j.at("beta").is_number())
    throw SchemaError("system: missing numeric \"beta\"");
  const ComplexMatrix h = matrix_from_json(j.at("h"), "system.h");
  if (j.contains("n") && j.at("n").get<Index>() != h.rows())
    throw SchemaError("system: \"n\" does not match the size of h");
  try {
    return GibbsSystem(h, j.at("beta").get<double>());
  } catch (const Error& e) {
    throw SchemaError(std::string("system: ") + e.what());
  }
}

json gibbs_to_json(const GibbsSystem& sys) {
  return json{{"schema_version", kSchemaVersion},
              {"n", sys.n()},
              {"h", matrix_to_json(sys.hamiltonian())},
              {"beta", sys.beta()}};
}

ModularPair pair_from_json(const json& j) {
  expect_keys(j, {"schema_version", "delta", "j"}, "pair");
  if (!j.contains("delta") || !j.contains("j"))
    throw SchemaError("pair: need \"delta\" and \"j\"");
  try {
    return ModularPair(matrix_from_json(j.at("delta"), "pair.delta"),
                       AntiUnitaryMap(matrix_from_json(j.at("j"), "pair.j")));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("pair: ") + e.what());
  }
}

json pair_to_json(const ModularPair& pair) {
  return json{{"schema_version", kSchemaVersion},
              {"delta", matrix_to_json(pair.delta())},
              {"j", matrix_to_json(pair.j().u())}};
}

ComplexMatrix state_from_json(const json& j, Index n) {
  expect_keys(j, {"schema_version", "rho", "probabilities"}, "state");
  if (j.contains("rho")) {
    const ComplexMatrix rho = matrix_from_json(j.at("rho"), "state.rho");
    if (rho.rows() != n) throw SchemaError("state: rho size mismatch");
    return rho;
  }
  if (j.contains("probabilities")) {
    const json& p = j.at("probabilities");
    if (!p.is_array() || static_cast<Index>(p.size()) != n)
      throw SchemaError("state: probabilities must have length n");
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) rho(i, i) = p.at(static_cast<std::size_t>(i)).get<double>();
    return rho;
  }
  throw SchemaError("state: need \"rho\" or \"probabilities\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write " + path);
  out << contents;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("JSON parse error: ") + e.what());
  }
}

SampleTable samples_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("csv: empty input");

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream row(s);
    while (std::getline(row, cell, ',')) out.push_back(cell);
    return out;
  };

  const std::vector<std::string> header = split(line);
  if (header.empty() || header.front() != "t")
    throw SchemaError("csv: first header column must be \"t\"");

  Index dim = 0;
  bool scalar = false;
  if (header.size() == 2 && header[1] == "phi") {
    scalar = true;
    dim = 1;
  } else {
    // columns re_i_j, im_i_j in row-major order
    const std::size_t entries = header.size() - 1;
    if (entries == 0 || entries % 2 != 0)
      throw SchemaError("csv: expected re/im column pairs after t");
    const double d = std::sqrt(static_cast<double>(entries / 2));
    dim = static_cast<Index>(std::llround(d));
    if (static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) * 2 != entries)
      throw SchemaError("csv: entry count is not 2·d²");
  }

  std::vector<double> times;
  std::vector<ComplexMatrix> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) throw SchemaError("csv: row width mismatch");
    times.push_back(std::stod(cells[0]));
    ComplexMatrix m(dim, dim);
    if (scalar) {
      m(0, 0) = std::stod(cells[1]);
    } else {
      std::size_t k = 1;
      for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < dim; ++c) {
          const double re = std::stod(cells[k++]);
          const double im = std::stod(cells[k++]);
          m(r, c) = Complex(re, im);
        }
    }
    values.push_back(std::move(m));
  }
  RealVector t(static_cast<Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) t[static_cast<Index>(i)] = times[i];
  return SampleTable{std::move(t), std::move(values)};
}

std::string samples_to_csv(const RealVector& times, const std::vector<ComplexMatrix>& values) {
  std::ostringstream out;
  out.precision(17);
  const Index dim = values.empty() ? 1 : values.front().rows();
  if (dim == 1) {
    out << "t,phi\n";
    for (Index i = 0; i < times.size(); ++i)
      out << times[i] << "," << values[static_cast<std::size_t>(i)](0, 0).real() << "\n";
    return out.str();
  }
  out << "t";
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) out << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
  out << "\n";
  for (Index i = 0; i < times.size(); ++i) {
    out << times[i];
    const ComplexMatrix& m = values[static_cast<std::size_t>(i)];
    for (Index r = 0; r < dim; ++r)
      for (Index c = 0; c < dim; ++c)
        out << "," << m(r, c).real() << "," << m(r, c).imag();
    out << "\n";
  }
  return out.str();
}

}  // namespace rpcirc::cli
