#include "schurmix/model_json.hpp"

#include <cstdint>
#include <fstream>

#include "schurmix/detail/format.hpp"

namespace schurmix {

namespace {

Eigen::MatrixXd read_matrix(const nlohmann::json& j, const std::string& key) {
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.empty())
    throw InputError("model json: '" + key + "' must be a nonempty array of rows");
  const auto rows = arr.size();
  if (!arr[0].is_array() || arr[0].empty())
    throw InputError("model json: '" + key + "' rows must be nonempty arrays");
  const auto cols = arr[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = arr[i];
    if (!row.is_array() || row.size() != cols)
      throw InputError("model json: '" + key + "' rows must all have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row[k].is_number())
        throw InputError("model json: '" + key + "' entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  return m;
}

double read_real(const nlohmann::json& j, const char* key) {
  if (!j.at(key).is_number()) throw InputError(std::string("model json: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int read_int(const nlohmann::json& j, const char* key) {
  if (!j.at(key).is_number_integer())
    throw InputError(std::string("model json: '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

ModelInput load_model(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("model json: top level must be an object");
  const std::string hash = json_hash(j);
  try {
    if (j.contains("M") || j.contains("Sigma")) {
      if (!(j.contains("M") && j.contains("Sigma")))
        throw InputError("model json: full form needs both 'M' and 'Sigma'");
      GaussianMatrixSpec spec(read_matrix(j, "M"), read_matrix(j, "Sigma"));
      DerivedParams params = derive_params(spec);
      return ModelInput{std::move(spec), std::move(params), false, hash};
    }
    if (j.contains("nu") || j.contains("lambda") || j.contains("tau")) {
      for (const char* key : {"nu", "p", "lambda", "tau"})
        if (!j.contains(key))
          throw InputError(std::string("model json: direct form needs '") + key + "'");
      const int nu = read_int(j, "nu"), p = read_int(j, "p");
      const double lambda = read_real(j, "lambda"), tau = read_real(j, "tau");
      return ModelInput{canonical_spec(nu, p, lambda, tau), direct_params(nu, p, lambda, tau),
                        true, hash};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model json: ") + e.what());
  }
  throw InputError("model json: expected either {M, Sigma} or {nu, p, lambda, tau}");
}

ModelInput load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("model json parse error in " + path + ": " + e.what());
  }
  return load_model(j);
}

nlohmann::json params_to_json(const DerivedParams& params) {
  return nlohmann::json{{"case", to_string(params.kind)}, {"nu", params.nu},
                        {"p", params.p},                  {"n", params.n()},
                        {"sigma112", params.sigma112},    {"lambda", params.lambda},
                        {"tau", params.tau}};
}

std::string json_hash(const nlohmann::json& j) {
  const std::string dump = j.dump();  // object keys are sorted by the container
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string("fnv1a:") + buf;
}

}  // namespace schurmix
