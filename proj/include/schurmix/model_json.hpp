#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "schurmix/model.hpp"

namespace schurmix {

// A model read from JSON. Either form yields a simulatable spec and the
// derived parameters; `direct` records which form was given.
struct ModelInput {
  GaussianMatrixSpec spec;
  DerivedParams params;
  bool direct = false;
  std::string hash;  // fnv1a over the canonicalized input
};

// Accepted forms:
//   full:   {"M": [[...], ...], "Sigma": [[...], ...]}   (n x p and p x p)
//   direct: {"nu": int, "p": int, "lambda": real, "tau": real}
// Anything else raises InputError.
ModelInput load_model(const nlohmann::json& j);
ModelInput load_model_file(const std::string& path);

nlohmann::json params_to_json(const DerivedParams& params);

// FNV-1a (64-bit) of a canonical dump; stable across key order.
std::string json_hash(const nlohmann::json& j);

}  // namespace schurmix
