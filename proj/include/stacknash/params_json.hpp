#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "stacknash/model.hpp"

namespace stacknash {

// Field names are the ModelParams member names. Unknown keys are rejected;
// absent keys keep their default value.
ModelParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ModelParams& params);

ModelParams parse_params(std::string_view text);
std::string render_params(const ModelParams& params);
ModelParams load_params_file(const std::string& path);

nlohmann::json equilibrium_to_json(const Equilibrium& eq);

}  // namespace stacknash
