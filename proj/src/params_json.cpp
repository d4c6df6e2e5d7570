#include "stacknash/params_json.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "stacknash/errors.hpp"

namespace stacknash {

namespace {

using Field = std::pair<const char*, double ModelParams::*>;

constexpr std::array<Field, 12> kFields{{
    {"delta0", &ModelParams::delta0},
    {"delta1", &ModelParams::delta1},
    {"delta2", &ModelParams::delta2},
    {"lambda1", &ModelParams::lambda1},
    {"lambda2", &ModelParams::lambda2},
    {"mu", &ModelParams::mu},
    {"sigma", &ModelParams::sigma},
    {"c", &ModelParams::c},
    {"horizon", &ModelParams::horizon},
    {"x0", &ModelParams::x0},
    {"x1", &ModelParams::x1},
    {"x2", &ModelParams::x2},
}};

}  // namespace

ModelParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidParams("params must be a JSON object");
  ModelParams params;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, member] : kFields) {
      if (key != name) continue;
      if (!value.is_number()) throw InvalidParams("field '" + key + "' must be a number");
      params.*member = value.get<double>();
      known = true;
      break;
    }
    if (!known) throw InvalidParams("unknown field '" + key + "'");
  }
  return params;
}

nlohmann::json params_to_json(const ModelParams& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, member] : kFields) j[name] = params.*member;
  return j;
}

ModelParams parse_params(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParams(std::string("malformed JSON: ") + e.what());
  }
  return params_from_json(j);
}

std::string render_params(const ModelParams& params) { return params_to_json(params).dump(2); }

ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open params file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_params(buf.str());
}

nlohmann::json equilibrium_to_json(const Equilibrium& eq) {
  return {
      {"theta1", eq.theta_star.theta1},
      {"theta2", eq.theta_star.theta2},
      {"p1", eq.p_star.p1},
      {"p2", eq.p_star.p2},
      {"residual", eq.residual},
      {"f0_rate", eq.f0_rate},
      {"f1_rate", eq.f1_rate},
      {"f2_rate", eq.f2_rate},
      {"iterations", eq.iterations},
  };
}

}  // namespace stacknash
