#include "nvdressed/config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nvdressed/errors.hpp"

namespace nvdressed {

namespace {

using nlohmann::json;

struct ConstantKey {
  const char* name;
  double PhysicalConstants::*member;
};

constexpr ConstantKey kConstantKeys[] = {
    {"D_gs_MHz", &PhysicalConstants::d_gs},
    {"d_perp_MHz_per_Vcm", &PhysicalConstants::d_perp},
    {"d_par_MHz_per_Vcm", &PhysicalConstants::d_par},
    {"gamma_e_MHz_per_mT", &PhysicalConstants::gamma_e},
    {"gamma_n_MHz_per_mT", &PhysicalConstants::gamma_n},
    {"A_par_MHz", &PhysicalConstants::a_par},
    {"A_perp_MHz", &PhysicalConstants::a_perp},
    {"Q_MHz", &PhysicalConstants::quadrupole},
};

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

std::array<double, 3> triple(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + " must be an array of 3 numbers");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

}  // namespace

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  RunConfig cfg = base;
  for (const auto& [key, value] : root.items()) {
    if (key == "constants") {
      if (!value.is_object()) throw ConfigError("'constants' must be an object");
      for (const auto& [ck, cv] : value.items()) {
        bool known = false;
        for (const auto& k : kConstantKeys) {
          if (ck != k.name) continue;
          cfg.constants.*k.member = number(cv, "constants." + ck);
          known = true;
        }
        if (!known) throw ConfigError("unknown key 'constants." + ck + "'");
      }
    } else if (key == "fields") {
      if (!value.is_object()) throw ConfigError("'fields' must be an object");
      for (const auto& [fk, fv] : value.items()) {
        if (fk == "B_mT") {
          const auto b = triple(fv, "fields.B_mT");
          cfg.fields.b_x = b[0];
          cfg.fields.b_y = b[1];
          cfg.fields.b_par = b[2];
        } else if (fk == "Pi_Vcm") {
          const auto p = triple(fv, "fields.Pi_Vcm");
          cfg.fields.pi_x = p[0];
          cfg.fields.pi_y = p[1];
          cfg.fields.pi_par = p[2];
        } else {
          throw ConfigError("unknown key 'fields." + fk + "'");
        }
      }
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  try {
    cfg.constants.validate();
    cfg.fields.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::string(env);
  return std::nullopt;
}

std::string config_to_json(const RunConfig& cfg, int indent) {
  json c = json::object();
  for (const auto& k : kConstantKeys) c[k.name] = cfg.constants.*k.member;
  json root;
  root["constants"] = c;
  root["fields"] = {
      {"B_mT", {cfg.fields.b_x, cfg.fields.b_y, cfg.fields.b_par}},
      {"Pi_Vcm", {cfg.fields.pi_x, cfg.fields.pi_y, cfg.fields.pi_par}},
  };
  return root.dump(indent);
}

}  // namespace nvdressed
