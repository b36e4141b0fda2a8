#pragma once

// JSON run configuration. Units are part of the key names:
//   {"constants": {"D_gs_MHz": ..., "d_perp_MHz_per_Vcm": ..., "d_par_MHz_per_Vcm": ...,
//                  "gamma_e_MHz_per_mT": ..., "gamma_n_MHz_per_mT": ...,
//                  "A_par_MHz": ..., "A_perp_MHz": ..., "Q_MHz": ...},
//    "fields": {"B_mT": [Bx, By, Bpar], "Pi_Vcm": [Px, Py, Ppar]}}
// Every key is optional; missing ones keep the base value. Unknown keys are
// rejected with ConfigError.

#include <optional>
#include <string>
#include <string_view>

#include "nvdressed/spin_core.hpp"

namespace nvdressed {

inline constexpr const char* kConfigEnvVar = "NV_DRESSED_CONFIG";

struct RunConfig {
  PhysicalConstants constants;
  FieldConfiguration fields;
};

RunConfig parse_config(std::string_view json_text, const RunConfig& base = {});
RunConfig load_config(const std::string& path, const RunConfig& base = {});

/// Explicit path if given, else $NV_DRESSED_CONFIG if set and non-empty.
std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path);

/// Serializes with the same schema, 17 significant digits.
std::string config_to_json(const RunConfig& cfg, int indent = 2);

}  // namespace nvdressed
