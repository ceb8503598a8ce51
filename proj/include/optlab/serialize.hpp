#pragma once

#include <string>

#include <json.hpp>

#include "optlab/families.hpp"
#include "optlab/lowerbound.hpp"
#include "optlab/properties.hpp"

namespace optlab {

using json = nlohmann::json;

// Doubles are emitted with shortest round-trip formatting, so parsing
// the document back reproduces the exact 64-bit values.
json params_to_json(const HardFamilyParams& p);
HardFamilyParams params_from_json(const json& j);

json report_to_json(const CheckReport& r);
json game_to_json(const GameResult& g);

// Minimal TOML reader covering the config subset used here:
// [section] headers, key = value with strings, bools, integers, floats,
// and flat arrays. Returns the equivalent JSON object.
json toml_lite_parse(const std::string& text);

// Dispatch on extension: .toml via toml_lite_parse, otherwise JSON.
json load_config_file(const std::string& path);

}  // namespace optlab
