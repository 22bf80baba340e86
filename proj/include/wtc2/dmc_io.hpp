#pragma once

#include <string>

#include <json.hpp>

#include "wtc2/dmc_sim.hpp"

namespace wtc2 {

struct DmcDocument {
    DmcSpec dmc;
    PrefixSpec prefix;
};

/// Reads {"alphabets": {"x1","x2","y1","y2","z"}, "tensor": ..., "prefix1": ...,
/// "prefix2": ...}. The tensor is either flat row-major [x1][x2][y1][y2][z] or
/// nested five levels deep; a missing prefix is the identity. Unknown keys and
/// shape mismatches throw ConfigError, probability violations ParameterError.
DmcDocument parse_dmc(const nlohmann::json& j);
DmcDocument load_dmc_file(const std::string& path);

nlohmann::json dmc_to_json(const DmcDocument& doc);

/// Stable-order JSON for a threshold experiment.
nlohmann::ordered_json threshold_to_json(const ThresholdTable& table, std::uint64_t seed);

}  // namespace wtc2
