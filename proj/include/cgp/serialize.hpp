#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cgp/evolution.hpp"
#include "cgp/genome.hpp"

namespace cgp {

/// Flat text form:
///   # inputs=I outputs=O nodes=N arity=2 function_set=boolean
///   <pos> <function_id> <conn_0> <conn_1>     one line per computational node
///   out_<i> <conn>                            one line per output
std::string to_flat(const Genotype& genome);
/// Inverse of to_flat. Malformed input throws ConfigError naming the line.
Genotype parse_flat(std::string_view text);

/// Bitmap as a string of '0'/'1', position 0 first.
std::string bitmap_string(const std::vector<std::uint8_t>& bits);

/// Result fields only; the caller merges in the effective config. The final
/// genome is not serialized.
nlohmann::ordered_json run_result_to_json(const RunResult& result);
/// Reads the fields written by run_result_to_json; throws ConfigError on missing keys.
RunResult run_result_from_json(const nlohmann::json& record);

}  // namespace cgp
