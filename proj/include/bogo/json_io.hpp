#pragma once

#include <string>

#include <json.hpp>

namespace bogo {

/// Compact JSON with sorted keys and every floating-point value printed with
/// 17 significant digits (bit-faithful round trip). Non-finite floats become null.
std::string dump_canonical(const nlohmann::json& j);

/// Same formatting rules, pretty-printed with two-space indentation.
std::string dump_pretty(const nlohmann::json& j);

/// printf("%.17g") of a double.
std::string format_double(double x);

}  // namespace bogo
