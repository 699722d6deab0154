#pragma once

#include <json.hpp>
#include <string>

#include "zetaglue/glue.hpp"

namespace zetaglue {

inline constexpr const char* kToolVersion = "zetaglue-0.1.0";

nlohmann::json report_rows_to_json(const Report& report);
Report report_rows_from_json(const nlohmann::json& rows);

// identity, r, lhs, rhs, residual, tolerance, pass
std::string report_to_csv(const Report& report);

std::string format_complex(Complex v);

}  // namespace zetaglue
