#pragma once

#include <string>

#include <json.hpp>

#include "heckespan/bounds.hpp"
#include "heckespan/spanrank.hpp"
#include "heckespan/stsums.hpp"

namespace heckespan::report {

using nlohmann::json;

inline constexpr const char* kSchemaSpan = "heckespan-report-span-1";
inline constexpr const char* kSchemaBound = "heckespan-report-bound-1";
inline constexpr const char* kSchemaST = "heckespan-report-stsums-1";
inline constexpr const char* kSchemaChecks = "heckespan-report-checks-1";
inline constexpr const char* kSchemaDetsum = "heckespan-report-detsum-1";

json to_json(const spanrank::SpanReport& r);
json to_json(const bounds::BoundResult& r, const bounds::BoundInput& in);
json to_json(const stsums::STReport& r);

// tabular CSV for any flat json array of objects
std::string csv_of(const json& array);

}  // namespace heckespan::report
