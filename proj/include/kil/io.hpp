#pragma once

#include <string>

#include "kil/incidence.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace kil {

using Json = nlohmann::json;

// {p, points: [[...]], planes: [[...]], weights?: {points, planes}}
Json arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const Json& j, const Fp& F);

// one row per point, canonical coordinates
std::string points_to_csv(const std::vector<ProjPoint>& pts);

// write-to-temp then rename; no partial artifact survives a failure
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);  // MissingArtifact when absent

inline constexpr const char* kCsvSchema = "kil.v1";

struct CsvRow {
  u64 p = 0;
  u64 seed = 0;
  u64 n = 0;  // instance size, construction specific
  std::string statistic;
  std::string value;
  std::string bound_expression;
  std::string ratio;
};

std::string rows_to_csv(const std::vector<CsvRow>& rows);
std::vector<CsvRow> rows_from_csv(const std::string& content);  // validates the schema header

}  // namespace kil
