#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frontal/classify.hpp"
#include "frontal/verify.hpp"

namespace frontal {

using Json = nlohmann::ordered_json;

// Everything a run depends on, resolved to concrete values before execution
// and echoed into every report.
struct RunConfig {
  std::string command;
  std::string input;            // as given
  std::string resolved_input;   // "builtin:<name>" or an absolute path
  std::vector<double> at;       // internal axis parameters
  std::vector<std::string> surfaces{"f"};
  int nu = 41, nv = 41;
  std::string out;
  std::string format = "json";
  std::string suite = "default";
  unsigned threads = 1;
  Settings settings;
  ClassifySettings classify;
};

// Resolves input and defaults in place; throws InputError.
void resolve_config(RunConfig& c);
SurfaceDef load_surface(const RunConfig& c);

Json config_json(const RunConfig& c);
Json surface_json(const SurfaceDef& s);

struct AnalyzeResult {
  Json report;
  bool numerical_failure = false;  // the frontal evaluation itself failed somewhere
};
// The timestamp is passed in so that two runs differ only there.
AnalyzeResult analyze(const RunConfig& c, const SurfaceDef& s, const std::string& timestamp);

// One row per axis sample; tolerance columns repeated on every row.
std::string profile_csv(const RunConfig& c, const SurfaceDef& s);

Json rows_json(const RunConfig& c, const std::vector<CheckRow>& rows, const std::string& timestamp);
std::string rows_csv(const std::vector<CheckRow>& rows);
std::string rows_table(const std::vector<CheckRow>& rows);

// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
std::string utc_timestamp();

}  // namespace frontal
