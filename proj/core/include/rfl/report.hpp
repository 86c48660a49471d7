#pragma once

// Experiment reports: one CSV row per record, plus a JSON summary.
// CSV columns: experiment,level,z.re,z.im,radius,value.re,value.im,bound,pass

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfl/geometry.hpp"
#include "rfl/quadrature.hpp"

namespace rfl {

struct Record {
  std::string experiment;
  int level = 0;
  Point z;
  double radius = 0.0;
  Complex value;
  double bound = 0.0;
  bool pass = true;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Record> records;
  nlohmann::json summary = nlohmann::json::object();
  bool pass = true;
};

std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

// Writes <dir>/<name>.csv and/or <dir>/<name>.json. Returns the paths written.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                                bool csv, bool json);

}  // namespace rfl
