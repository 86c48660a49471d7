#include "rfl/report.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rfl {

std::string to_csv(const ExperimentReport& report) {
  std::string out = "experiment,level,z.re,z.im,radius,value.re,value.im,bound,pass\n";
  for (const auto& r : report.records)
    out += fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", r.experiment, r.level,
                       r.z.real(), r.z.imag(), r.radius, r.value.real(), r.value.imag(), r.bound,
                       r.pass ? 1 : 0);
  return out;
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["experiment"] = report.name;
  j["parameters"] = report.parameters;
  j["summary"] = report.summary;
  j["records"] = report.records.size();
  std::size_t failed = 0;
  for (const auto& r : report.records) failed += r.pass ? 0 : 1;
  j["failed_records"] = failed;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                                bool csv, bool json) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& ext, const std::string& body) {
    const auto path = dir / (report.name + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    f << body;
    written.push_back(path);
  };
  if (csv) emit(".csv", to_csv(report));
  if (json) emit(".json", to_json(report));
  return written;
}

}  // namespace rfl
