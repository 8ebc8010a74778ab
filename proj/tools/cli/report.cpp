#include "report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "podseg/error.hpp"
#include "podseg/hash.hpp"
#include "podseg/version.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
}

void RunManifest::add_input(const fs::path& path) {
  inputs.push_back({path.string(), sha256_hex(read_text(path))});
}

Json RunManifest::to_json(bool with_timestamp) const {
  Json j;
  j["record"] = "manifest";
  j["command"] = command;
  j["tool_version"] = tool_version;
  j["config"] = config;
  Json files = Json::array();
  for (const auto& input : inputs) files.push_back(Json{{"path", input.path}, {"sha256", input.sha256}});
  j["inputs"] = files;
  if (with_timestamp) j["timestamp"] = timestamp;
  return j;
}

RunManifest make_manifest(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.tool_version = kVersion;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  m.timestamp = ts.str();
  return m;
}

std::string Report::jsonl() const {
  std::string out = manifest_.to_json(false).dump() + "\n";
  for (const auto& record : records_) out += record.dump() + "\n";
  return out;
}

void Report::write(const fs::path& path) const {
  write_text(path, jsonl());
  write_text(path.string() + ".manifest.json", manifest_.to_json(true).dump(2) + "\n");
}

}  // namespace podseg::cli
