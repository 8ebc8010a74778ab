#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace podseg::cli {

using Json = nlohmann::ordered_json;

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kWarnings = 1,
  kInputError = 2,
  kConfigError = 3,
};

struct InputFile {
  std::string path;
  std::string sha256;
};

// Reproducibility envelope embedded at the top of every report. The
// timestamp is kept out of the report body and written to a sidecar file so
// repeated runs produce byte-identical reports.
struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::vector<InputFile> inputs;
  std::string tool_version;
  std::string timestamp;

  void add_input(const std::filesystem::path& path);
  Json to_json(bool with_timestamp) const;
};

RunManifest make_manifest(std::string command);

class Report {
 public:
  explicit Report(RunManifest manifest) : manifest_(std::move(manifest)) {}

  RunManifest& manifest() { return manifest_; }
  void add(Json record) { records_.push_back(std::move(record)); }
  const std::vector<Json>& records() const { return records_; }

  // Manifest line first, then records in insertion order.
  std::string jsonl() const;
  // Writes `path` and `path` + ".manifest.json".
  void write(const std::filesystem::path& path) const;

 private:
  RunManifest manifest_;
  std::vector<Json> records_;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace podseg::cli
