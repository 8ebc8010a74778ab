#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "commands.hpp"
#include "podseg/corpus.hpp"
#include "podseg/metrics.hpp"
#include "podseg/text_model.hpp"

namespace podseg::cli {

// Bad flag combinations; maps to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Transcript load_input(const std::filesystem::path& path, const std::string& format_flag);

// "auto" or a positive integer.
WindowConfig parse_window(const std::string& flag);

// <stem> -> path for every *.seg file in dir.
std::map<std::string, std::filesystem::path> annotation_files(const std::filesystem::path& dir);

// Writes the report when a path is given, then prints either the JSONL
// records or the caller's table.
template <typename TableFn>
void emit(Context& ctx, const Report& report, const std::string& path, TableFn&& table) {
  if (!path.empty()) report.write(path);
  if (ctx.format == OutputFormat::Jsonl) {
    ctx.out << report.jsonl();
  } else {
    table(ctx.out);
  }
}

}  // namespace podseg::cli
