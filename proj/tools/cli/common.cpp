#include "common.hpp"

#include <charconv>

#include "podseg/error.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

Transcript load_input(const fs::path& path, const std::string& format_flag) {
  if (format_flag == "auto") return load_transcript(path);
  TranscriptFormat format;
  try {
    format = parse_transcript_format(format_flag);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return load_transcript(path, format);
}

WindowConfig parse_window(const std::string& flag) {
  if (flag == "auto") return WindowConfig::half_mean_segment();
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(flag.data(), flag.data() + flag.size(), k);
  if (ec != std::errc{} || ptr != flag.data() + flag.size() || k < 1) {
    throw ConfigError("--window expects 'auto' or a positive integer, got '" + flag + "'");
  }
  return WindowConfig::explicit_width(k);
}

std::map<std::string, fs::path> annotation_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".seg") {
      out.emplace(entry.path().stem().string(), entry.path());
    }
  }
  return out;
}

}  // namespace podseg::cli
