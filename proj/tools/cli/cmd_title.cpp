#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "common.hpp"
#include "podseg/error.hpp"
#include "podseg/summarizer.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

int cmd_title(const TitleOptions& o, Context& ctx) {
  if (o.endpoint.empty()) throw ConfigError("--endpoint is required");
  if (!(o.timeout_s > 0.0)) throw ConfigError("--timeout must be positive");

  ClientConfig cfg;
  cfg.endpoint = o.endpoint;
  cfg.timeout = std::chrono::milliseconds(static_cast<long long>(std::llround(o.timeout_s * 1000.0)));
  cfg.max_retries = o.retries;
  cfg.max_title_words = o.max_title_words;
  cfg.max_request_chars = o.max_request_chars;
  cfg.backoff_base = std::chrono::milliseconds(o.backoff_ms);
  cfg.max_in_flight = o.jobs;
  if (const char* token = std::getenv("PODSEG_AUTH_TOKEN"); token != nullptr && *token != '\0') {
    cfg.auth_token = token;
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  RunManifest manifest = make_manifest("title");
  manifest.config["endpoint"] = o.endpoint;
  manifest.config["timeout_s"] = o.timeout_s;
  manifest.config["retries"] = o.retries;
  manifest.config["max_title_words"] = o.max_title_words;
  manifest.config["max_request_chars"] = o.max_request_chars;
  manifest.config["authenticated"] = cfg.auth_token.has_value();
  manifest.add_input(o.transcript);
  manifest.add_input(o.annotation);

  const Transcript transcript = load_input(o.transcript, o.input_format);
  const Segmentation seg = load_annotations(o.annotation);
  if (seg.total() != transcript.size()) {
    throw Error(ErrorCode::LengthMismatch, o.annotation + " covers " + std::to_string(seg.total()) +
                                               " sentences but the transcript has " +
                                               std::to_string(transcript.size()));
  }

  const auto titled = title_episode(transcript, seg, cfg);

  Report report(std::move(manifest));
  std::size_t failed = 0;
  for (const auto& t : titled) {
    Json rec;
    rec["record"] = "segment";
    rec["episode_id"] = transcript.episode_id();
    rec["index"] = t.index;
    rec["first_sentence"] = t.first_sentence + 1;
    rec["last_sentence"] = t.end_sentence;
    if (t.ok()) {
      rec["title"] = t.title;
      rec["source"] = t.source;
    } else {
      ++failed;
      rec["error"] = std::string(to_string(*t.error));
      rec["message"] = t.error_message;
    }
    rec["truncated"] = t.truncated;
    rec["attempts"] = t.attempts;
    report.add(std::move(rec));
  }
  report.add(Json{{"record", "summary"},
                  {"episode_id", transcript.episode_id()},
                  {"segments", titled.size()},
                  {"titled", titled.size() - failed},
                  {"failed", failed}});

  emit(ctx, report, o.report, [&](std::ostream& out) {
    for (const auto& t : titled) {
      out << std::setw(3) << t.index << "  [" << t.first_sentence + 1 << "-" << t.end_sentence << "]  ";
      if (t.ok()) {
        out << t.title << "\n";
      } else {
        out << "ERROR " << to_string(*t.error) << ": " << t.error_message << "\n";
      }
    }
  });
  if (failed > 0) {
    ctx.err << "podseg title: " << failed << " of " << titled.size() << " segments could not be titled\n";
    return kWarnings;
  }
  return kOk;
}

}  // namespace podseg::cli
