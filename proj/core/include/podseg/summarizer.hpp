#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "podseg/error.hpp"
#include "podseg/text_model.hpp"

namespace podseg {

struct ClientConfig {
  std::string endpoint;  // http(s)://host[:port]/path
  std::chrono::milliseconds timeout{30'000};
  std::size_t max_retries = 2;
  std::size_t max_title_words = 12;
  std::optional<std::string> auth_token;  // sent as a bearer token
  std::chrono::milliseconds backoff_base{1'000};
  double backoff_factor = 2.0;
  std::size_t max_request_chars = 30'000;
  std::size_t max_in_flight = 4;

  void validate() const;
  // Delay before retry number `retry` (1-based): base * factor^(retry - 1).
  std::chrono::milliseconds backoff(std::size_t retry) const;
};

struct HttpResult {
  int status = 0;                // 0 when no response arrived
  std::string body;
  bool timed_out = false;
  std::string transport_error;   // non-empty when no response arrived
};

// One POST per call; implementations must be safe to call concurrently.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResult post(const std::string& url, const std::string& body,
                          const std::map<std::string, std::string>& headers,
                          std::chrono::milliseconds timeout) = 0;
};

// cpp-httplib backed transport; https needs a build with OpenSSL.
class HttpTransport : public Transport {
 public:
  HttpResult post(const std::string& url, const std::string& body, const std::map<std::string, std::string>& headers,
                  std::chrono::milliseconds timeout) override;
};

struct SummaryRequest {
  std::string text;
  std::size_t max_words = 12;
};

std::string encode_request(const SummaryRequest& request);
// Throws BadResponse when the body is not {"title": string, ...}.
std::pair<std::string, std::string> decode_response(std::string_view body);

// Trims and keeps at most max_words whitespace-separated words.
std::string clip_title(std::string_view title, std::size_t max_words);

struct Summary {
  std::string title;
  std::string model;
  std::size_t attempts = 0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Retries timeouts, transport failures and 5xx responses with exponential
// backoff. Throws ServiceUnavailable, EmptyTitle or BadResponse.
Summary summarize_detailed(std::string_view text, const ClientConfig& cfg, Transport& transport,
                           const Sleeper& sleep = {});
std::string summarize(std::string_view text, const ClientConfig& cfg);

struct TitledSegment {
  std::size_t index = 0;
  std::size_t first_sentence = 0;  // zero-based, half-open
  std::size_t end_sentence = 0;
  std::string title;
  std::string source;  // model echoed by the service
  bool truncated = false;
  std::size_t attempts = 0;
  std::optional<ErrorCode> error;
  std::string error_message;

  bool ok() const { return !error.has_value(); }
};

// Raw text of segment j, cut at a sentence boundary to fit max_chars. A first
// sentence longer than the cap is cut mid-text.
std::string segment_request_text(const Transcript& transcript, const Segmentation& seg, std::size_t j,
                                 std::size_t max_chars, bool& truncated);

// One entry per segment in segment order; per-segment failures are recorded
// in the entry rather than thrown.
std::vector<TitledSegment> title_episode(const Transcript& transcript, const Segmentation& seg,
                                         const ClientConfig& cfg, Transport& transport, const Sleeper& sleep = {});
std::vector<TitledSegment> title_episode(const Transcript& transcript, const Segmentation& seg,
                                         const ClientConfig& cfg);

}  // namespace podseg
