#include "podseg/summarizer.hpp"

#include <httplib.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <thread>

#include "podseg/parallel.hpp"

namespace podseg {

void ClientConfig::validate() const {
  if (endpoint.empty()) throw Error(ErrorCode::InvalidArgument, "summariser endpoint is not set");
  if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0) {
    throw Error(ErrorCode::InvalidArgument, "endpoint must start with http:// or https://");
  }
  if (timeout.count() <= 0) throw Error(ErrorCode::InvalidArgument, "timeout must be positive");
  if (max_title_words < 1) throw Error(ErrorCode::InvalidArgument, "max title words must be >= 1");
  if (max_request_chars < 1) throw Error(ErrorCode::InvalidArgument, "request cap must be >= 1");
  if (max_in_flight < 1) throw Error(ErrorCode::InvalidArgument, "in-flight cap must be >= 1");
  if (backoff_base.count() < 0 || backoff_factor < 1.0) {
    throw Error(ErrorCode::InvalidArgument, "backoff must be non-negative and non-shrinking");
  }
}

std::chrono::milliseconds ClientConfig::backoff(std::size_t retry) const {
  const double factor = std::pow(backoff_factor, static_cast<double>(retry == 0 ? 0 : retry - 1));
  return std::chrono::milliseconds(static_cast<long long>(std::llround(static_cast<double>(backoff_base.count()) * factor)));
}

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidArgument, "malformed endpoint " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpResult HttpTransport::post(const std::string& url, const std::string& body,
                               const std::map<std::string, std::string>& headers,
                               std::chrono::milliseconds timeout) {
  const ParsedUrl parsed = parse_url(url);
  HttpResult out;
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (parsed.origin.rfind("https://", 0) == 0) {
    out.transport_error = "https endpoints need a build with OpenSSL";
    return out;
  }
#endif
  httplib::Client client(parsed.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers request_headers;
  for (const auto& [name, value] : headers) request_headers.emplace(name, value);
  auto response = client.Post(parsed.path, request_headers, body, "application/json");
  if (!response) {
    const auto err = response.error();
    out.timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
    out.transport_error = httplib::to_string(err);
    return out;
  }
  out.status = response->status;
  out.body = response->body;
  return out;
}

std::string encode_request(const SummaryRequest& request) {
  nlohmann::ordered_json body;
  body["text"] = request.text;
  body["max_words"] = request.max_words;
  return body.dump();
}

std::pair<std::string, std::string> decode_response(std::string_view body) {
  nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(ErrorCode::BadResponse, "response is not a JSON object");
  if (!doc.contains("title") || !doc["title"].is_string()) {
    throw Error(ErrorCode::BadResponse, "response lacks a string 'title'");
  }
  std::string model;
  if (doc.contains("model")) {
    if (!doc["model"].is_string()) throw Error(ErrorCode::BadResponse, "'model' is not a string");
    model = doc["model"].get<std::string>();
  }
  return {doc["title"].get<std::string>(), model};
}

std::string clip_title(std::string_view title, std::size_t max_words) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  std::size_t begin = 0;
  while (begin < title.size() && is_space(title[begin])) ++begin;
  std::size_t end = title.size();
  while (end > begin && is_space(title[end - 1])) --end;
  title = title.substr(begin, end - begin);

  std::size_t words = 0;
  std::size_t i = 0;
  while (i < title.size()) {
    while (i < title.size() && is_space(title[i])) ++i;
    if (i == title.size()) break;
    if (words == max_words) {
      std::size_t cut = i;
      while (cut > 0 && is_space(title[cut - 1])) --cut;
      return std::string(title.substr(0, cut));
    }
    ++words;
    while (i < title.size() && !is_space(title[i])) ++i;
  }
  return std::string(title);
}

Summary summarize_detailed(std::string_view text, const ClientConfig& cfg, Transport& transport, const Sleeper& sleep) {
  cfg.validate();
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to summarise");

  const std::string body = encode_request({std::string(text), cfg.max_title_words});
  std::map<std::string, std::string> headers{{"Accept", "application/json"}};
  if (cfg.auth_token && !cfg.auth_token->empty()) headers["Authorization"] = "Bearer " + *cfg.auth_token;

  std::string last_failure;
  const std::size_t max_attempts = 1 + cfg.max_retries;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) {
      const auto delay = cfg.backoff(attempt - 1);
      if (sleep) {
        sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
    const HttpResult result = transport.post(cfg.endpoint, body, headers, cfg.timeout);
    if (result.status == 0) {
      last_failure = result.timed_out ? "timeout" : "transport error: " + result.transport_error;
      continue;
    }
    if (result.status >= 500) {
      last_failure = "HTTP " + std::to_string(result.status);
      continue;
    }
    if (result.status < 200 || result.status >= 300) {
      throw Error(ErrorCode::BadResponse, "service answered HTTP " + std::to_string(result.status));
    }
    auto [title, model] = decode_response(result.body);
    std::string clipped = clip_title(title, cfg.max_title_words);
    if (clipped.empty()) throw Error(ErrorCode::EmptyTitle, "service returned a blank title");
    return {std::move(clipped), std::move(model), attempt};
  }
  throw Error(ErrorCode::ServiceUnavailable,
              "gave up after " + std::to_string(max_attempts) + " attempts (" + last_failure + ")");
}

std::string summarize(std::string_view text, const ClientConfig& cfg) {
  HttpTransport transport;
  return summarize_detailed(text, cfg, transport).title;
}

std::string segment_request_text(const Transcript& transcript, const Segmentation& seg, std::size_t j,
                                 std::size_t max_chars, bool& truncated) {
  const auto [first, end] = seg.segment_range(j);
  truncated = false;
  std::size_t last = end;
  while (last > first + 1 && transcript.text_between(first, last).size() > max_chars) {
    --last;
    truncated = true;
  }
  std::string_view text = transcript.text_between(first, last);
  if (text.size() > max_chars) {
    text = text.substr(0, max_chars);
    truncated = true;
  }
  return std::string(text);
}

namespace {

// Counts requests so failed segments can still report how often they tried.
class CountingTransport : public Transport {
 public:
  explicit CountingTransport(Transport& inner) : inner_(inner) {}
  HttpResult post(const std::string& url, const std::string& body, const std::map<std::string, std::string>& headers,
                  std::chrono::milliseconds timeout) override {
    ++count;
    return inner_.post(url, body, headers, timeout);
  }
  std::size_t count = 0;

 private:
  Transport& inner_;
};

}  // namespace

std::vector<TitledSegment> title_episode(const Transcript& transcript, const Segmentation& seg,
                                         const ClientConfig& cfg, Transport& transport, const Sleeper& sleep) {
  cfg.validate();
  if (seg.total() != transcript.size()) {
    throw Error(ErrorCode::LengthMismatch, "segmentation does not cover the transcript");
  }
  std::vector<TitledSegment> out(seg.segment_count());
  parallel_for(out.size(), cfg.max_in_flight, [&](std::size_t j) {
    TitledSegment& entry = out[j];
    entry.index = j;
    std::tie(entry.first_sentence, entry.end_sentence) = seg.segment_range(j);
    CountingTransport counting(transport);
    try {
      const std::string text = segment_request_text(transcript, seg, j, cfg.max_request_chars, entry.truncated);
      Summary summary = summarize_detailed(text, cfg, counting, sleep);
      entry.title = std::move(summary.title);
      entry.source = std::move(summary.model);
    } catch (const Error& e) {
      entry.error = e.code();
      entry.error_message = e.what();
    }
    entry.attempts = counting.count;
  });
  return out;
}

std::vector<TitledSegment> title_episode(const Transcript& transcript, const Segmentation& seg,
                                         const ClientConfig& cfg) {
  HttpTransport transport;
  return title_episode(transcript, seg, cfg, transport);
}

}  // namespace podseg
