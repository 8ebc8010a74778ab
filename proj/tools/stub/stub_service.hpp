#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace podseg::stub {

// One scripted reply. mode: "title" (fixed title), "echo" (first `words`
// words of the request text), "blank" or "malformed".
struct Step {
  int status = 200;
  std::string mode = "echo";
  std::string title;
  std::string model = "stub-echo";
  std::size_t words = 3;
  int delay_ms = 0;
};

struct Reply {
  int status = 200;
  std::string body;
};

// Reference summarisation stub. Replies are looked up by the SHA-256 of the
// request text, then by substring rules, then fall back to the default step.
// A keyed sequence advances one step per request; its last step repeats.
//
// Script layout:
//   {"default": Step,
//    "responses": {"<sha256 of text>": [Step, ...]},
//    "rules": [{"contains": "...", "steps": [Step, ...]}],
//    "require_token": "..."}
class StubService {
 public:
  StubService() = default;
  static StubService from_json(const nlohmann::json& script);
  static StubService from_file(const std::string& path);

  void set_default(Step step);
  void script_hash(std::string sha256, std::vector<Step> steps);
  void script_text(std::string_view text, std::vector<Step> steps);
  void add_rule(std::string contains, std::vector<Step> steps);
  void require_token(std::string token);

  Reply handle(std::string_view body, std::string_view authorization = {});

  std::size_t request_count() const;
  std::vector<std::string> received_texts() const;

 private:
  struct Sequence {
    std::vector<Step> steps;
    std::size_t next = 0;
  };
  const Step& advance(Sequence& seq);

  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  Step default_;
  std::map<std::string, Sequence> by_hash_;
  std::vector<std::pair<std::string, Sequence>> rules_;
  std::optional<std::string> token_;
  std::vector<std::string> received_;
};

Step step_from_json(const nlohmann::json& j);

// Serves a StubService over HTTP on a background thread; any POST path is
// accepted.
class StubServer {
 public:
  explicit StubServer(StubService& service, std::string host = "127.0.0.1", int port = 0);
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  int port() const { return port_; }
  std::string endpoint() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string host_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace podseg::stub
