#include "stub_service.hpp"

#include <httplib.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "podseg/error.hpp"
#include "podseg/hash.hpp"

namespace podseg::stub {

Step step_from_json(const nlohmann::json& j) {
  Step step;
  step.status = j.value("status", 200);
  step.title = j.value("title", std::string());
  step.mode = j.value("mode", j.contains("title") ? std::string("title") : std::string("echo"));
  step.model = j.value("model", std::string("stub-echo"));
  step.words = j.value("words", std::size_t{3});
  step.delay_ms = j.value("delay_ms", 0);
  return step;
}

namespace {

std::vector<Step> steps_from_json(const nlohmann::json& j) {
  std::vector<Step> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(step_from_json(s));
  } else {
    out.push_back(step_from_json(j));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty step list in stub script");
  return out;
}

std::string first_words(std::string_view text, std::size_t n) {
  std::istringstream in{std::string(text)};
  std::string word, out;
  for (std::size_t i = 0; i < n && in >> word; ++i) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

StubService StubService::from_json(const nlohmann::json& script) {
  StubService service;
  if (script.contains("default")) service.set_default(step_from_json(script["default"]));
  if (script.contains("responses")) {
    for (const auto& [hash, steps] : script["responses"].items()) service.script_hash(hash, steps_from_json(steps));
  }
  if (script.contains("rules")) {
    for (const auto& rule : script["rules"]) {
      service.add_rule(rule.at("contains").get<std::string>(), steps_from_json(rule.at("steps")));
    }
  }
  if (script.contains("require_token")) service.require_token(script["require_token"].get<std::string>());
  return service;
}

StubService StubService::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open stub script " + path);
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::ParseError, path + ": invalid JSON");
  return from_json(doc);
}

void StubService::set_default(Step step) {
  std::lock_guard lock(*mutex_);
  default_ = std::move(step);
}

void StubService::script_hash(std::string sha256, std::vector<Step> steps) {
  std::lock_guard lock(*mutex_);
  by_hash_[std::move(sha256)] = Sequence{std::move(steps), 0};
}

void StubService::script_text(std::string_view text, std::vector<Step> steps) {
  script_hash(sha256_hex(text), std::move(steps));
}

void StubService::add_rule(std::string contains, std::vector<Step> steps) {
  std::lock_guard lock(*mutex_);
  rules_.emplace_back(std::move(contains), Sequence{std::move(steps), 0});
}

void StubService::require_token(std::string token) {
  std::lock_guard lock(*mutex_);
  token_ = std::move(token);
}

const Step& StubService::advance(Sequence& seq) {
  const Step& step = seq.steps[std::min(seq.next, seq.steps.size() - 1)];
  ++seq.next;
  return step;
}

Reply StubService::handle(std::string_view body, std::string_view authorization) {
  auto request = nlohmann::json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object() || !request.contains("text") || !request["text"].is_string()) {
    return {400, R"({"error":"expected {\"text\": string, \"max_words\": integer}"})"};
  }
  const std::string text = request["text"].get<std::string>();

  Step step;
  {
    std::lock_guard lock(*mutex_);
    received_.push_back(text);
    if (token_ && authorization != "Bearer " + *token_) return {401, R"({"error":"unauthorised"})"};
    if (auto it = by_hash_.find(sha256_hex(text)); it != by_hash_.end()) {
      step = advance(it->second);
    } else {
      auto rule = std::find_if(rules_.begin(), rules_.end(),
                               [&](const auto& r) { return text.find(r.first) != std::string::npos; });
      step = rule != rules_.end() ? advance(rule->second) : default_;
    }
  }
  if (step.delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(step.delay_ms));
  if (step.status != 200) return {step.status, R"({"error":"scripted failure"})"};
  if (step.mode == "malformed") return {200, "this is not json"};

  nlohmann::ordered_json reply;
  if (step.mode == "blank") {
    reply["title"] = "   ";
  } else if (step.mode == "title") {
    reply["title"] = step.title;
  } else {
    reply["title"] = first_words(text, step.words);
  }
  reply["model"] = step.model;
  return {200, reply.dump()};
}

std::size_t StubService::request_count() const {
  std::lock_guard lock(*mutex_);
  return received_.size();
}

std::vector<std::string> StubService::received_texts() const {
  std::lock_guard lock(*mutex_);
  return received_;
}

struct StubServer::Impl {
  httplib::Server server;
};

StubServer::StubServer(StubService& service, std::string host, int port)
    : impl_(std::make_unique<Impl>()), host_(std::move(host)) {
  impl_->server.Post(R"(/.*)", [&service](const httplib::Request& req, httplib::Response& res) {
    const Reply reply = service.handle(req.body, req.get_header_value("Authorization"));
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
  port_ = port == 0 ? impl_->server.bind_to_any_port(host_) : (impl_->server.bind_to_port(host_, port) ? port : -1);
  if (port_ < 0) throw Error(ErrorCode::IoError, "stub server cannot bind " + host_);
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

StubServer::~StubServer() { stop(); }

std::string StubServer::endpoint() const { return "http://" + host_ + ":" + std::to_string(port_) + "/summarize"; }

void StubServer::stop() {
  if (thread_.joinable()) {
    impl_->server.stop();
    thread_.join();
  }
}

}  // namespace podseg::stub
