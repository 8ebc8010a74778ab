#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <thread>

#include "podseg/error.hpp"
#include "stub_service.hpp"

namespace {
volatile std::sig_atomic_t g_stop = 0;
void on_signal(int) { g_stop = 1; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scripted summarisation stub for exercising podseg title"};
  std::string script;
  std::string host = "127.0.0.1";
  int port = 0;
  std::size_t echo_words = 3;
  app.add_option("--script", script, "JSON script of scripted replies");
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to bind (0 picks a free one)");
  app.add_option("--echo-words", echo_words, "Words echoed by the default reply");
  CLI11_PARSE(app, argc, argv);

  try {
    podseg::stub::StubService service;
    if (!script.empty()) {
      service = podseg::stub::StubService::from_file(script);
    } else {
      podseg::stub::Step step;
      step.words = echo_words;
      service.set_default(step);
    }
    podseg::stub::StubServer server(service, host, port);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << server.endpoint() << std::endl;
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  } catch (const podseg::Error& e) {
    std::cerr << "podseg-stub: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
