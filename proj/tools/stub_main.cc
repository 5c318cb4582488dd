//
// Copyright 2026 The PerturbKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// perturbkit_stub: a fake external perturbation engine.
//
//   perturbkit_stub --transport stdio --mode heuristic
//   perturbkit_stub --transport http --port 0 --mode canned --canned c.jsonl

#include <signal.h>
#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "stub_server.h"

int main(int argc, char** argv) {
  CLI::App app{"Fake external perturbation engine for protocol testing."};
  std::string transport = "stdio";
  std::string host = "127.0.0.1";
  int port = 0;
  std::string mode = "echo";
  perturbkit::StubOptions options;
  int delay_ms = 0;
  int slow_ms = 2000;
  app.add_option("--transport", transport, "stdio or http")
      ->check(CLI::IsMember({"stdio", "http"}));
  app.add_option("--host", host, "http bind address");
  app.add_option("--port", port, "http port, 0 picks a free one");
  app.add_option("--mode", mode, "echo, canned or heuristic")
      ->check(CLI::IsMember({"echo", "canned", "heuristic"}));
  app.add_option("--canned", options.canned_path,
                 "jsonl of {input, output} for canned mode");
  app.add_option("--data-dir", options.data_dir,
                 "lexicon directory for heuristic mode");
  app.add_option("--reorder", options.reorder,
                 "stdio: reply to batches of K requests in reverse order")
      ->check(CLI::PositiveNumber);
  app.add_option("--delay-ms", delay_ms, "delay before every reply");
  app.add_option("--slow-ms", slow_ms, "http: delay for __slow__ requests");
  CLI11_PARSE(app, argc, argv);

  static const std::map<std::string, perturbkit::StubMode> kModes = {
      {"echo", perturbkit::StubMode::kEcho},
      {"canned", perturbkit::StubMode::kCanned},
      {"heuristic", perturbkit::StubMode::kHeuristic},
  };
  options.mode = kModes.at(mode);
  options.delay = std::chrono::milliseconds(delay_ms);
  options.slow_delay = std::chrono::milliseconds(slow_ms);
  if (options.mode == perturbkit::StubMode::kCanned &&
      options.canned_path.empty()) {
    std::cerr << "--canned is required in canned mode\n";
    return 1;
  }

  auto responder = perturbkit::StubResponder::Create(options);
  if (!responder.ok()) {
    std::cerr << responder.status().ToString() << "\n";
    return 2;
  }
  if (transport == "stdio") {
    signal(SIGPIPE, SIG_IGN);
    return perturbkit::RunStdioStub(**responder, STDIN_FILENO, STDOUT_FILENO);
  }
  perturbkit::StubHttpServer server(responder->get());
  absl::StatusOr<int> bound = server.Start(host, port);
  if (!bound.ok()) {
    std::cerr << bound.status().ToString() << "\n";
    return 3;
  }
  std::cout << "listening on " << *bound << std::endl;
  server.Wait();
  return 0;
}
