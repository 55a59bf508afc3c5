// Copyright 2026 The relide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

// Test worker: answers each request with the sum of its coordinates.
//
//   --die-after N    exit with status 1 after N replies
//   --hang-after N   stop answering after N replies
//   --no-ready       never print READY
//   --garbage        answer with a non-numeric line

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  long die_after = -1;
  long hang_after = -1;
  bool ready = true;
  bool garbage = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--die-after") == 0 && i + 1 < argc) {
      die_after = std::atol(argv[++i]);
    } else if (std::strcmp(argv[i], "--hang-after") == 0 && i + 1 < argc) {
      hang_after = std::atol(argv[++i]);
    } else if (std::strcmp(argv[i], "--no-ready") == 0) {
      ready = false;
    } else if (std::strcmp(argv[i], "--garbage") == 0) {
      garbage = true;
    } else {
      std::cerr << "echo_worker: unknown argument " << argv[i] << "\n";
      return 2;
    }
  }
  if (!ready) {
    std::this_thread::sleep_for(std::chrono::hours(1));
    return 0;
  }
  std::cout << "READY" << std::endl;
  std::string line;
  long replies = 0;
  while (std::getline(std::cin, line)) {
    if (replies == die_after) return 1;
    if (replies == hang_after) std::this_thread::sleep_for(std::chrono::hours(1));
    std::istringstream in(line);
    double sum = 0.0;
    double v = 0.0;
    while (in >> v) sum += v;
    if (garbage) {
      std::cout << "not-a-number" << std::endl;
    } else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", sum);
      std::cout << buf << std::endl;
    }
    ++replies;
  }
  return 0;
}
