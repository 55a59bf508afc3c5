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

// Line-protocol worker evaluating the hat function 12 - (x1 - x2)^2 - 8 (x1 + x2 - 4)^3.
// Reads "x1 x2" per line and answers with the value.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

int main() {
  std::ios::sync_with_stdio(false);
  std::cout << "READY" << std::endl;
  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream in(line);
    double x1 = 0.0;
    double x2 = 0.0;
    if (!(in >> x1 >> x2)) {
      std::cerr << "hat_worker: bad request: " << line << "\n";
      return 1;
    }
    const double d = x1 - x2;
    const double s = x1 + x2 - 4.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", 12.0 - d * d - 8.0 * s * s * s);
    std::cout << buf << std::endl;
  }
  return 0;
}
