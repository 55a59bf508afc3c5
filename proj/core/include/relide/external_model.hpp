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

#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "relide/limit_state.hpp"

namespace relide {

/// A limit state computed by a separate worker process.
///
/// Line protocol over the worker's standard streams:
///   worker -> `READY\n` once at startup
///   request  = M whitespace-separated decimal floats, then `\n`
///   reply    = one decimal float, then `\n`
/// One request is in flight at a time; the worker is started with
/// `/bin/sh -c "exec <command>"` and stopped when the last copy of the
/// returned LimitState is destroyed (stdin closed, then SIGKILL after a grace
/// period).
struct ExternalCommand {
  std::string command;
  std::chrono::milliseconds timeout{60'000};
  std::chrono::milliseconds startup_timeout{60'000};
};

// Starts the worker immediately and waits for READY. Throws EvaluationError
// when the worker cannot be started or never signals readiness.
LimitState external_model(const ExternalCommand& command, std::size_t dim, std::string name = "external");

}  // namespace relide
