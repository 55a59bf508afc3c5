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

#include "relide/external_model.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <memory>
#include <mutex>
#include <thread>

#include "relide/error.hpp"

extern char** environ;

namespace relide {

namespace {

using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

class WorkerProcess {
 public:
  explicit WorkerProcess(const ExternalCommand& cmd) : cmd_(cmd) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
      throw EvaluationError(std::string("external model: socketpair failed: ") + std::strerror(errno));
    }
    fd_ = fds[0];
    const int child_fd = fds[1];

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, child_fd, STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, child_fd, STDOUT_FILENO);

    const std::string shell_cmd = "exec " + cmd.command;
    const char* argv[] = {"/bin/sh", "-c", shell_cmd.c_str(), nullptr};
    const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, nullptr, const_cast<char* const*>(argv), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(child_fd);
    if (rc != 0) {
      ::close(fd_);
      throw EvaluationError("external model: cannot start '" + cmd.command + "': " + std::strerror(rc));
    }

    std::string first;
    try {
      first = read_line(cmd_.startup_timeout, "waiting for READY");
    } catch (...) {
      shutdown();
      throw;
    }
    if (trim(first) != "READY") {
      shutdown();
      throw EvaluationError("external model: expected READY from '" + cmd.command + "'", first);
    }
  }

  WorkerProcess(const WorkerProcess&) = delete;
  WorkerProcess& operator=(const WorkerProcess&) = delete;
  ~WorkerProcess() { shutdown(); }

  double evaluate(std::span<const double> x) {
    std::lock_guard lock(mutex_);
    if (dead_) throw EvaluationError("external model: worker '" + cmd_.command + "' is no longer running");

    std::string request;
    char buf[32];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int len = std::snprintf(buf, sizeof buf, "%.17g", x[i]);
      if (i) request.push_back(' ');
      request.append(buf, static_cast<std::size_t>(len));
    }
    request.push_back('\n');
    write_all(request);

    const std::string reply = read_line(cmd_.timeout, "waiting for a reply");
    const std::string value = trim(reply);
    double y = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, y);
    if (value.empty() || ec != std::errc() || ptr != end) {
      throw EvaluationError("external model: non-numeric reply '" + value + "'", reply);
    }
    return y;
  }

 private:
  void write_all(const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        mark_dead();
        throw EvaluationError("external model: worker closed its input (" + std::string(std::strerror(errno)) + ")");
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  std::string read_line(std::chrono::milliseconds timeout, const char* what) {
    const auto deadline = Clock::now() + timeout;
    for (;;) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      if (remaining.count() <= 0) {
        mark_dead();
        throw EvaluationError(std::string("external model: timeout ") + what, buffer_);
      }
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        mark_dead();
        throw EvaluationError(std::string("external model: poll failed ") + what);
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        mark_dead();
        throw EvaluationError(std::string("external model: read failed ") + what, buffer_);
      }
      if (n == 0) {
        mark_dead();
        throw EvaluationError(std::string("external model: worker exited while ") + what, buffer_);
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  void mark_dead() { dead_ = true; }

  void shutdown() {
    if (fd_ >= 0) {
      ::shutdown(fd_, SHUT_RDWR);
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      int status = 0;
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) == pid_) {
          pid_ = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

  ExternalCommand cmd_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  bool dead_ = false;
  std::mutex mutex_;
};

}  // namespace

LimitState external_model(const ExternalCommand& command, std::size_t dim, std::string name) {
  if (command.command.empty()) throw ConfigError("external model: empty command");
  auto worker = std::make_shared<WorkerProcess>(command);
  return LimitState(std::move(name), dim, [worker](std::span<const double> x) { return worker->evaluate(x); });
}

}  // namespace relide
