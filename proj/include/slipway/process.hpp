#pragma once

#include <sys/types.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slipway {

// Everything needed to start a child: argv, working directory, extra
// environment entries (appended to the inherited environment), and optional
// rlimits applied in the child before exec.
struct SpawnPlan {
  std::vector<std::string> argv;
  std::string cwd;
  std::vector<std::pair<std::string, std::string>> env;
  std::optional<std::uint64_t> memory_limit_bytes;
};

// A child process in its own process group with piped stdin/stdout/stderr.
// Move-only; the destructor kills the whole group if still running.
class ChildProcess {
 public:
  static ChildProcess spawn(const SpawnPlan& plan);

  ChildProcess(ChildProcess&& other) noexcept;
  ChildProcess& operator=(ChildProcess&& other) noexcept;
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;
  ~ChildProcess();

  pid_t pid() const { return pid_; }
  int stdin_fd() const { return stdin_fd_; }
  int stdout_fd() const { return stdout_fd_; }
  int stderr_fd() const { return stderr_fd_; }

  // False on EPIPE (child gone); throws on other errors.
  bool write_stdin(std::string_view data);
  void close_stdin();

  // SIGKILL to the process group, then reap.
  void kill_group();

  // Non-blocking reap; exit code when the child has terminated.
  std::optional<int> try_wait();
  // Blocking reap.
  int wait();

  bool running();

 private:
  ChildProcess() = default;
  void reset() noexcept;

  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  int stderr_fd_ = -1;
  bool reaped_ = false;
  int exit_code_ = -1;
};

struct CaptureResult {
  std::string out;
  std::string err;
  int exit_code = -1;
  bool timed_out = false;
};

// Runs to completion with output capture. stdin is closed immediately after
// writing stdin_data. On timeout the process group is killed.
CaptureResult run_capture(const SpawnPlan& plan, double timeout_sec = 120.0,
                          std::string_view stdin_data = "");

}  // namespace slipway
