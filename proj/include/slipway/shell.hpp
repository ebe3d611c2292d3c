#pragma once

#include <optional>
#include <string>

#include "slipway/process.hpp"
#include "slipway/sandbox.hpp"

namespace slipway {

struct ExecResult {
  std::string command;
  std::string stdout_text;
  std::string stderr_text;
  std::optional<int> exit_code;  // absent on timeout or shell death mid-command
  double duration_sec = 0.0;
  bool timed_out = false;
};

// One long-lived bash attached to a container. Environment variables, the
// working directory, aliases, and activated environments persist across
// exec() calls because every command runs inside the same shell process.
//
// Framing protocol: each exec writes a single line to the shell of the form
//
//   eval '<command>' && __slipway_rc=0 || __slipway_rc=$?; \
//   { set +x; } 2>/dev/null; \
//   printf '%s %s\n' '<sentinel>' "$__slipway_rc"; printf '%s\n' '<sentinel>' >&2
//
// where <sentinel> is a fresh 128-bit random marker per command. The reader
// consumes both streams until the sentinel appears in each; bytes before the
// sentinel are exactly the command's output, and the status travels on the
// stdout sentinel line. Because the command text reaches bash inside a
// single-quoted eval, multi-line commands and unbalanced quotes cannot eat
// the framing lines. The `&& || $?` capture keeps a `set -e` shell alive
// through failing commands, and `set +x` keeps xtrace from leaking a future
// sentinel into the stream (xtrace therefore does not persist across
// commands; everything else does).
//
// On timeout the whole session process group is killed: a stuck foreground
// command cannot be interrupted reliably without a PTY, so the session is
// declared dead and the caller decides whether to restart.
class ShellSession {
 public:
  static ShellSession open(ContainerRuntime& runtime, const ContainerHandle& handle);

  ShellSession(ShellSession&&) = default;
  ShellSession& operator=(ShellSession&&) = default;
  ~ShellSession();

  ExecResult exec(const std::string& command, double timeout_sec = kDefaultTimeoutSec);
  void close();

  bool alive() const { return alive_; }
  const std::string& session_id() const { return session_id_; }

  static constexpr double kDefaultTimeoutSec = 600.0;

 private:
  ShellSession() = default;

  std::string session_id_;
  std::optional<ChildProcess> shell_;
  bool alive_ = false;
  bool in_flight_ = false;
  std::string out_residual_;
  std::string err_residual_;
};

}  // namespace slipway
