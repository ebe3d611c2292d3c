#include "slipway/shell.hpp"

#include <poll.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>

#include "slipway/error.hpp"
#include "slipway/util.hpp"

namespace slipway {

namespace {

using clock = std::chrono::steady_clock;

// Non-interactive tooling defaults, applied once per session. expand_aliases
// lets alias definitions from one command take effect in later ones, which
// plain non-interactive bash disables.
const char* kPreamble =
    "export DEBIAN_FRONTEND=noninteractive PIP_NO_INPUT=1 "
    "PIP_DISABLE_PIP_VERSION_CHECK=1 GIT_TERMINAL_PROMPT=0; "
    "shopt -s expand_aliases";

struct StreamReader {
  int fd;
  std::string* buffer;
  bool open = true;

  // Drains whatever is ready; returns false once the stream hit EOF.
  void pump() {
    char chunk[8192];
    while (open) {
      ssize_t n = read(fd, chunk, sizeof(chunk));
      if (n > 0) {
        buffer->append(chunk, static_cast<std::size_t>(n));
      } else if (n == 0) {
        open = false;
      } else {
        break;  // EAGAIN or EINTR; poll again later
      }
    }
  }
};

}  // namespace

ShellSession ShellSession::open(ContainerRuntime& runtime, const ContainerHandle& handle) {
  if (handle.state != ContainerState::running) {
    throw Error(Errc::container_not_running,
                handle.container_id + " is " + container_state_name(handle.state));
  }
  ShellSession session;
  session.session_id_ = util::random_hex(16);
  session.shell_ = ChildProcess::spawn(runtime.shell_plan(handle));
  session.alive_ = true;

  std::string preamble = std::string(kPreamble);
  if (!handle.workspace.empty()) {
    preamble += "; cd " + util::shell_single_quote(handle.workspace);
  }
  ExecResult boot = session.exec(preamble, 30.0);
  if (!boot.exit_code || *boot.exit_code != 0) {
    session.close();
    throw Error(Errc::spawn_failure, "session preamble failed: " + boot.stderr_text);
  }
  return session;
}

ShellSession::~ShellSession() { close(); }

void ShellSession::close() {
  if (shell_) {
    shell_->kill_group();
    shell_.reset();
  }
  alive_ = false;
}

ExecResult ShellSession::exec(const std::string& command, double timeout_sec) {
  if (!alive_ || !shell_) {
    throw Error(Errc::session_dead, "session " + session_id_);
  }
  if (in_flight_) {
    throw Error(Errc::framing_corruption, "exec while another command is in flight");
  }
  in_flight_ = true;
  auto started = clock::now();

  ExecResult result;
  result.command = command;

  const std::string sentinel = "SLIPWAY_RC_" + util::random_hex(32);
  std::string line = "eval " + util::shell_single_quote(command) +
                     " && __slipway_rc=0 || __slipway_rc=$?; { set +x; } 2>/dev/null; "
                     "printf '%s %s\\n' " +
                     util::shell_single_quote(sentinel) +
                     " \"$__slipway_rc\"; printf '%s\\n' " + util::shell_single_quote(sentinel) +
                     " >&2\n";

  auto finish = [&](bool dead) {
    result.duration_sec = std::chrono::duration<double>(clock::now() - started).count();
    if (dead) {
      alive_ = false;
    }
    in_flight_ = false;
  };

  if (!shell_->write_stdin(line)) {
    // Shell exited between commands.
    close();
    finish(true);
    throw Error(Errc::session_dead, "shell exited before command could be sent");
  }

  std::string& out = out_residual_;
  std::string& err = err_residual_;
  StreamReader out_reader{shell_->stdout_fd(), &out};
  StreamReader err_reader{shell_->stderr_fd(), &err};

  auto deadline = started + std::chrono::duration<double>(timeout_sec);
  std::size_t out_hit = std::string::npos;
  std::size_t err_hit = std::string::npos;

  while (true) {
    if (out_hit == std::string::npos) {
      out_hit = out.find(sentinel);
    }
    if (err_hit == std::string::npos) {
      err_hit = err.find(sentinel);
    }
    if (out_hit != std::string::npos && err_hit != std::string::npos &&
        out.find('\n', out_hit) != std::string::npos &&
        err.find('\n', err_hit) != std::string::npos) {
      // Both sentinel lines are complete; nothing of this command remains
      // in flight.
      break;
    }
    if (!out_reader.open && !err_reader.open) {
      // Shell died before framing completed. The shell's own exit status is
      // the best available answer (covers `exit N` as a command).
      result.stdout_text = out;
      result.stderr_text = err;
      out.clear();
      err.clear();
      int status = shell_->wait();
      result.exit_code = status;
      close();
      finish(true);
      return result;
    }
    if (clock::now() >= deadline) {
      result.stdout_text = out;
      result.stderr_text = err;
      out.clear();
      err.clear();
      result.timed_out = true;
      close();
      finish(true);
      return result;
    }
    pollfd fds[2] = {{out_reader.fd, POLLIN, 0}, {err_reader.fd, POLLIN, 0}};
    poll(fds, 2, 50);
    out_reader.pump();
    err_reader.pump();
  }

  // stdout: "<payload><sentinel> <rc>\n", stderr: "<payload><sentinel>\n".
  result.stdout_text = out.substr(0, out_hit);
  std::size_t out_line_end = out.find('\n', out_hit);
  std::string status_token =
      util::trim(out.substr(out_hit + sentinel.size(), out_line_end - out_hit - sentinel.size()));
  out.erase(0, out_line_end + 1);

  result.stderr_text = err.substr(0, err_hit);
  err.erase(0, err.find('\n', err_hit) + 1);

  try {
    result.exit_code = std::stoi(status_token);
  } catch (const std::exception&) {
    finish(false);
    throw Error(Errc::framing_corruption, "unparseable status token '" + status_token + "'");
  }

  finish(false);
  return result;
}

}  // namespace slipway
