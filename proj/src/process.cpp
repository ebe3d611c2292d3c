#include "slipway/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "slipway/error.hpp"

namespace slipway {

namespace {

void set_cloexec(int fd) { fcntl(fd, F_SETFD, FD_CLOEXEC); }

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK); }

[[noreturn]] void child_exec(const SpawnPlan& plan, int in_rd, int out_wr, int err_wr) {
  setpgid(0, 0);
  dup2(in_rd, STDIN_FILENO);
  dup2(out_wr, STDOUT_FILENO);
  dup2(err_wr, STDERR_FILENO);
  if (!plan.cwd.empty() && chdir(plan.cwd.c_str()) != 0) {
    _exit(127);
  }
  for (const auto& [key, value] : plan.env) {
    setenv(key.c_str(), value.c_str(), 1);
  }
  if (plan.memory_limit_bytes) {
    rlimit lim{*plan.memory_limit_bytes, *plan.memory_limit_bytes};
    setrlimit(RLIMIT_AS, &lim);
  }
  std::vector<char*> argv;
  argv.reserve(plan.argv.size() + 1);
  for (const std::string& arg : plan.argv) {
    argv.push_back(const_cast<char*>(arg.c_str()));
  }
  argv.push_back(nullptr);
  execvp(argv[0], argv.data());
  _exit(127);
}

}  // namespace

ChildProcess ChildProcess::spawn(const SpawnPlan& plan) {
  if (plan.argv.empty()) {
    throw Error(Errc::spawn_failure, "empty argv");
  }
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw Error(Errc::spawn_failure, std::string("pipe: ") + std::strerror(errno));
  }
  pid_t pid = fork();
  if (pid < 0) {
    throw Error(Errc::spawn_failure, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(err_pipe[0]);
    child_exec(plan, in_pipe[0], out_pipe[1], err_pipe[1]);
  }
  // Parent side; also set the group here to avoid racing the child's exec.
  setpgid(pid, pid);
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);

  ChildProcess child;
  child.pid_ = pid;
  child.stdin_fd_ = in_pipe[1];
  child.stdout_fd_ = out_pipe[0];
  child.stderr_fd_ = err_pipe[0];
  set_cloexec(child.stdin_fd_);
  set_cloexec(child.stdout_fd_);
  set_cloexec(child.stderr_fd_);
  set_nonblocking(child.stdout_fd_);
  set_nonblocking(child.stderr_fd_);
  return child;
}

ChildProcess::ChildProcess(ChildProcess&& other) noexcept { *this = std::move(other); }

ChildProcess& ChildProcess::operator=(ChildProcess&& other) noexcept {
  if (this != &other) {
    reset();
    pid_ = other.pid_;
    stdin_fd_ = other.stdin_fd_;
    stdout_fd_ = other.stdout_fd_;
    stderr_fd_ = other.stderr_fd_;
    reaped_ = other.reaped_;
    exit_code_ = other.exit_code_;
    other.pid_ = -1;
    other.stdin_fd_ = other.stdout_fd_ = other.stderr_fd_ = -1;
    other.reaped_ = true;
  }
  return *this;
}

ChildProcess::~ChildProcess() { reset(); }

void ChildProcess::reset() noexcept {
  if (pid_ > 0 && !reaped_) {
    ::kill(-pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    reaped_ = true;
  }
  for (int* fd : {&stdin_fd_, &stdout_fd_, &stderr_fd_}) {
    if (*fd >= 0) {
      close(*fd);
      *fd = -1;
    }
  }
  pid_ = -1;
}

bool ChildProcess::write_stdin(std::string_view data) {
  if (stdin_fd_ < 0) {
    return false;
  }
  // A dead reader raises SIGPIPE by default; detect it via EPIPE instead.
  signal(SIGPIPE, SIG_IGN);
  std::size_t written = 0;
  while (written < data.size()) {
    ssize_t n = write(stdin_fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) {
        continue;
      }
      if (errno == EPIPE) {
        return false;
      }
      throw Error(Errc::io_error, std::string("write: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  return true;
}

void ChildProcess::close_stdin() {
  if (stdin_fd_ >= 0) {
    close(stdin_fd_);
    stdin_fd_ = -1;
  }
}

void ChildProcess::kill_group() {
  if (pid_ > 0 && !reaped_) {
    ::kill(-pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    reaped_ = true;
    exit_code_ = -1;
  }
}

std::optional<int> ChildProcess::try_wait() {
  if (reaped_) {
    return exit_code_;
  }
  int status = 0;
  pid_t r = waitpid(pid_, &status, WNOHANG);
  if (r == 0) {
    return std::nullopt;
  }
  reaped_ = true;
  exit_code_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return exit_code_;
}

int ChildProcess::wait() {
  if (reaped_) {
    return exit_code_;
  }
  int status = 0;
  waitpid(pid_, &status, 0);
  reaped_ = true;
  exit_code_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return exit_code_;
}

bool ChildProcess::running() { return !try_wait().has_value(); }

CaptureResult run_capture(const SpawnPlan& plan, double timeout_sec, std::string_view stdin_data) {
  using clock = std::chrono::steady_clock;
  ChildProcess child = ChildProcess::spawn(plan);
  if (!stdin_data.empty()) {
    child.write_stdin(stdin_data);
  }
  child.close_stdin();

  CaptureResult result;
  auto deadline = clock::now() + std::chrono::duration<double>(timeout_sec);
  bool out_open = true, err_open = true;
  char buf[8192];
  while (out_open || err_open) {
    if (clock::now() >= deadline) {
      child.kill_group();
      result.timed_out = true;
      result.exit_code = -1;
      return result;
    }
    pollfd fds[2] = {{child.stdout_fd(), POLLIN, 0}, {child.stderr_fd(), POLLIN, 0}};
    poll(fds, 2, 100);
    for (int i = 0; i < 2; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) {
        continue;
      }
      while (true) {
        ssize_t n = read(fds[i].fd, buf, sizeof(buf));
        if (n > 0) {
          (i == 0 ? result.out : result.err).append(buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
          (i == 0 ? out_open : err_open) = false;
          break;
        } else {
          break;  // EAGAIN
        }
      }
    }
  }
  result.exit_code = child.wait();
  return result;
}

}  // namespace slipway
