#include "slipway/sandbox.hpp"

#include <algorithm>

#include "slipway/error.hpp"
#include "slipway/shell.hpp"
#include "slipway/util.hpp"

namespace slipway {

namespace fs = std::filesystem;

const char* container_state_name(ContainerState state) {
  switch (state) {
    case ContainerState::created: return "created";
    case ContainerState::running: return "running";
    case ContainerState::stopped: return "stopped";
    case ContainerState::destroyed: return "destroyed";
  }
  return "unknown";
}

int ContainerRuntime::active_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return active_;
}

int ContainerRuntime::peak_active() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return peak_;
}

void ContainerRuntime::validate_limits(const ResourceLimits& limits) const {
  if (limits.wall_clock_sec <= 0 || limits.cpu_cores <= 0 || limits.memory_bytes == 0) {
    throw Error(Errc::limit_invalid, "cpu, memory, and wall clock must all be positive");
  }
}

void ContainerRuntime::register_slug(const std::string& repo_slug) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!used_slugs_.insert(repo_slug).second) {
    throw Error(Errc::duplicate_handle, "container already provisioned for " + repo_slug);
  }
}

void ContainerRuntime::on_started() {
  std::lock_guard<std::mutex> lock(mutex_);
  ++active_;
  peak_ = std::max(peak_, active_);
}

void ContainerRuntime::on_destroyed() {
  std::lock_guard<std::mutex> lock(mutex_);
  --active_;
}

LocalProcessRuntime::LocalProcessRuntime(std::string run_id, fs::path root)
    : run_id_(std::move(run_id)), root_(std::move(root)) {
  if (root_.empty()) {
    root_ = fs::temp_directory_path() / ("slipway-" + run_id_ + "-" + util::random_hex(8));
    owns_root_ = true;
  }
  fs::create_directories(root_);
}

LocalProcessRuntime::~LocalProcessRuntime() {
  if (owns_root_) {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
}

ContainerHandle LocalProcessRuntime::provision(const SandboxImageSpec& spec,
                                               const std::string& repo_slug,
                                               const ResourceLimits& limits) {
  validate_limits(limits);
  register_slug(repo_slug);

  ContainerHandle handle;
  handle.container_id = repo_slug + "-" + util::random_hex(12);
  handle.repo_slug = repo_slug;
  handle.limits = limits;
  fs::path workspace = root_ / handle.container_id / "workspace";
  fs::create_directories(workspace);
  handle.workspace = workspace.string();
  (void)spec;  // image identity is a no-op for the host-process backend
  handle.state = ContainerState::running;
  on_started();
  return handle;
}

void LocalProcessRuntime::destroy(ContainerHandle& handle) {
  if (handle.state == ContainerState::destroyed) {
    throw Error(Errc::already_destroyed, handle.container_id);
  }
  std::error_code ec;
  fs::remove_all(fs::path(handle.workspace).parent_path(), ec);
  handle.state = ContainerState::destroyed;
  on_destroyed();
}

SpawnPlan LocalProcessRuntime::shell_plan(const ContainerHandle& handle) const {
  SpawnPlan plan;
  plan.argv = {"bash", "--noprofile", "--norc"};
  plan.cwd = handle.workspace;
  plan.env = {{"HOME", handle.workspace}, {"TMPDIR", handle.workspace}};
  // cpu_cores has no host-process equivalent; memory maps to an address
  // space rlimit and wall clock is enforced per command by the session.
  plan.memory_limit_bytes = handle.limits.memory_bytes;
  return plan;
}

DockerCliRuntime::DockerCliRuntime(std::string run_id, std::string socket_path)
    : run_id_(std::move(run_id)), socket_path_(std::move(socket_path)) {}

std::vector<std::pair<std::string, std::string>> DockerCliRuntime::docker_env() const {
  std::vector<std::pair<std::string, std::string>> env;
  if (!socket_path_.empty()) {
    env.emplace_back("DOCKER_HOST", "unix://" + socket_path_);
  }
  return env;
}

bool DockerCliRuntime::available(const std::string& socket_path) {
  SpawnPlan plan;
  plan.argv = {"docker", "info"};
  if (!socket_path.empty()) {
    plan.env.emplace_back("DOCKER_HOST", "unix://" + socket_path);
  }
  try {
    return run_capture(plan, 10.0).exit_code == 0;
  } catch (const Error&) {
    return false;
  }
}

ContainerHandle DockerCliRuntime::provision(const SandboxImageSpec& spec,
                                            const std::string& repo_slug,
                                            const ResourceLimits& limits) {
  validate_limits(limits);
  register_slug(repo_slug);

  SpawnPlan plan;
  plan.env = docker_env();
  plan.argv = {"docker",
               "run",
               "-d",
               "--label",
               "slipway.run=" + run_id_,
               "--cpus",
               std::to_string(limits.cpu_cores),
               "--memory",
               std::to_string(limits.memory_bytes),
               "-w",
               spec.workdir};
  if (!spec.network) {
    plan.argv.push_back("--network");
    plan.argv.push_back("none");
  }
  plan.argv.push_back(spec.image_name);
  plan.argv.insert(plan.argv.end(), {"sleep", "infinity"});

  CaptureResult result = run_capture(plan, 120.0);
  if (result.exit_code != 0) {
    if (util::contains(result.err, "No such image") ||
        util::contains(result.err, "pull access denied")) {
      throw Error(Errc::image_missing, spec.image_name + ": " + util::trim(result.err));
    }
    throw Error(Errc::runtime_unavailable, util::trim(result.err));
  }

  ContainerHandle handle;
  handle.container_id = util::trim(result.out);
  handle.repo_slug = repo_slug;
  handle.limits = limits;
  handle.state = ContainerState::running;
  handle.workspace = spec.workdir;
  on_started();
  return handle;
}

void DockerCliRuntime::destroy(ContainerHandle& handle) {
  if (handle.state == ContainerState::destroyed) {
    throw Error(Errc::already_destroyed, handle.container_id);
  }
  SpawnPlan plan;
  plan.env = docker_env();
  plan.argv = {"docker", "rm", "-f", handle.container_id};
  CaptureResult result = run_capture(plan, 60.0);
  if (result.exit_code != 0) {
    throw Error(Errc::runtime_unavailable, util::trim(result.err));
  }
  handle.state = ContainerState::destroyed;
  on_destroyed();
}

SpawnPlan DockerCliRuntime::shell_plan(const ContainerHandle& handle) const {
  SpawnPlan plan;
  plan.env = docker_env();
  plan.argv = {"docker",      "exec", "-i", handle.container_id,
               "bash",        "--noprofile", "--norc"};
  return plan;
}

std::unique_ptr<ContainerRuntime> make_runtime(const std::string& kind, const std::string& run_id,
                                               const std::string& docker_socket) {
  if (kind == "local") {
    return std::make_unique<LocalProcessRuntime>(run_id);
  }
  if (kind == "docker") {
    if (!DockerCliRuntime::available(docker_socket)) {
      throw Error(Errc::runtime_unavailable, "docker daemon not reachable");
    }
    return std::make_unique<DockerCliRuntime>(run_id, docker_socket);
  }
  throw Error(Errc::config_invalid, "unknown sandbox runtime: " + kind);
}

std::vector<std::string> missing_tools(ContainerRuntime& runtime, const ContainerHandle& handle,
                                       const std::set<std::string>& tools) {
  ShellSession session = ShellSession::open(runtime, handle);
  std::vector<std::string> missing;
  for (const std::string& tool : tools) {
    ExecResult result = session.exec("command -v " + util::shell_single_quote(tool), 30.0);
    if (!result.exit_code || *result.exit_code != 0) {
      missing.push_back(tool);
    }
  }
  return missing;
}

}  // namespace slipway
