#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "slipway/process.hpp"

namespace slipway {

struct ResourceLimits {
  double cpu_cores = 4.0;
  std::uint64_t memory_bytes = 8ull * 1024 * 1024 * 1024;
  int wall_clock_sec = 1800;
};

// Baseline environment every evaluation container must provide.
struct SandboxImageSpec {
  std::string image_name = "slipway/base:latest";
  std::set<std::string> required_tools = {"bash", "conda", "gcc", "make",
                                          "python", "git", "pip"};
  std::string workdir = "/workspace";
  bool network = true;
  std::string build_context;  // optional path to a bundled image definition
};

enum class ContainerState { created, running, stopped, destroyed };

const char* container_state_name(ContainerState state);

struct ContainerHandle {
  std::string container_id;
  std::string repo_slug;
  ContainerState state = ContainerState::created;
  ResourceLimits limits;
  // Runtime-specific: host path of the container workdir for the local
  // backend, empty for docker.
  std::string workspace;
};

// Lifecycle + shell attachment for one isolation backend. provision/destroy
// are safe to call from many threads; a handle itself belongs to the task
// that owns it.
class ContainerRuntime {
 public:
  virtual ~ContainerRuntime() = default;

  // Fresh container per call. (run_id, repo_slug) pairs are never reused
  // within one runtime instance, even after destroy.
  virtual ContainerHandle provision(const SandboxImageSpec& spec, const std::string& repo_slug,
                                    const ResourceLimits& limits) = 0;
  virtual void destroy(ContainerHandle& handle) = 0;

  // How to start an interactive bash attached to this container.
  virtual SpawnPlan shell_plan(const ContainerHandle& handle) const = 0;

  virtual std::string name() const = 0;

  int active_count() const;
  int peak_active() const;

 protected:
  void validate_limits(const ResourceLimits& limits) const;
  void register_slug(const std::string& repo_slug);
  void on_started();
  void on_destroyed();

 private:
  mutable std::mutex mutex_;
  std::set<std::string> used_slugs_;
  int active_ = 0;
  int peak_ = 0;
};

// Offline backend: a "container" is a private workspace directory plus a
// process group per shell session. Gives the same lifecycle, workdir, and
// env contract as the docker backend without a daemon; filesystem isolation
// is per-workspace, not namespace-based.
class LocalProcessRuntime : public ContainerRuntime {
 public:
  // root defaults to a fresh directory under the system temp dir.
  explicit LocalProcessRuntime(std::string run_id, std::filesystem::path root = {});
  ~LocalProcessRuntime() override;

  ContainerHandle provision(const SandboxImageSpec& spec, const std::string& repo_slug,
                            const ResourceLimits& limits) override;
  void destroy(ContainerHandle& handle) override;
  SpawnPlan shell_plan(const ContainerHandle& handle) const override;
  std::string name() const override { return "local"; }

  const std::filesystem::path& root() const { return root_; }

 private:
  std::string run_id_;
  std::filesystem::path root_;
  bool owns_root_ = false;
};

// Docker backend driven through the docker CLI. The daemon socket is
// configurable and passed via DOCKER_HOST.
class DockerCliRuntime : public ContainerRuntime {
 public:
  explicit DockerCliRuntime(std::string run_id, std::string socket_path = "");

  static bool available(const std::string& socket_path = "");

  ContainerHandle provision(const SandboxImageSpec& spec, const std::string& repo_slug,
                            const ResourceLimits& limits) override;
  void destroy(ContainerHandle& handle) override;
  SpawnPlan shell_plan(const ContainerHandle& handle) const override;
  std::string name() const override { return "docker"; }

 private:
  std::vector<std::pair<std::string, std::string>> docker_env() const;

  std::string run_id_;
  std::string socket_path_;
};

std::unique_ptr<ContainerRuntime> make_runtime(const std::string& kind, const std::string& run_id,
                                               const std::string& docker_socket = "");

// Runs `command -v` for each required tool in a fresh session; returns the
// missing ones.
std::vector<std::string> missing_tools(ContainerRuntime& runtime, const ContainerHandle& handle,
                                       const std::set<std::string>& tools);

}  // namespace slipway
