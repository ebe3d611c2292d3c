#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace slipway {

// One row of the benchmark manifest: a repository pinned to an exact commit.
struct RepoManifest {
  std::string url;
  std::string commit_id;  // 40 lowercase hex chars
  std::string branch;
  std::string slug;
  bool license_ok = true;
};

// Drafter inputs extracted from a checked-out working tree.
struct RepoSnapshot {
  RepoManifest manifest;
  std::string readme_text;
  std::string dir_tree;  // newline-joined relative file paths, depth/entry capped
  std::size_t file_count = 0;
  std::size_t readme_token_estimate = 0;
  bool readme_missing = false;
};

struct IssueDoc {
  std::int64_t issue_id = 0;
  std::string title;
  std::string body;
  std::vector<std::string> comments;  // creation order
  bool open_state = true;
};

// Manifest file: JSON array of {url, commit_id, branch, slug[, license_ok]}.
// Validates commit pinning and slug uniqueness.
std::vector<RepoManifest> load_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<RepoManifest>& repos);

// Clones manifest.url into dest and checks out exactly manifest.commit_id
// (detached). The README is taken from the repository root only, trying
// README.md, README.rst, then README. A missing README still yields a
// snapshot, flagged, with empty readme_text.
RepoSnapshot clone_at(const RepoManifest& manifest, const std::filesystem::path& dest);

// Directory listing limits applied when building dir_tree.
inline constexpr int kDirTreeMaxDepth = 4;
inline constexpr std::size_t kDirTreeMaxEntries = 500;
inline constexpr const char* kDirTreeTruncationMarker = "... (truncated)";

// Fetches every issue (open and closed, pull requests excluded) with comments
// from a GitHub-compatible REST endpoint. A token, when present in the
// GITHUB_TOKEN environment variable, is sent as a bearer credential.
std::vector<IssueDoc> fetch_issues(const RepoManifest& manifest, const std::string& api_base);

// Issue DB: line-delimited JSON, one issue per line, comments inlined.
// Written atomically.
void write_issue_db(const std::filesystem::path& path, const std::vector<IssueDoc>& issues);
std::vector<IssueDoc> read_issue_db(const std::filesystem::path& path);

void write_snapshot(const std::filesystem::path& path, const RepoSnapshot& snapshot);
RepoSnapshot read_snapshot(const std::filesystem::path& path);

struct CorpusStatsRow {
  std::string slug;
  std::size_t readme_tokens = 0;
  std::size_t file_count = 0;
  std::size_t issue_count = 0;
};

struct CorpusStats {
  std::vector<CorpusStatsRow> per_repo;
  double mean_readme_tokens = 0.0;
  std::size_t max_readme_tokens = 0;
  double mean_file_count = 0.0;
  std::size_t max_file_count = 0;
  double mean_issue_count = 0.0;
  std::size_t max_issue_count = 0;
};

// Inputs must be non-empty and aligned by slug (same order, same length).
CorpusStats corpus_stats(const std::vector<RepoSnapshot>& snapshots,
                         const std::vector<std::vector<IssueDoc>>& issue_dbs);

std::string corpus_stats_csv(const CorpusStats& stats);
std::string corpus_stats_json(const CorpusStats& stats);

}  // namespace slipway
