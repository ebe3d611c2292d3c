#include "slipway/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "slipway/error.hpp"

namespace slipway {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::token_budget_exceeded: return "token-budget-exceeded";
    case Errc::provider_unreachable: return "provider-unreachable";
    case Errc::fixture_miss: return "fixture-miss";
    case Errc::image_missing: return "image-missing";
    case Errc::runtime_unavailable: return "runtime-unavailable";
    case Errc::limit_invalid: return "limit-invalid";
    case Errc::duplicate_handle: return "duplicate-handle";
    case Errc::already_destroyed: return "already-destroyed";
    case Errc::container_not_running: return "container-not-running";
    case Errc::spawn_failure: return "spawn-failure";
    case Errc::session_dead: return "session-dead";
    case Errc::framing_corruption: return "framing-corruption";
    case Errc::clone_failure: return "clone-failure";
    case Errc::commit_not_found: return "commit-not-found";
    case Errc::rate_limited: return "rate-limited";
    case Errc::repo_not_found: return "repo-not-found";
    case Errc::partial_fetch: return "partial-fetch";
    case Errc::duplicate_doc_id: return "duplicate-doc-id";
    case Errc::misaligned_inputs: return "misaligned-inputs";
    case Errc::parse_failure: return "parse-failure";
    case Errc::search_unavailable: return "search-unavailable";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::config_invalid: return "config-invalid";
    case Errc::bad_usage: return "bad-usage";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace slipway

namespace slipway::util {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) {
    fs::create_directories(dir);
  }
  fs::path tmp = path;
  tmp += ".tmp." + random_hex(8);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(Errc::io_error, "cannot write " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw Error(Errc::io_error, "short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::string random_hex(std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::random_device rd;
  std::string out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(digits[rd() & 0xf]);
  }
  return out;
}

std::string shell_single_quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('\'');
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

std::string tail(std::string_view text, std::size_t max_chars) {
  if (text.size() <= max_chars) {
    return std::string(text);
  }
  return std::string(text.substr(text.size() - max_chars));
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) {
        lines.emplace_back(text.substr(start));
      }
      break;
    }
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

std::string trim(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) {
    return "";
  }
  std::size_t end = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, end - begin + 1));
}

bool starts_with(std::string_view text, std::string_view prefix) {
  return text.size() >= prefix.size() && text.substr(0, prefix.size()) == prefix;
}

bool contains(std::string_view text, std::string_view needle) {
  return text.find(needle) != std::string_view::npos;
}

std::string env_or(const char* name, std::string_view fallback) {
  const char* value = std::getenv(name);
  return value ? std::string(value) : std::string(fallback);
}

}  // namespace slipway::util
