#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace slipway::util {

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory followed by rename, so readers
// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// FNV-1a over the raw bytes, as a fixed-width lowercase hex string.
std::string fnv1a_hex(std::string_view data);

// n random hex characters from the system entropy source.
std::string random_hex(std::size_t n);

// Wraps text in single quotes with POSIX-safe escaping of embedded quotes,
// suitable for `eval` in bash.
std::string shell_single_quote(std::string_view text);

// Last max_chars characters (whole string when shorter).
std::string tail(std::string_view text, std::size_t max_chars);

std::string to_lower(std::string_view text);
std::vector<std::string> split_lines(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string trim(std::string_view text);

bool starts_with(std::string_view text, std::string_view prefix);
bool contains(std::string_view text, std::string_view needle);

// Environment lookup returning empty when unset.
std::string env_or(const char* name, std::string_view fallback = "");

}  // namespace slipway::util
