#include "slipway/tokens.hpp"

#include <algorithm>
#include <string>

namespace slipway {

std::size_t estimate_tokens(std::string_view text) {
  if (text.empty()) {
    return 0;
  }
  return std::max<std::size_t>(1, text.size() / 4);
}

std::string truncate_to_tokens(std::string_view text, std::size_t max_tokens) {
  if (estimate_tokens(text) <= max_tokens) {
    return std::string(text);
  }
  if (max_tokens == 0) {
    return "";
  }
  std::size_t keep = std::min(text.size(), max_tokens * 4);
  // Do not split a multi-byte UTF-8 sequence.
  while (keep > 0 && (static_cast<unsigned char>(text[keep]) & 0xc0) == 0x80) {
    --keep;
  }
  return std::string(text.substr(0, keep));
}

}  // namespace slipway
