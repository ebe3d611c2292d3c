#pragma once

#include <cstddef>
#include <string_view>

namespace slipway {

// Coarse token estimate used as a budget gate before any model call.
// Roughly one token per four bytes of UTF-8, floored, with a minimum of one
// token for non-empty text. Deliberately provider-agnostic: the gate only
// needs to keep README-sized prompts inside model input windows, not to
// match any real tokenizer.
std::size_t estimate_tokens(std::string_view text);

// Keeps the leading part of text whose estimate fits max_tokens.
std::string truncate_to_tokens(std::string_view text, std::size_t max_tokens);

}  // namespace slipway
