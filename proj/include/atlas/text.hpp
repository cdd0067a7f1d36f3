#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace atlas {

// Lowercases ASCII letters; bytes outside ASCII pass through untouched.
std::string to_lower_ascii(std::string_view text);

std::string trim(std::string_view text);

// Splits on every byte that is not an ASCII letter, digit, hyphen, or part of a
// multi-byte UTF-8 sequence. Tokens are lowercased; hyphens at either end of a
// token are dropped so "dual-mode" survives but a stray " - " does not.
std::vector<std::string> tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string join_tokens(const std::vector<std::string>& tokens, std::size_t first,
                        std::size_t count);

}  // namespace atlas
