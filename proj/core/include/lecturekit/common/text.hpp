#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lecturekit::text
{

std::string trim(std::string_view s);
std::string toLower(std::string_view s);

/// Trimmed, internal whitespace runs collapsed to one space; case is kept.
std::string collapseWhitespace(std::string_view s);

/// Trimmed, ASCII case-folded, internal whitespace runs collapsed to one space.
std::string normalize(std::string_view s);

std::vector<std::string> splitWords(std::string_view s);
std::size_t wordCount(std::string_view s);

/// Number of sentences, counting runs of `.`, `!` or `?` followed by
/// whitespace or end of text. Non-empty text without a terminator counts as one.
std::size_t sentenceCount(std::string_view s);

/// Number of Unicode code points in a UTF-8 string.
std::size_t codePointCount(std::string_view utf8);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string toHex(std::uint64_t value);

/// Lowercase alphanumeric tokens with a small English stopword list removed.
std::vector<std::string> contentTokens(std::string_view s);

} // namespace lecturekit::text
