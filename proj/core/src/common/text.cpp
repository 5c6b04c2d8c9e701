#include "lecturekit/common/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace lecturekit::text
{

namespace
{

bool isSpace(char c)
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

constexpr std::array<std::string_view, 40> kStopwords = {
    "a",    "an",   "and",  "are",  "as",    "at",   "be",   "but",  "by",   "for",
    "from", "has",  "have", "in",   "is",    "it",   "its",  "of",   "on",   "or",
    "so",   "that", "the",  "this", "these", "those", "to",  "was",  "we",   "were",
    "what", "when", "which", "with", "you",  "your", "i",    "our",  "can",  "will"};

} // namespace

std::string trim(std::string_view s)
{
    auto begin = s.begin();
    auto end = s.end();
    while (begin != end && isSpace(*begin))
        ++begin;
    while (end != begin && isSpace(*(end - 1)))
        --end;
    return std::string(begin, end);
}

std::string toLower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string collapseWhitespace(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    bool pendingSpace = false;
    for (char c : s)
    {
        if (isSpace(c))
        {
            pendingSpace = !out.empty();
            continue;
        }
        if (pendingSpace)
        {
            out.push_back(' ');
            pendingSpace = false;
        }
        out.push_back(c);
    }
    return out;
}

std::string normalize(std::string_view s)
{
    return toLower(collapseWhitespace(s));
}

std::vector<std::string> splitWords(std::string_view s)
{
    std::vector<std::string> words;
    std::string current;
    for (char c : s)
    {
        if (isSpace(c))
        {
            if (!current.empty())
                words.push_back(std::move(current));
            current.clear();
        }
        else
        {
            current.push_back(c);
        }
    }
    if (!current.empty())
        words.push_back(std::move(current));
    return words;
}

std::size_t wordCount(std::string_view s)
{
    return splitWords(s).size();
}

std::size_t sentenceCount(std::string_view s)
{
    std::size_t count = 0;
    bool sawContent = false;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        char c = s[i];
        if (c == '.' || c == '!' || c == '?')
        {
            while (i + 1 < s.size() && (s[i + 1] == '.' || s[i + 1] == '!' || s[i + 1] == '?'))
                ++i;
            bool boundary = (i + 1 == s.size()) || isSpace(s[i + 1]) || s[i + 1] == '"';
            if (boundary && sawContent)
            {
                ++count;
                sawContent = false;
            }
        }
        else if (!isSpace(c))
        {
            sawContent = true;
        }
    }
    if (sawContent)
        ++count;
    return count;
}

std::size_t codePointCount(std::string_view utf8)
{
    return static_cast<std::size_t>(
        std::count_if(utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i != 0)
            out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string toHex(std::uint64_t value)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i)
    {
        out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::vector<std::string> contentTokens(std::string_view s)
{
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty())
            return;
        if (std::find(kStopwords.begin(), kStopwords.end(), current) == kStopwords.end())
            tokens.push_back(current);
        current.clear();
    };
    for (char c : s)
    {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || uc >= 0x80)
            current.push_back(static_cast<char>(std::tolower(uc)));
        else
            flush();
    }
    flush();
    return tokens;
}

} // namespace lecturekit::text
