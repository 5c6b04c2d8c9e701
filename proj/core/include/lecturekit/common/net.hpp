#pragma once

#include <cstdint>
#include <string>

namespace lecturekit::net
{

/// Number of outbound HTTP requests attempted by any client in this process.
std::uint64_t egressCount();

/// Called by every outbound client right before it connects.
void noteEgress(const std::string& host);

/// Pieces of an absolute http(s) URL.
struct Url
{
    std::string scheme;
    std::string host;
    int port{0};
    std::string path;

    /// "scheme://host:port", the form the HTTP client expects.
    std::string origin() const;
};

/// Throws PreconditionFailed when `url` is not an absolute http(s) URL.
Url parseUrl(const std::string& url);

/// Standard base64 of raw bytes.
std::string base64(const std::string& bytes);

/// Percent-encodes everything except unreserved characters.
std::string urlEncode(const std::string& s);

} // namespace lecturekit::net
