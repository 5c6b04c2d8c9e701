#include "lecturekit/common/net.hpp"

#include "lecturekit/common/error.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cctype>
#include <cstdio>
#include <vector>

namespace lecturekit::net
{

namespace
{
std::atomic<std::uint64_t> gEgress{0};
}

std::uint64_t egressCount()
{
    return gEgress.load();
}

void noteEgress(const std::string& /*host*/)
{
    gEgress.fetch_add(1);
}

std::string Url::origin() const
{
    return scheme + "://" + host + ":" + std::to_string(port);
}

Url parseUrl(const std::string& url)
{
    Url out;
    auto sep = url.find("://");
    if (sep == std::string::npos)
        throw PreconditionFailed("not an absolute URL: " + url);
    out.scheme = url.substr(0, sep);
    if (out.scheme != "http" && out.scheme != "https")
        throw PreconditionFailed("unsupported URL scheme: " + out.scheme);
    std::string rest = url.substr(sep + 3);
    auto slash = rest.find('/');
    std::string authority = rest.substr(0, slash);
    out.path = slash == std::string::npos ? "" : rest.substr(slash);
    auto colon = authority.rfind(':');
    if (colon != std::string::npos && authority.find(']') == std::string::npos)
    {
        out.host = authority.substr(0, colon);
        try
        {
            out.port = std::stoi(authority.substr(colon + 1));
        }
        catch (const std::exception&)
        {
            throw PreconditionFailed("bad port in URL: " + url);
        }
    }
    else
    {
        out.host = authority;
        out.port = out.scheme == "https" ? 443 : 80;
    }
    if (out.host.empty())
        throw PreconditionFailed("URL has no host: " + url);
    return out;
}

std::string base64(const std::string& bytes)
{
    std::vector<unsigned char> out(4 * ((bytes.size() + 2) / 3) + 1);
    int n = EVP_EncodeBlock(out.data(), reinterpret_cast<const unsigned char*>(bytes.data()),
                            static_cast<int>(bytes.size()));
    return std::string(reinterpret_cast<const char*>(out.data()), static_cast<std::size_t>(n));
}

std::string urlEncode(const std::string& s)
{
    std::string out;
    for (unsigned char c : s)
    {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~')
            out.push_back(static_cast<char>(c));
        else
        {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            out += buf;
        }
    }
    return out;
}

} // namespace lecturekit::net
