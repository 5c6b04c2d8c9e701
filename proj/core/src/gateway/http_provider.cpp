#include "lecturekit/gateway/http_provider.hpp"

#include "lecturekit/common/net.hpp"
#include "lecturekit/gateway/mock_provider.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lecturekit::gateway
{

using nlohmann::json;

namespace
{

std::string readFile(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw PreconditionFailed("cannot read attachment " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string mimeFor(const std::filesystem::path& p)
{
    auto ext = p.extension().string();
    if (ext == ".jpg" || ext == ".jpeg")
        return "image/jpeg";
    if (ext == ".webp")
        return "image/webp";
    return "image/png";
}

std::string envOr(const char* name, const std::string& fallback = "")
{
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

} // namespace

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config))
{
    if (config_.apiUrl.empty())
        throw ProviderUnavailable("LLM_API_URL is not set");
    if (config_.apiKey.empty())
        throw ProviderUnavailable("LLM_API_KEY is not set");
    net::parseUrl(config_.apiUrl);
}

json HttpProvider::requestBody(const ProviderRequest& request, const std::string& renderedPrompt) const
{
    const auto& tmpl = PromptTemplate::get(request.templateId);
    json messages = json::array();

    if (tmpl.role() == PromptRole::System)
    {
        messages.push_back({{"role", "system"}, {"content", renderedPrompt}});
        if (!request.userContent.empty())
            messages.push_back({{"role", "user"}, {"content", request.userContent}});
    }
    else
    {
        json content = json::array();
        content.push_back({{"type", "text"}, {"text", renderedPrompt}});
        if (!request.userContent.empty())
            content.push_back({{"type", "text"}, {"text", request.userContent}});
        for (const auto& file : request.attachments)
            content.push_back(
                {{"type", "image_url"},
                 {"image_url", {{"url", "data:" + mimeFor(file) + ";base64," + net::base64(readFile(file))}}}});
        messages.push_back({{"role", "user"}, {"content", content}});
    }

    auto model = config_.models.find(request.modelTier);
    return json{{"model", model == config_.models.end() ? "gpt-4.1-mini" : model->second},
                {"messages", messages}};
}

std::string HttpProvider::generate(const ProviderRequest& request, const std::string& renderedPrompt)
{
    net::Url url = net::parseUrl(config_.apiUrl);
    std::string path = url.path.empty() || url.path == "/" ? "/v1/chat/completions" : url.path;
    std::string body = requestBody(request, renderedPrompt).dump();

    httplib::Client client(url.origin());
    auto secs = static_cast<time_t>(config_.timeoutSec);
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_bearer_token_auth(config_.apiKey);

    net::noteEgress(url.host);
    auto res = client.Post(path, body, "application/json");
    if (!res)
        throw TransportError("request to " + url.host + " failed: " + httplib::to_string(res.error()));
    if (res->status == 429)
        throw RateLimited("provider returned 429");
    if (res->status >= 500)
        throw TransportError("provider returned " + std::to_string(res->status));
    if (res->status < 200 || res->status >= 300)
        throw ProviderUnavailable("provider returned " + std::to_string(res->status) + ": " + res->body);

    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded())
        throw TransportError("provider reply is not JSON");
    try
    {
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    }
    catch (const json::exception&)
    {
        throw TransportError("provider reply has no message content");
    }
}

std::shared_ptr<TextProvider> providerFromEnvironment(bool forceMock)
{
    if (forceMock || envOr("LLM_MOCK") == "1")
        return std::make_shared<MockProvider>();
    HttpProviderConfig config;
    config.apiUrl = envOr("LLM_API_URL");
    config.apiKey = envOr("LLM_API_KEY");
    return std::make_shared<HttpProvider>(std::move(config));
}

} // namespace lecturekit::gateway
