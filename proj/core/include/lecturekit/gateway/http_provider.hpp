#pragma once

#include "lecturekit/gateway/gateway.hpp"

#include <map>
#include <memory>
#include <string>

namespace lecturekit::gateway
{

struct HttpProviderConfig
{
    /// Chat-completions endpoint; a bare origin gets "/v1/chat/completions".
    std::string apiUrl;
    std::string apiKey;
    std::map<ModelTier, std::string> models{
        {ModelTier::Nano, "gpt-4.1-nano"}, {ModelTier::Mini, "gpt-4.1-mini"}, {ModelTier::Pro, "gpt-4.1"}};
    double timeoutSec{60.0};
};

/// OpenAI-compatible chat-completions client. Images travel as base64 data URIs.
/// 429 raises RateLimited, 5xx and connection failures TransportError, other
/// non-2xx statuses ProviderUnavailable.
class HttpProvider : public TextProvider
{
  public:
    explicit HttpProvider(HttpProviderConfig config);

    std::string generate(const ProviderRequest& request, const std::string& renderedPrompt) override;

    /// Request body that generate() would send, exposed for tests.
    nlohmann::json requestBody(const ProviderRequest& request, const std::string& renderedPrompt) const;

  private:
    HttpProviderConfig config_;
};

/// MockProvider when `forceMock` or LLM_MOCK=1, otherwise an HttpProvider from
/// LLM_API_URL / LLM_API_KEY. Missing configuration raises ProviderUnavailable.
std::shared_ptr<TextProvider> providerFromEnvironment(bool forceMock);

} // namespace lecturekit::gateway
