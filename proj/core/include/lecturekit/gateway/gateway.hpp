#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/gateway/schema.hpp"
#include "lecturekit/gateway/templates.hpp"

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::gateway
{

enum class ModelTier
{
    Nano,
    Mini,
    Pro,
};

const char* toString(ModelTier tier);

struct ProviderRequest
{
    TemplateId templateId{TemplateId::Clarify};
    Bindings bindings;
    std::vector<std::filesystem::path> attachments;
    ModelTier modelTier{ModelTier::Mini};
    /// Learner-side message sent after the rendered template (question, area context, ...).
    std::string userContent;
};

struct ProviderResponse
{
    std::string rawText;
    std::optional<nlohmann::json> parsed;
    std::optional<ParseError> parseError;
    double latencyMs{0.0};
    int attempts{0};
};

class ProviderUnavailable : public Error
{
  public:
    explicit ProviderUnavailable(const std::string& message) : Error("ProviderUnavailable", message) {}
};

class BudgetExceeded : public Error
{
  public:
    explicit BudgetExceeded(const std::string& message) : Error("BudgetExceeded", message) {}
};

class PersistentSchemaMismatch : public Error
{
  public:
    PersistentSchemaMismatch(TemplateId id, const ParseError& last)
        : Error("PersistentSchemaMismatch",
                std::string(toString(id)) + ": reply never matched its schema (" + last.message + ")"),
          last_(last)
    {
    }

    const ParseError& lastError() const noexcept
    {
        return last_;
    }

  private:
    ParseError last_;
};

/// Raised by providers for failures worth retrying (connection refused, 5xx, timeouts).
class TransportError : public Error
{
  public:
    explicit TransportError(const std::string& message) : Error("TransportError", message) {}
};

/// Raised by providers when the remote side refuses for quota reasons.
class RateLimited : public Error
{
  public:
    explicit RateLimited(const std::string& message) : Error("RateLimited", message) {}
};

/// A text-generation backend. Implementations must be safe for concurrent calls.
class TextProvider
{
  public:
    virtual ~TextProvider() = default;

    /// `renderedPrompt` is the template body with bindings substituted.
    virtual std::string generate(const ProviderRequest& request, const std::string& renderedPrompt) = 0;
};

/// Token bucket shared by all calls through one gateway.
class TokenBucket
{
  public:
    TokenBucket(double capacity, double refillPerSecond);

    bool tryAcquire();

  private:
    std::mutex mutex_;
    double capacity_;
    double refillPerSecond_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
};

inline constexpr int kDefaultRetries = 2;
inline constexpr const char* kJsonRepairSuffix = "Respond with valid JSON only.";

struct GatewayOptions
{
    int maxRetries{kDefaultRetries};
    std::shared_ptr<TokenBucket> rateLimit;
};

class Gateway
{
  public:
    explicit Gateway(std::shared_ptr<TextProvider> provider, GatewayOptions options = {});

    /// Renders, calls the provider, and validates the reply against the template
    /// schema. Transport failures and schema mismatches are retried up to
    /// `maxRetries` times; mismatches re-prompt with kJsonRepairSuffix.
    ProviderResponse complete(const ProviderRequest& request) const;

    TextProvider& provider() const
    {
        return *provider_;
    }

  private:
    std::shared_ptr<TextProvider> provider_;
    GatewayOptions options_;
};

/// Line prefixes of the learner message built for clarify requests.
namespace user_content
{
inline constexpr const char* kQuestion = "Question: ";
inline constexpr const char* kSelectedArea = "Selected area: ";
inline constexpr const char* kNearbyText = "Text near the selected area: ";
inline constexpr const char* kMode = "Mode: ";
inline constexpr const char* kInterests = "Learner interests: ";
} // namespace user_content

} // namespace lecturekit::gateway
