#include "lecturekit/gateway/gateway.hpp"

#include <algorithm>

namespace lecturekit::gateway
{

const char* toString(ModelTier tier)
{
    switch (tier)
    {
    case ModelTier::Nano:
        return "nano";
    case ModelTier::Mini:
        return "mini";
    case ModelTier::Pro:
        return "pro";
    }
    return "mini";
}

TokenBucket::TokenBucket(double capacity, double refillPerSecond)
    : capacity_(capacity), refillPerSecond_(refillPerSecond), tokens_(capacity),
      last_(std::chrono::steady_clock::now())
{
}

bool TokenBucket::tryAcquire()
{
    std::lock_guard lock(mutex_);
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + elapsed * refillPerSecond_);
    if (tokens_ < 1.0)
        return false;
    tokens_ -= 1.0;
    return true;
}

Gateway::Gateway(std::shared_ptr<TextProvider> provider, GatewayOptions options)
    : provider_(std::move(provider)), options_(std::move(options))
{
    if (!provider_)
        throw PreconditionFailed("gateway needs a provider");
}

ProviderResponse Gateway::complete(const ProviderRequest& request) const
{
    const PromptTemplate& tmpl = PromptTemplate::get(request.templateId);
    if (tmpl.requiresImages() == request.attachments.empty())
        throw PreconditionFailed(std::string(toString(request.templateId)) +
                                 (tmpl.requiresImages() ? " requires image attachments" : " takes no attachments"));

    const std::string rendered = tmpl.render(request.bindings);
    const Schema* schema = tmpl.responseSchema();

    ProviderRequest attempt = request;
    std::optional<ParseError> lastParseError;
    std::string lastTransportError;
    auto started = std::chrono::steady_clock::now();

    for (int i = 0; i <= options_.maxRetries; ++i)
    {
        if (options_.rateLimit && !options_.rateLimit->tryAcquire())
            throw BudgetExceeded("provider rate limit exhausted");

        std::string raw;
        try
        {
            raw = provider_->generate(attempt, rendered);
        }
        catch (const RateLimited& e)
        {
            throw BudgetExceeded(e.what());
        }
        catch (const TransportError& e)
        {
            lastTransportError = e.what();
            lastParseError.reset();
            continue;
        }

        ProviderResponse response;
        response.rawText = std::move(raw);
        response.attempts = i + 1;
        if (schema == nullptr)
        {
            response.latencyMs =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
            return response;
        }

        ParseResult parsed = parseStructured(response.rawText, *schema);
        if (parsed.ok())
        {
            response.parsed = std::move(parsed.value);
            response.latencyMs =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
            return response;
        }
        lastParseError = parsed.error;
        lastTransportError.clear();
        if (attempt.userContent.find(kJsonRepairSuffix) == std::string::npos)
            attempt.userContent += attempt.userContent.empty() ? kJsonRepairSuffix
                                                               : std::string("\n\n") + kJsonRepairSuffix;
    }

    if (lastParseError)
        throw PersistentSchemaMismatch(request.templateId, *lastParseError);
    throw ProviderUnavailable(std::string(toString(request.templateId)) + " failed after " +
                              std::to_string(options_.maxRetries + 1) + " attempts: " + lastTransportError);
}

} // namespace lecturekit::gateway
