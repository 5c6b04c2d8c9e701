#include "lecturekit/service/api_error.hpp"

#include "lecturekit/common/error.hpp"
#include "lecturekit/content/errors.hpp"
#include "lecturekit/gateway/gateway.hpp"

#include <set>

namespace lecturekit::service
{

int httpStatusFor(const std::string& code)
{
    static const std::set<std::string> badRequest = {
        "PreconditionFailed", "ValidationError", "SchemaViolation", "MissingField", "BadEnum",
        "AnswerNotInOptions", "UnboundPlaceholder", "ImageUndecodable", "NoFreeRegion", "EmptyResults"};
    static const std::set<std::string> notFound = {"NotFound", "MissingManifest", "DanglingReference"};
    static const std::set<std::string> badGateway = {"ProviderUnavailable", "PersistentSchemaMismatch",
                                                     "BudgetExceeded",      "SearchUnavailable",
                                                     "TransportError",      "RateLimited",
                                                     "AvatarSessionUnavailable"};
    if (badRequest.count(code))
        return 400;
    if (notFound.count(code))
        return 404;
    if (code == "IllegalTransition")
        return 409;
    if (badGateway.count(code))
        return 502;
    return 500;
}

ApiError toApiError(const std::exception& e)
{
    ApiError out;
    out.message = e.what();
    if (const auto* err = dynamic_cast<const Error*>(&e))
    {
        out.code = err->code();
        if (const auto* sv = dynamic_cast<const content::SchemaViolation*>(&e))
            out.detail = std::map<std::string, std::string>{{"field", sv->field()}, {"reason", sv->reason()}};
        if (const auto* pm = dynamic_cast<const gateway::PersistentSchemaMismatch*>(&e))
            out.detail = std::map<std::string, std::string>{{"path", pm->lastError().path}};
    }
    else if (dynamic_cast<const nlohmann::json::exception*>(&e))
        out.code = "ValidationError";
    else
        out.code = "Internal";
    out.httpStatus = httpStatusFor(out.code);
    return out;
}

nlohmann::json toJson(const ApiError& error)
{
    nlohmann::json j = {{"code", error.code}, {"httpStatus", error.httpStatus}, {"message", error.message}};
    if (error.detail)
        j["detail"] = *error.detail;
    return {{"error", j}};
}

} // namespace lecturekit::service
