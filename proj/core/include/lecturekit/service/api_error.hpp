#pragma once

#include <nlohmann/json.hpp>

#include <exception>
#include <map>
#include <optional>
#include <string>

namespace lecturekit::service
{

struct ApiError
{
    std::string code;
    int httpStatus{500};
    std::string message;
    std::optional<std::map<std::string, std::string>> detail;
};

/// 400 validation, 404 unknown id, 409 illegal transition, 502 provider failure, 500 otherwise.
int httpStatusFor(const std::string& code);

/// Maps any exception to its API error; lecturekit::Error codes are preserved.
ApiError toApiError(const std::exception& e);

nlohmann::json toJson(const ApiError& error);

} // namespace lecturekit::service
