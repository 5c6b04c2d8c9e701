#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lecturekit
{

/// Base of every typed error raised by the library. `code()` is a stable
/// machine-readable identifier; the service layer maps each code onto one
/// HTTP status.
class Error : public std::runtime_error
{
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code))
    {
    }

    const std::string& code() const noexcept
    {
        return code_;
    }

  private:
    std::string code_;
};

/// Raised when an operation is called with arguments that break its
/// precondition (empty text, break length not in {1,3,5}, ...).
class PreconditionFailed : public Error
{
  public:
    explicit PreconditionFailed(const std::string& message) : Error("PreconditionFailed", message) {}
};

class NotFound : public Error
{
  public:
    explicit NotFound(const std::string& message) : Error("NotFound", message) {}
};

} // namespace lecturekit
