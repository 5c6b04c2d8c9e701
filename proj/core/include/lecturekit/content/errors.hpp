#pragma once

#include "lecturekit/common/error.hpp"

#include <string>

namespace lecturekit::content
{

class MissingManifest : public Error
{
  public:
    explicit MissingManifest(const std::string& dir)
        : Error("MissingManifest", "no manifest.json in " + dir)
    {
    }
};

class SchemaViolation : public Error
{
  public:
    SchemaViolation(std::string field, std::string reason)
        : Error("SchemaViolation", field + ": " + reason), field_(std::move(field)), reason_(std::move(reason))
    {
    }

    const std::string& field() const noexcept
    {
        return field_;
    }
    const std::string& reason() const noexcept
    {
        return reason_;
    }

  private:
    std::string field_;
    std::string reason_;
};

class DanglingReference : public Error
{
  public:
    explicit DanglingReference(std::string file)
        : Error("DanglingReference", "referenced file does not exist: " + file), file_(std::move(file))
    {
    }

    const std::string& file() const noexcept
    {
        return file_;
    }

  private:
    std::string file_;
};

class IoError : public Error
{
  public:
    explicit IoError(const std::string& message) : Error("IoError", message) {}
};

class MissingField : public Error
{
  public:
    explicit MissingField(std::string name)
        : Error("MissingField", "missing field: " + name), name_(std::move(name))
    {
    }

    const std::string& name() const noexcept
    {
        return name_;
    }

  private:
    std::string name_;
};

class BadEnum : public Error
{
  public:
    BadEnum(std::string field, const std::string& value)
        : Error("BadEnum", field + ": unsupported value '" + value + "'"), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept
    {
        return field_;
    }

  private:
    std::string field_;
};

class AnswerNotInOptions : public Error
{
  public:
    explicit AnswerNotInOptions(const std::string& answer)
        : Error("AnswerNotInOptions", "correctAnswer '" + answer + "' is not one of the options")
    {
    }
};

} // namespace lecturekit::content
