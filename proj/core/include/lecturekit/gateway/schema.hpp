#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lecturekit::gateway
{

struct SchemaField;

/// Minimal structural schema for provider replies: shapes, required keys,
/// numeric ranges, array lengths, string enums.
struct Schema
{
    enum class Kind
    {
        Object,
        Array,
        String,
        Number,
        Boolean,
        StringOrNumber,
    };

    Kind kind{Kind::String};
    std::vector<SchemaField> fields;
    std::vector<Schema> items; // element schema for arrays (0 or 1 entries)
    std::optional<double> minimum;
    std::optional<double> maximum;
    std::optional<std::size_t> minItems;
    std::optional<std::size_t> maxItems;
    std::optional<std::size_t> minLength;
    std::vector<std::string> enumValues;

    static Schema object(std::vector<SchemaField> fields);
    static Schema array(Schema element, std::optional<std::size_t> minItems = std::nullopt,
                        std::optional<std::size_t> maxItems = std::nullopt);
    static Schema string(std::optional<std::size_t> minLength = std::nullopt);
    static Schema stringEnum(std::vector<std::string> values);
    static Schema number(std::optional<double> minimum = std::nullopt, std::optional<double> maximum = std::nullopt);
    static Schema boolean();
    static Schema stringOrNumber();
};

struct SchemaField
{
    std::string name;
    Schema schema;
    bool required{true};
};

/// Returns the JSON path of the first violation, or nullopt when `value` conforms.
std::optional<std::string> validate(const Schema& schema, const nlohmann::json& value, const std::string& path = "$");

enum class ParseErrorKind
{
    NoJsonFound,
    MultipleJsonValues,
    SchemaMismatch,
};

const char* toString(ParseErrorKind kind);

struct ParseError
{
    ParseErrorKind kind{ParseErrorKind::NoJsonFound};
    std::string path; // set for SchemaMismatch
    std::string message;
};

struct ParseResult
{
    std::optional<nlohmann::json> value;
    std::optional<ParseError> error;

    bool ok() const
    {
        return value.has_value();
    }
};

/// Extracts the single top-level JSON object or array from provider text.
/// Markdown fence lines are dropped and trailing commas before `}`/`]` are
/// removed; no other repair is attempted. Never throws.
ParseResult parseStructured(std::string_view rawText, const Schema& schema);

/// Every top-level object/array found in the text, in order (after the same repairs).
std::vector<nlohmann::json> extractJsonValues(std::string_view rawText);

} // namespace lecturekit::gateway
