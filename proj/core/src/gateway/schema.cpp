#include "lecturekit/gateway/schema.hpp"

#include <cmath>

namespace lecturekit::gateway
{

using nlohmann::json;

Schema Schema::object(std::vector<SchemaField> fields)
{
    Schema s;
    s.kind = Kind::Object;
    s.fields = std::move(fields);
    return s;
}

Schema Schema::array(Schema element, std::optional<std::size_t> minItems, std::optional<std::size_t> maxItems)
{
    Schema s;
    s.kind = Kind::Array;
    s.items.push_back(std::move(element));
    s.minItems = minItems;
    s.maxItems = maxItems;
    return s;
}

Schema Schema::string(std::optional<std::size_t> minLength)
{
    Schema s;
    s.kind = Kind::String;
    s.minLength = minLength;
    return s;
}

Schema Schema::stringEnum(std::vector<std::string> values)
{
    Schema s;
    s.kind = Kind::String;
    s.enumValues = std::move(values);
    return s;
}

Schema Schema::number(std::optional<double> minimum, std::optional<double> maximum)
{
    Schema s;
    s.kind = Kind::Number;
    s.minimum = minimum;
    s.maximum = maximum;
    return s;
}

Schema Schema::boolean()
{
    Schema s;
    s.kind = Kind::Boolean;
    return s;
}

Schema Schema::stringOrNumber()
{
    Schema s;
    s.kind = Kind::StringOrNumber;
    return s;
}

std::optional<std::string> validate(const Schema& schema, const json& value, const std::string& path)
{
    switch (schema.kind)
    {
    case Schema::Kind::Object: {
        if (!value.is_object())
            return path;
        for (const auto& field : schema.fields)
        {
            std::string child = path + "." + field.name;
            auto it = value.find(field.name);
            if (it == value.end())
            {
                if (field.required)
                    return child;
                continue;
            }
            if (auto bad = validate(field.schema, *it, child))
                return bad;
        }
        return std::nullopt;
    }
    case Schema::Kind::Array: {
        if (!value.is_array())
            return path;
        if (schema.minItems && value.size() < *schema.minItems)
            return path;
        if (schema.maxItems && value.size() > *schema.maxItems)
            return path;
        if (!schema.items.empty())
        {
            for (std::size_t i = 0; i < value.size(); ++i)
                if (auto bad = validate(schema.items.front(), value[i], path + "[" + std::to_string(i) + "]"))
                    return bad;
        }
        return std::nullopt;
    }
    case Schema::Kind::String: {
        if (!value.is_string())
            return path;
        const auto& s = value.get_ref<const std::string&>();
        if (schema.minLength && s.size() < *schema.minLength)
            return path;
        if (!schema.enumValues.empty())
        {
            bool found = false;
            for (const auto& e : schema.enumValues)
                found = found || e == s;
            if (!found)
                return path;
        }
        return std::nullopt;
    }
    case Schema::Kind::Number: {
        if (!value.is_number())
            return path;
        double d = value.get<double>();
        if (!std::isfinite(d))
            return path;
        if (schema.minimum && d < *schema.minimum)
            return path;
        if (schema.maximum && d > *schema.maximum)
            return path;
        return std::nullopt;
    }
    case Schema::Kind::Boolean:
        return value.is_boolean() ? std::nullopt : std::optional<std::string>(path);
    case Schema::Kind::StringOrNumber:
        return (value.is_string() || value.is_number()) ? std::nullopt : std::optional<std::string>(path);
    }
    return path;
}

const char* toString(ParseErrorKind kind)
{
    switch (kind)
    {
    case ParseErrorKind::NoJsonFound:
        return "NoJsonFound";
    case ParseErrorKind::MultipleJsonValues:
        return "MultipleJsonValues";
    case ParseErrorKind::SchemaMismatch:
        return "SchemaMismatch";
    }
    return "NoJsonFound";
}

namespace
{

/// Drops lines whose first non-blank characters are a ``` fence marker.
std::string stripFences(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        std::size_t first = line.find_first_not_of(" \t\r");
        bool fence = first != std::string_view::npos && line.substr(first, 3) == "```";
        if (!fence)
        {
            out.append(line);
            if (nl != std::string_view::npos)
                out.push_back('\n');
        }
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

/// End index (exclusive) of the bracketed value starting at `start`, honouring strings.
std::optional<std::size_t> matchBrackets(const std::string& text, std::size_t start)
{
    std::vector<char> stack;
    bool inString = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i)
    {
        char c = text[i];
        if (inString)
        {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                inString = false;
            continue;
        }
        switch (c)
        {
        case '"':
            inString = true;
            break;
        case '{':
            stack.push_back('}');
            break;
        case '[':
            stack.push_back(']');
            break;
        case '}':
        case ']':
            if (stack.empty() || stack.back() != c)
                return std::nullopt;
            stack.pop_back();
            if (stack.empty())
                return i + 1;
            break;
        default:
            break;
        }
    }
    return std::nullopt;
}

std::string removeTrailingCommas(std::string_view candidate)
{
    std::string out;
    out.reserve(candidate.size());
    bool inString = false;
    bool escaped = false;
    for (std::size_t i = 0; i < candidate.size(); ++i)
    {
        char c = candidate[i];
        if (inString)
        {
            out.push_back(c);
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                inString = false;
            continue;
        }
        if (c == '"')
        {
            inString = true;
            out.push_back(c);
            continue;
        }
        if (c == ',')
        {
            std::size_t j = i + 1;
            while (j < candidate.size() && (candidate[j] == ' ' || candidate[j] == '\n' || candidate[j] == '\t' ||
                                            candidate[j] == '\r'))
                ++j;
            if (j < candidate.size() && (candidate[j] == '}' || candidate[j] == ']'))
                continue;
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

std::vector<json> extractJsonValues(std::string_view rawText)
{
    std::vector<json> values;
    std::string text = stripFences(rawText);
    std::size_t i = 0;
    while (i < text.size())
    {
        char c = text[i];
        if (c != '{' && c != '[')
        {
            ++i;
            continue;
        }
        auto end = matchBrackets(text, i);
        if (end)
        {
            json parsed = json::parse(removeTrailingCommas(std::string_view(text).substr(i, *end - i)), nullptr, false);
            if (!parsed.is_discarded())
            {
                values.push_back(std::move(parsed));
                i = *end;
                continue;
            }
        }
        ++i;
    }
    return values;
}

ParseResult parseStructured(std::string_view rawText, const Schema& schema)
{
    ParseResult result;
    try
    {
        auto values = extractJsonValues(rawText);
        if (values.empty())
        {
            result.error = ParseError{ParseErrorKind::NoJsonFound, "", "no JSON object or array in reply"};
            return result;
        }
        if (values.size() > 1)
        {
            result.error = ParseError{ParseErrorKind::MultipleJsonValues, "",
                                      std::to_string(values.size()) + " JSON values in reply"};
            return result;
        }
        if (auto bad = validate(schema, values.front()))
        {
            result.error = ParseError{ParseErrorKind::SchemaMismatch, *bad, "schema mismatch at " + *bad};
            return result;
        }
        result.value = std::move(values.front());
    }
    catch (const std::exception& e)
    {
        result.value.reset();
        result.error = ParseError{ParseErrorKind::NoJsonFound, "", e.what()};
    }
    return result;
}

} // namespace lecturekit::gateway
