#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/gateway/schema.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lecturekit::gateway
{

enum class TemplateId
{
    SameSlide,
    SlideExtract,
    QuizGen,
    HighlightGen,
    Clarify,
    VisualKeywords,
    BreakStory,
};

inline constexpr std::array<TemplateId, 7> kAllTemplates = {
    TemplateId::SameSlide, TemplateId::SlideExtract,   TemplateId::QuizGen,   TemplateId::HighlightGen,
    TemplateId::Clarify,   TemplateId::VisualKeywords, TemplateId::BreakStory};

const char* toString(TemplateId id);
std::optional<TemplateId> parseTemplateId(std::string_view s);

using Bindings = std::map<std::string, std::string>;

class UnboundPlaceholder : public Error
{
  public:
    explicit UnboundPlaceholder(std::string name)
        : Error("UnboundPlaceholder", "no binding for placeholder '" + name + "'"), name_(std::move(name))
    {
    }

    const std::string& name() const noexcept
    {
        return name_;
    }

  private:
    std::string name_;
};

/// Where the rendered body goes in a chat exchange.
enum class PromptRole
{
    System,
    User,
};

/// One `${...}` site in a template body.
struct Placeholder
{
    /// Expression text between `${` and the matching `}`.
    std::string expression;
    /// Binding names the rule reads; a required one must be present.
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

/// A template body split into alternating literal text and placeholder sites.
struct TemplatePart
{
    bool isPlaceholder{false};
    std::string text; // literal text, or the placeholder expression
};

class PromptTemplate
{
  public:
    TemplateId id() const
    {
        return id_;
    }
    const std::string& body() const
    {
        return body_;
    }
    PromptRole role() const
    {
        return role_;
    }
    bool requiresImages() const
    {
        return requiresImages_;
    }
    /// Null for templates whose reply is free text.
    const Schema* responseSchema() const
    {
        return schema_ ? &*schema_ : nullptr;
    }
    const std::vector<TemplatePart>& parts() const
    {
        return parts_;
    }
    std::vector<Placeholder> placeholders() const;

    /// Substitutes every placeholder; throws UnboundPlaceholder for a missing required binding.
    std::string render(const Bindings& bindings) const;

    static const PromptTemplate& get(TemplateId id);

  private:
    PromptTemplate(TemplateId id, std::string body, PromptRole role, bool requiresImages, std::optional<Schema> schema);

    TemplateId id_;
    std::string body_;
    PromptRole role_;
    bool requiresImages_;
    std::optional<Schema> schema_;
    std::vector<TemplatePart> parts_;
};

/// Splits a body at `${...}` sites, matching nested braces.
std::vector<TemplatePart> splitTemplate(std::string_view body);

std::string renderPrompt(TemplateId id, const Bindings& bindings);

/// `difficulty` rendering: an integer 1..5 gets its level description, anything else passes through.
std::string describeDifficulty(const std::string& difficulty);

} // namespace lecturekit::gateway
