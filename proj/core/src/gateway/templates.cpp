#include "lecturekit/gateway/templates.hpp"

#include "lecturekit/common/text.hpp"
#include "prompt_texts.inc"

#include <charconv>
#include <functional>
#include <stdexcept>

namespace lecturekit::gateway
{

const char* toString(TemplateId id)
{
    switch (id)
    {
    case TemplateId::SameSlide:
        return "sameSlide";
    case TemplateId::SlideExtract:
        return "slideExtract";
    case TemplateId::QuizGen:
        return "quizGen";
    case TemplateId::HighlightGen:
        return "highlightGen";
    case TemplateId::Clarify:
        return "clarify";
    case TemplateId::VisualKeywords:
        return "visualKeywords";
    case TemplateId::BreakStory:
        return "breakStory";
    }
    return "sameSlide";
}

std::optional<TemplateId> parseTemplateId(std::string_view s)
{
    for (auto id : kAllTemplates)
        if (s == toString(id))
            return id;
    return std::nullopt;
}

std::vector<TemplatePart> splitTemplate(std::string_view body)
{
    std::vector<TemplatePart> parts;
    std::string literal;
    std::size_t i = 0;
    while (i < body.size())
    {
        if (body[i] == '$' && i + 1 < body.size() && body[i + 1] == '{')
        {
            int depth = 1;
            std::size_t j = i + 2;
            while (j < body.size() && depth > 0)
            {
                if (body[j] == '{')
                    ++depth;
                else if (body[j] == '}')
                    --depth;
                ++j;
            }
            if (depth != 0)
                throw std::logic_error("unterminated placeholder in template");
            if (!literal.empty())
                parts.push_back(TemplatePart{false, std::move(literal)});
            literal.clear();
            parts.push_back(TemplatePart{true, std::string(body.substr(i + 2, j - 1 - (i + 2)))});
            i = j;
        }
        else
        {
            literal.push_back(body[i]);
            ++i;
        }
    }
    if (!literal.empty())
        parts.push_back(TemplatePart{false, std::move(literal)});
    return parts;
}

std::string describeDifficulty(const std::string& difficulty)
{
    int level = 0;
    std::string trimmed = text::trim(difficulty);
    auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), level);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
        return difficulty;
    const char* label = level == 1   ? "very easy - basic recall"
                        : level == 2 ? "easy - simple understanding"
                        : level == 3 ? "medium - application"
                        : level == 4 ? "hard - analysis"
                                     : "very hard - synthesis/evaluation";
    return std::to_string(level) + "/5 (" + label + ")";
}

namespace
{

using RuleFn = std::function<std::string(const Bindings&)>;

struct Rule
{
    std::vector<std::string> required;
    std::vector<std::string> optional;
    RuleFn render;
};

const std::string& need(const Bindings& b, const std::string& name)
{
    auto it = b.find(name);
    if (it == b.end())
        throw UnboundPlaceholder(name);
    return it->second;
}

std::optional<std::string> maybe(const Bindings& b, const std::string& name)
{
    auto it = b.find(name);
    if (it == b.end())
        return std::nullopt;
    return it->second;
}

Rule direct(const std::string& name)
{
    return Rule{{name}, {}, [name](const Bindings& b) { return need(b, name); }};
}

// `${x || fallback}`: an absent or empty binding renders as the fallback literal.
Rule orDefault(const std::string& name, std::string fallback)
{
    return Rule{{}, {name}, [name, fallback](const Bindings& b) {
                    auto v = maybe(b, name);
                    return (v && !v->empty()) ? *v : fallback;
                }};
}

// `${cond ? `Label: ${list}` : ''}`
Rule conditionalLine(const std::string& name, std::string label)
{
    return Rule{{}, {name}, [name, label](const Bindings& b) {
                    auto v = maybe(b, name);
                    return v ? label + *v : std::string();
                }};
}

long parseWholeNumber(const std::string& name, const std::string& value)
{
    long n = 0;
    std::string t = text::trim(value);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw PreconditionFailed("binding '" + name + "' must be a whole number, got '" + value + "'");
    return n;
}

/// Binding rule for every expression that appears in the stored bodies, keyed by expression text.
const std::map<std::string, Rule>& rules()
{
    static const std::map<std::string, Rule> table = [] {
        std::map<std::string, Rule> t;
        t["questionsPerSection"] = direct("questionsPerSection");
        t["slideData.title"] = direct("title");
        t["slideData.content.mainConcepts.join(', ')"] = direct("mainConcepts");
        t["slideData.content.keyPoints.join(', ')"] = direct("keyPoints");
        t["slideData.content.equations ? `Equations: ${slideData.content.equations.join(', ')}` : ''"] =
            conditionalLine("equations", "Equations: ");
        t["slideData.content.diagrams ? `Diagrams: ${slideData.content.diagrams.join(', ')}` : ''"] =
            conditionalLine("diagrams", "Diagrams: ");
        t["slideData.transcript"] = direct("transcript");
        t["typeof difficulty === 'number' ? `${difficulty}/5 (${difficulty === 1 ? 'very easy - basic recall' : "
          "difficulty === 2 ? 'easy - simple understanding' : difficulty === 3 ? 'medium - application' : "
          "difficulty === 4 ? 'hard - analysis' : 'very hard - synthesis/evaluation'})` : difficulty"] =
            Rule{{"difficulty"}, {}, [](const Bindings& b) { return describeDifficulty(need(b, "difficulty")); }};
        t["questionTypes.join(', ')"] = direct("questionTypes");
        t["slideTranscript"] = direct("slideTranscript");
        t["currentVideoName || null"] = orDefault("currentVideoName", "null");
        t["summaryText || null"] = orDefault("summaryText", "null");
        t["currentSlideContent || null"] = orDefault("currentSlideContent", "null");
        t["currentVideoName"] = direct("currentVideoName");
        t["breakDuration"] = direct("breakDuration");
        t["summaryText || ''"] = orDefault("summaryText", "");
        t["currentSlideContent || ''"] = orDefault("currentSlideContent", "");
        t["userInterests"] = direct("userInterests");
        t["breakDuration * 150"] = Rule{{"breakDuration"}, {}, [](const Bindings& b) {
                                            return std::to_string(
                                                parseWholeNumber("breakDuration", need(b, "breakDuration")) * 150);
                                        }};
        return t;
    }();
    return table;
}

const Rule& ruleFor(const std::string& expression)
{
    auto it = rules().find(expression);
    if (it == rules().end())
        throw std::logic_error("placeholder without binding rule: " + expression);
    return it->second;
}

Schema sameSlideSchema()
{
    return Schema::object({
        {"isSameSlide", Schema::boolean()},
        {"confidence", Schema::number(0.0, 1.0)},
        {"reason", Schema::string()},
        {"contentChange",
         Schema::object({
             {"type", Schema::stringEnum({"annotation", "human_motion", "cursor", "new_slide", "transition"})},
             {"description", Schema::string()},
         })},
    });
}

Schema slideExtractSchema()
{
    return Schema::object({
        {"title", Schema::string()},
        {"mainTopics", Schema::array(Schema::string())},
        {"hasHumanPresence", Schema::boolean()},
        {"hasAnnotations", Schema::boolean()},
        {"contentFingerprint", Schema::string(1)},
        {"description", Schema::string()},
        {"equations", Schema::array(Schema::string()), false},
        {"diagrams", Schema::array(Schema::string()), false},
    });
}

Schema quizGenSchema()
{
    return Schema::object({
        {"questions", Schema::array(Schema::object({
                          {"type", Schema::stringEnum({"multiple-choice", "true-false", "fill-blank"})},
                          {"question", Schema::string(1)},
                          {"options", Schema::array(Schema::string())},
                          {"correctAnswer", Schema::string(1)},
                          {"explanation", Schema::string()},
                          {"difficulty", Schema::stringOrNumber()},
                      }))},
    });
}

Schema highlightGenSchema()
{
    return Schema::array(Schema::object({
        {"box_2d", Schema::array(Schema::number(), 4, 4)},
        {"relavant_transcript", Schema::string()},
    }));
}

Schema visualKeywordsSchema()
{
    return Schema::object({{"keywords", Schema::string()}});
}

} // namespace

PromptTemplate::PromptTemplate(TemplateId id, std::string body, PromptRole role, bool requiresImages,
                               std::optional<Schema> schema)
    : id_(id), body_(std::move(body)), role_(role), requiresImages_(requiresImages), schema_(std::move(schema)),
      parts_(splitTemplate(body_))
{
    for (const auto& part : parts_)
        if (part.isPlaceholder)
            (void)ruleFor(part.text);
}

std::vector<Placeholder> PromptTemplate::placeholders() const
{
    std::vector<Placeholder> out;
    for (const auto& part : parts_)
    {
        if (!part.isPlaceholder)
            continue;
        const Rule& rule = ruleFor(part.text);
        out.push_back(Placeholder{part.text, rule.required, rule.optional});
    }
    return out;
}

std::string PromptTemplate::render(const Bindings& bindings) const
{
    std::string out;
    out.reserve(body_.size() + 256);
    for (const auto& part : parts_)
        out += part.isPlaceholder ? ruleFor(part.text).render(bindings) : part.text;
    return out;
}

const PromptTemplate& PromptTemplate::get(TemplateId id)
{
    static const std::vector<PromptTemplate> all = [] {
        std::vector<PromptTemplate> v;
        v.push_back(PromptTemplate(TemplateId::SameSlide, detail::kSameSlideTemplate, PromptRole::User, true,
                                   sameSlideSchema()));
        v.push_back(PromptTemplate(TemplateId::SlideExtract, detail::kSlideExtractTemplate, PromptRole::User, true,
                                   slideExtractSchema()));
        v.push_back(PromptTemplate(TemplateId::QuizGen, detail::kQuizGenTemplate, PromptRole::User, false,
                                   quizGenSchema()));
        v.push_back(PromptTemplate(TemplateId::HighlightGen, detail::kHighlightGenTemplate, PromptRole::User, true,
                                   highlightGenSchema()));
        v.push_back(PromptTemplate(TemplateId::Clarify, detail::kClarifyTemplate, PromptRole::System, false,
                                   std::nullopt));
        v.push_back(PromptTemplate(TemplateId::VisualKeywords, detail::kVisualKeywordsTemplate, PromptRole::User,
                                   true, visualKeywordsSchema()));
        v.push_back(PromptTemplate(TemplateId::BreakStory, detail::kBreakStoryTemplate, PromptRole::System, false,
                                   std::nullopt));
        return v;
    }();
    return all.at(static_cast<std::size_t>(id));
}

std::string renderPrompt(TemplateId id, const Bindings& bindings)
{
    return PromptTemplate::get(id).render(bindings);
}

} // namespace lecturekit::gateway
