#include "lecturekit/content/model.hpp"

#include "lecturekit/common/time.hpp"

#include <cmath>

namespace lecturekit::content
{

const char* toString(QuizType type)
{
    switch (type)
    {
    case QuizType::MultipleChoice:
        return "multiple-choice";
    case QuizType::TrueFalse:
        return "true-false";
    case QuizType::FillBlank:
        return "fill-blank";
    }
    return "multiple-choice";
}

std::optional<QuizType> parseQuizType(const std::string& s)
{
    if (s == "multiple-choice")
        return QuizType::MultipleChoice;
    if (s == "true-false")
        return QuizType::TrueFalse;
    if (s == "fill-blank")
        return QuizType::FillBlank;
    return std::nullopt;
}

const Section* LectureBundle::findSection(const std::string& sectionId) const
{
    for (const auto& s : sections)
        if (s.id == sectionId)
            return &s;
    return nullptr;
}

std::optional<std::size_t> LectureBundle::sectionIndexAt(double t) const
{
    for (std::size_t i = 0; i < sections.size(); ++i)
    {
        const auto& s = sections[i];
        bool last = (i + 1 == sections.size());
        if (t >= s.startSec - kTimeEpsilon && (t < s.endSec || (last && t <= s.endSec + kTimeEpsilon)))
            return i;
    }
    return std::nullopt;
}

namespace
{

bool near(double a, double b)
{
    return std::fabs(a - b) <= kTimeEpsilon;
}

bool spanEqual(const std::optional<TimeSpan>& a, const std::optional<TimeSpan>& b)
{
    if (a.has_value() != b.has_value())
        return false;
    return !a || (near(a->startSec, b->startSec) && near(a->endSec, b->endSec));
}

bool rectNear(const Rect& a, const Rect& b)
{
    constexpr double eps = 1e-9;
    return std::fabs(a.x0 - b.x0) <= eps && std::fabs(a.y0 - b.y0) <= eps && std::fabs(a.x1 - b.x1) <= eps &&
           std::fabs(a.y1 - b.y1) <= eps;
}

bool sectionEqual(const Section& a, const Section& b)
{
    if (a.id != b.id || !near(a.startSec, b.startSec) || !near(a.endSec, b.endSec) ||
        a.slideImageRef != b.slideImageRef || a.title != b.title || a.mainConcepts != b.mainConcepts ||
        a.keyPoints != b.keyPoints || a.equations != b.equations || a.diagrams != b.diagrams ||
        a.description != b.description || a.contentFingerprint != b.contentFingerprint ||
        a.boxReference != b.boxReference || a.quizzes != b.quizzes)
        return false;
    if (a.transcript.size() != b.transcript.size() || a.highlights.size() != b.highlights.size())
        return false;
    for (std::size_t i = 0; i < a.transcript.size(); ++i)
    {
        const auto& x = a.transcript[i];
        const auto& y = b.transcript[i];
        if (x.text != y.text || !near(x.startSec, y.startSec) || !near(x.endSec, y.endSec))
            return false;
    }
    for (std::size_t i = 0; i < a.highlights.size(); ++i)
    {
        const auto& x = a.highlights[i];
        const auto& y = b.highlights[i];
        if (x.relevantTranscript != y.relevantTranscript || !rectNear(x.box, y.box) || !spanEqual(x.span, y.span))
            return false;
    }
    return true;
}

} // namespace

bool structurallyEqual(const LectureBundle& a, const LectureBundle& b)
{
    if (a.id != b.id || a.title != b.title || a.videoRef != b.videoRef || !near(a.durationSec, b.durationSec) ||
        a.createdAt != b.createdAt || a.sections.size() != b.sections.size() ||
        a.examples.size() != b.examples.size())
        return false;
    for (std::size_t i = 0; i < a.sections.size(); ++i)
        if (!sectionEqual(a.sections[i], b.sections[i]))
            return false;
    for (std::size_t i = 0; i < a.examples.size(); ++i)
    {
        const auto& x = a.examples[i];
        const auto& y = b.examples[i];
        if (x.sectionId != y.sectionId || x.htmlRef != y.htmlRef || x.title != y.title ||
            !near(x.triggerSec, y.triggerSec))
            return false;
    }
    return true;
}

} // namespace lecturekit::content
