#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::content
{

/// Axis-aligned rectangle in normalized slide coordinates, serialized as
/// `[x0, y0, x1, y1]`.
struct Rect
{
    double x0{0.0};
    double y0{0.0};
    double x1{0.0};
    double y1{0.0};

    double width() const
    {
        return x1 - x0;
    }
    double height() const
    {
        return y1 - y0;
    }
    double area() const
    {
        return width() * height();
    }
    double centerX() const
    {
        return 0.5 * (x0 + x1);
    }
    double centerY() const
    {
        return 0.5 * (y0 + y1);
    }

    bool operator==(const Rect&) const = default;
};

struct TimeSpan
{
    double startSec{0.0};
    double endSec{0.0};

    bool contains(double t) const
    {
        return t >= startSec && t <= endSec;
    }
    bool operator==(const TimeSpan&) const = default;
};

struct TranscriptSegment
{
    double startSec{0.0};
    double endSec{0.0};
    std::string text;

    bool operator==(const TranscriptSegment&) const = default;
};

enum class QuizType
{
    MultipleChoice,
    TrueFalse,
    FillBlank,
};

const char* toString(QuizType type);
std::optional<QuizType> parseQuizType(const std::string& s);

inline constexpr int kMinDifficulty = 1;
inline constexpr int kMaxDifficulty = 5;

struct QuizItem
{
    QuizType type{QuizType::MultipleChoice};
    std::string question;
    std::vector<std::string> options;
    std::string correctAnswer;
    std::string explanation;
    int difficulty{3};
    /// Extra accepted spellings for fill-blank answers.
    std::vector<std::string> synonyms;

    bool operator==(const QuizItem&) const = default;
};

/// Difficulty level (1..5) to the items generated for it.
using DifficultyBank = std::map<int, std::vector<QuizItem>>;

struct HighlightEntry
{
    Rect box;
    std::string relevantTranscript;
    /// Absent when no transcript span matched; such entries never activate.
    std::optional<TimeSpan> span;

    bool operator==(const HighlightEntry&) const = default;
};

struct ExampleAsset
{
    std::string sectionId;
    double triggerSec{0.0};
    /// Relative to the bundle root.
    std::string htmlRef;
    std::string title;

    bool operator==(const ExampleAsset&) const = default;
};

/// Pixel space that raw provider boxes were expressed in before normalization.
struct BoxReference
{
    int width{1000};
    int height{1000};

    bool operator==(const BoxReference&) const = default;
};

struct Section
{
    std::string id;
    double startSec{0.0};
    double endSec{0.0};
    /// Relative to the bundle root.
    std::string slideImageRef;
    std::string title;
    std::vector<std::string> mainConcepts;
    std::vector<std::string> keyPoints;
    std::optional<std::vector<std::string>> equations;
    std::optional<std::vector<std::string>> diagrams;
    std::string description;
    std::string contentFingerprint;
    BoxReference boxReference;
    std::vector<TranscriptSegment> transcript;
    DifficultyBank quizzes;
    std::vector<HighlightEntry> highlights;

    bool operator==(const Section&) const = default;
};

struct LectureBundle
{
    std::string id;
    std::string title;
    std::string videoRef;
    double durationSec{0.0};
    std::vector<Section> sections;
    std::vector<ExampleAsset> examples;
    std::string createdAt;

    bool operator==(const LectureBundle&) const = default;

    const Section* findSection(const std::string& sectionId) const;
    /// Index of the section whose [start, end) holds `t`; the last section also owns its end.
    std::optional<std::size_t> sectionIndexAt(double t) const;
};

/// Equality with millisecond tolerance on every timestamp.
bool structurallyEqual(const LectureBundle& a, const LectureBundle& b);

} // namespace lecturekit::content
