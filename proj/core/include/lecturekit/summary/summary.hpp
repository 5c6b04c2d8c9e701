#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/content/model.hpp"
#include "lecturekit/session/records.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lecturekit::summary
{

class OrphanRecord : public Error
{
  public:
    explicit OrphanRecord(const std::string& sectionId)
        : Error("OrphanRecord", "record references unknown section '" + sectionId + "'"), sectionId_(sectionId)
    {
    }
    const std::string& sectionId() const noexcept
    {
        return sectionId_;
    }

  private:
    std::string sectionId_;
};

// Canvas geometry, in canvas units.
inline constexpr double kColumnWidth = 480.0;
inline constexpr double kGutter = 16.0;
inline constexpr double kHeaderHeight = 64.0;
inline constexpr double kMinCardHeight = 96.0;
/// Card height grows by one line per this many characters of body text.
inline constexpr double kCharsPerLine = 48.0;
inline constexpr double kLineHeight = 20.0;
inline constexpr double kCardChrome = 40.0;

struct CanvasCard
{
    /// Index of the record in the session log.
    std::size_t recordRef{0};
    session::RecordKind kind{session::RecordKind::Note};
    std::string sectionId;
    double x{0.0};
    double y{0.0};
    double w{0.0};
    double h{0.0};
    /// Answer text a replay would speak (question cards only).
    std::optional<std::string> replayText;
    std::string body;
};

struct QaPair
{
    std::size_t recordRef{0};
    std::string question;
    std::string answer;
    std::optional<content::Rect> selectedArea;
};

struct QuizAttempt
{
    std::size_t recordRef{0};
    std::string question;
    std::string answer;
    bool correct{false};
    int level{0};
};

struct SectionSummary
{
    std::string sectionId;
    std::string title;
    std::string slideImageRef;
    double columnX{0.0};
    std::vector<content::Rect> selectedAreas;
    std::vector<QaPair> questions;
    std::vector<QuizAttempt> quizzes;
    std::vector<std::size_t> notes;
    std::vector<std::size_t> others;
};

struct SummaryDocument
{
    std::string sessionId;
    std::vector<SectionSummary> sections;
    std::vector<CanvasCard> canvas;
};

/// Height of a card whose body has `codePoints` characters.
double cardHeight(std::size_t codePoints);

/// One column per bundle section (bundle order), one card per record stacked by
/// (timestampSec, log index). Throws OrphanRecord for unknown section ids.
SummaryDocument compileSummary(const std::string& sessionId, const std::vector<session::InteractionRecord>& log,
                               const content::LectureBundle& bundle);

nlohmann::json toJson(const SummaryDocument& doc);

} // namespace lecturekit::summary
