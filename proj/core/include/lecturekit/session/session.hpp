#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/common/time.hpp"
#include "lecturekit/content/model.hpp"
#include "lecturekit/gateway/gateway.hpp"
#include "lecturekit/layout/layout.hpp"
#include "lecturekit/media/image_search.hpp"
#include "lecturekit/media/speech.hpp"
#include "lecturekit/session/events.hpp"
#include "lecturekit/session/records.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::session
{

enum class Mode
{
    Playing,
    Clarifying,
    VisualShown,
    QuizActive,
    OnBreak,
    SummaryView,
    ExampleActive,
};

const char* toString(Mode mode);

/// The operation is not allowed in the session's current mode.
class IllegalTransition : public Error
{
  public:
    IllegalTransition(const std::string& op, Mode mode)
        : Error("IllegalTransition", std::string(op) + " is not allowed while " + toString(mode)), op_(op),
          mode_(mode)
    {
    }

    const std::string& operation() const noexcept
    {
        return op_;
    }
    Mode mode() const noexcept
    {
        return mode_;
    }

  private:
    std::string op_;
    Mode mode_;
};

inline constexpr const char* kDefaultQuestion = "Please explain this.";
inline constexpr int kDefaultDifficulty = 3;
inline constexpr int kMaxResponseWords = 50;
inline constexpr int kMaxResponseSentences = 3;
inline constexpr int kWordsPerBreakMinute = 150;
inline constexpr int kVisualResults = 5;

/// Whether a break length is one of the offered choices (1, 3 or 5 minutes).
bool allowedBreakMinutes(int minutes);

enum class ExplanationMode
{
    Default,
    Analogy,
    Step,
};

const char* toString(ExplanationMode mode);

/// "analogy", "analogies" or "like i'm" route to analogy mode, "step by step" to step mode.
ExplanationMode detectExplanationMode(const std::string& question);

/// Everything a session needs from the outside world.
struct SessionServices
{
    std::shared_ptr<gateway::Gateway> gateway;
    std::shared_ptr<media::SpeechBackend> speech;
    std::shared_ptr<media::ImageSearchProvider> images;
};

struct SessionConfig
{
    std::string sessionId;
    std::vector<std::string> interests;
    int difficulty{kDefaultDifficulty};
    bool highlightEnabled{true};
    std::string voiceId{"instructor"};
    /// Bottom-right avatar viewport, kept free of overlays.
    content::Rect avatarRegion{0.78, 0.72, 1.0, 1.0};
    layout::PlanOptions plan;
    WallClock wallClock;
    /// Called after every appended record (log persistence).
    std::function<void(const InteractionRecord&)> onRecord;
    /// Scratch space for area crops; defaults to the system temp directory.
    std::optional<std::filesystem::path> scratchDir;
};

struct ClarifyResult
{
    std::string responseText;
    ExplanationMode mode{ExplanationMode::Default};
    layout::OverlayPlan plan;
    media::SpeechJob speech;
    bool lengthViolation{false};
    /// Set when the provider failed and an apology was shown instead.
    std::optional<std::string> providerError;
};

struct VisualResult
{
    std::string keywords;
    std::vector<media::ImageResult> results;
    /// "no visuals found" when nothing came back; mode is unchanged then.
    std::optional<std::string> notice;
};

struct ServedQuiz
{
    std::string sectionId;
    int level{kDefaultDifficulty};
    std::size_t index{0};
    content::QuizItem item;
    /// The requested level was empty and a neighbouring one was used.
    bool fallback{false};
};

struct AnswerResult
{
    bool correct{false};
    std::string explanation;
    std::string correctAnswer;
};

struct BreakResult
{
    std::string story;
    media::SpeechJob speech;
    int minutes{1};
    std::size_t wordCount{0};
    double endsNoEarlierThanSec{0.0};
};

/// What a position update set off, if anything.
struct PositionResult
{
    double positionSec{0.0};
    std::optional<ServedQuiz> quiz;
    std::optional<content::ExampleAsset> example;
};

/// One learner's live session over a lecture bundle. Not thread-safe; callers
/// serialize access. Time only moves through advance().
class Session
{
  public:
    Session(std::shared_ptr<const content::LectureBundle> bundle, std::filesystem::path bundleRoot,
            SessionConfig config, SessionServices services);

    const std::string& id() const
    {
        return config_.sessionId;
    }
    const content::LectureBundle& bundle() const
    {
        return *bundle_;
    }
    Mode mode() const
    {
        return mode_;
    }
    double positionSec() const
    {
        return position_;
    }
    double clockSec() const
    {
        return clock_;
    }
    int difficulty() const
    {
        return difficulty_;
    }
    bool highlightEnabled() const
    {
        return highlightEnabled_;
    }
    const std::vector<std::string>& interests() const
    {
        return config_.interests;
    }
    const std::vector<InteractionRecord>& log() const
    {
        return log_;
    }
    const std::vector<SessionEvent>& events() const
    {
        return events_;
    }
    std::uint64_t lastSeq() const
    {
        return events_.empty() ? 0 : events_.back().seq;
    }
    std::optional<ServedQuiz> activeQuiz() const
    {
        return activeQuiz_;
    }

    /// Clarification and its personalized variants (analogy / step mode are
    /// detected from the question). Allowed from Playing and QuizActive.
    ClarifyResult askClarification(std::optional<content::Rect> area, std::optional<std::string> question);

    VisualResult requestVisual(const content::Rect& area);
    void dismissVisual();

    /// `sectionId` defaults to the section under the current position.
    ServedQuiz serveQuiz(const std::optional<std::string>& sectionId = std::nullopt);
    AnswerResult answerQuiz(const std::string& answer);

    BreakResult startBreak(int minutes);

    void setDifficulty(int level);
    void setHighlightEnabled(bool enabled);
    PositionResult setPosition(double tSec);

    /// Highlights of the section under `tSec` whose range contains it; empty when toggled off.
    std::vector<content::HighlightEntry> activeHighlights(double tSec) const;

    /// Manual open from the control bar; `htmlRef` defaults to the first example
    /// of the current section (then of the lecture).
    content::ExampleAsset openExample(const std::optional<std::string>& htmlRef = std::nullopt);
    void closeExample();

    void openSummary();
    void closeSummary();
    /// Re-speaks the stored answer of a question record (summary replay).
    media::SpeechJob replay(std::size_t recordIndex);

    void addNote(const std::string& text, std::optional<content::Rect> area = std::nullopt);

    /// Moves the session clock forward, releasing speech events and finishing
    /// clarifications and breaks whose conditions are met.
    void advance(double dtSec);

    /// Seeds the log on restore; does not fire onRecord.
    void restoreLog(std::vector<InteractionRecord> records);

    /// Current state for GET /sessions/{id}.
    nlohmann::json snapshot() const;

  private:
    struct PendingClarify
    {
        std::string overlayId;
        std::string jobId;
        Mode returnMode{Mode::Playing};
    };
    struct PendingBreak
    {
        std::string jobId;
        double timerEndSec{0.0};
        std::optional<double> speechEndSec;
    };

    void require(const char* op, std::initializer_list<Mode> allowed) const;
    void requireSections() const;
    const content::Section& currentSection() const;
    std::size_t currentSectionIndex() const;
    std::filesystem::path slidePath(const content::Section& section) const;
    const std::vector<content::Rect>& contentBoxes(std::size_t sectionIndex);
    std::string lectureSummary() const;
    std::string slideContent(const content::Section& section) const;

    SessionEvent& emit(EventKind kind, nlohmann::json payload, std::optional<double> atSec = std::nullopt);
    void record(InteractionRecord r);
    std::string newOverlayId();
    std::string wallClock() const;
    void pumpSpeech();
    void onSpeechTerminal(const media::SpeechEvent& e);
    void finishBreakIfDue();
    void emitHighlightsIfChanged(bool force);
    std::optional<ServedQuiz> pickQuiz(const content::Section& section, int level);

    std::shared_ptr<const content::LectureBundle> bundle_;
    std::filesystem::path root_;
    SessionConfig config_;
    SessionServices services_;
    media::SpeechChannel speech_;

    Mode mode_{Mode::Playing};
    double position_{0.0};
    double clock_{0.0};
    int difficulty_{kDefaultDifficulty};
    bool highlightEnabled_{true};

    std::vector<InteractionRecord> log_;
    std::vector<SessionEvent> events_;
    std::map<std::size_t, std::vector<content::Rect>> boxCache_;

    std::optional<PendingClarify> clarify_;
    std::optional<PendingBreak> break_;
    std::optional<ServedQuiz> activeQuiz_;
    std::optional<std::string> visualOverlayId_;
    Mode visualReturn_{Mode::Playing};
    std::vector<bool> exampleFired_;
    /// (section, level, item) -> serve counter value when last served.
    std::map<std::tuple<std::string, int, std::size_t>, std::uint64_t> lastServed_;
    std::uint64_t serveCounter_{0};
    std::vector<std::size_t> lastHighlightSet_;
    int overlayCounter_{0};
    int cropCounter_{0};
};

} // namespace lecturekit::session
