#pragma once

#include "lecturekit/common/error.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::media
{

class AvatarSessionUnavailable : public Error
{
  public:
    explicit AvatarSessionUnavailable(const std::string& what) : Error("AvatarSessionUnavailable", what) {}
};

enum class SpeechStatus
{
    Queued,
    Speaking,
    Done,
    Failed,
};

const char* toString(SpeechStatus status);

inline constexpr double kWordsPerMinute = 150.0;
/// Delay between queueing a job and the avatar starting to talk.
inline constexpr double kSpeechStartupSec = 0.5;

/// wordCount(text) / (150 / 60) seconds.
double estimateSpeechSec(const std::string& text);

struct SpeechJob
{
    std::string id;
    std::string text;
    std::string voiceId;
    SpeechStatus status{SpeechStatus::Queued};
    double estimatedDurationSec{0.0};
    double queuedAtSec{0.0};
    /// Avatar was unavailable; completion is timed from the estimate alone.
    bool degraded{false};
};

struct SpeechEvent
{
    std::string jobId;
    SpeechStatus status{SpeechStatus::Queued};
    double atSec{0.0};
    /// Set on failed events.
    std::string reason;
};

/// Whatever actually renders speech. The server only needs to know whether the
/// avatar session can be opened; media streaming happens on the client.
class SpeechBackend
{
  public:
    virtual ~SpeechBackend() = default;
    /// Throws AvatarSessionUnavailable when no avatar session can be opened.
    virtual void start(const SpeechJob& job) = 0;
};

/// Always available (or always unavailable, for degraded-path tests).
class StubSpeechBackend : public SpeechBackend
{
  public:
    explicit StubSpeechBackend(bool available = true) : available_(available) {}
    void start(const SpeechJob& job) override;

  private:
    bool available_;
};

/// AVATAR_API_KEY / TTS_API_KEY decide availability unless MEDIA_MOCK=1 or forced.
std::shared_ptr<SpeechBackend> speechBackendFromEnvironment(bool forceMock);

/// One session's speech channel on a simulated clock. Events are released in
/// time order by advanceTo(); each job ends in exactly one done or failed event.
class SpeechChannel
{
  public:
    explicit SpeechChannel(std::shared_ptr<SpeechBackend> backend);

    /// Starts a job at `nowSec`, cancelling any unfinished one first.
    SpeechJob speak(const std::string& text, const std::string& voiceId, double nowSec);

    /// Cancels the active job with a failed event; no-op when idle.
    void cancel(double nowSec, const std::string& reason = "cancelled");

    /// Pops every pending event with atSec <= nowSec.
    std::vector<SpeechEvent> advanceTo(double nowSec);

    /// Time of the next pending event, if any.
    std::optional<double> nextEventSec() const;

    std::optional<SpeechJob> active() const;
    std::optional<SpeechJob> job(const std::string& id) const;

  private:
    SpeechJob* find(const std::string& id);

    std::shared_ptr<SpeechBackend> backend_;
    std::vector<SpeechJob> jobs_;
    std::deque<SpeechEvent> pending_;
    std::optional<std::string> activeId_;
    int nextId_{1};
};

} // namespace lecturekit::media
