#include "lecturekit/media/speech.hpp"

#include "lecturekit/common/text.hpp"

#include <algorithm>
#include <cstdlib>

namespace lecturekit::media
{

const char* toString(SpeechStatus status)
{
    switch (status)
    {
    case SpeechStatus::Queued:
        return "queued";
    case SpeechStatus::Speaking:
        return "speaking";
    case SpeechStatus::Done:
        return "done";
    case SpeechStatus::Failed:
        return "failed";
    }
    return "queued";
}

double estimateSpeechSec(const std::string& text)
{
    return static_cast<double>(text::wordCount(text)) / (kWordsPerMinute / 60.0);
}

void StubSpeechBackend::start(const SpeechJob& /*job*/)
{
    if (!available_)
        throw AvatarSessionUnavailable("avatar session unavailable (stub)");
}

namespace
{

/// Keys present but no client-side transport here: the session only needs the timing.
class KeyedSpeechBackend : public SpeechBackend
{
  public:
    explicit KeyedSpeechBackend(bool haveKeys) : haveKeys_(haveKeys) {}
    void start(const SpeechJob&) override
    {
        if (!haveKeys_)
            throw AvatarSessionUnavailable("AVATAR_API_KEY / TTS_API_KEY not configured");
    }

  private:
    bool haveKeys_;
};

bool envSet(const char* name)
{
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0';
}

} // namespace

std::shared_ptr<SpeechBackend> speechBackendFromEnvironment(bool forceMock)
{
    const char* mock = std::getenv("MEDIA_MOCK");
    if (forceMock || (mock != nullptr && std::string(mock) == "1"))
        return std::make_shared<StubSpeechBackend>(true);
    return std::make_shared<KeyedSpeechBackend>(envSet("AVATAR_API_KEY") && envSet("TTS_API_KEY"));
}

SpeechChannel::SpeechChannel(std::shared_ptr<SpeechBackend> backend) : backend_(std::move(backend))
{
    if (!backend_)
        throw PreconditionFailed("speech channel needs a backend");
}

SpeechJob* SpeechChannel::find(const std::string& id)
{
    auto it = std::find_if(jobs_.begin(), jobs_.end(), [&](const SpeechJob& j) { return j.id == id; });
    return it == jobs_.end() ? nullptr : &*it;
}

SpeechJob SpeechChannel::speak(const std::string& text, const std::string& voiceId, double nowSec)
{
    if (text::trim(text).empty())
        throw PreconditionFailed("speech text must be non-empty");
    cancel(nowSec, "preempted");

    SpeechJob job;
    job.id = "speech-" + std::to_string(nextId_++);
    job.text = text;
    job.voiceId = voiceId;
    job.estimatedDurationSec = estimateSpeechSec(text);
    job.queuedAtSec = nowSec;
    try
    {
        backend_->start(job);
    }
    catch (const AvatarSessionUnavailable&)
    {
        job.degraded = true;
    }

    pending_.push_back({job.id, SpeechStatus::Queued, nowSec, ""});
    if (job.degraded)
    {
        pending_.push_back({job.id, SpeechStatus::Done, nowSec + job.estimatedDurationSec, ""});
    }
    else
    {
        pending_.push_back({job.id, SpeechStatus::Speaking, nowSec + kSpeechStartupSec, ""});
        pending_.push_back(
            {job.id, SpeechStatus::Done, nowSec + kSpeechStartupSec + job.estimatedDurationSec, ""});
    }
    jobs_.push_back(job);
    activeId_ = job.id;
    return job;
}

void SpeechChannel::cancel(double nowSec, const std::string& reason)
{
    if (!activeId_)
        return;
    SpeechJob* job = find(*activeId_);
    std::erase_if(pending_, [&](const SpeechEvent& e) { return e.jobId == *activeId_; });
    pending_.push_front({*activeId_, SpeechStatus::Failed, nowSec, reason});
    if (job)
        job->status = SpeechStatus::Failed;
    activeId_.reset();
}

std::vector<SpeechEvent> SpeechChannel::advanceTo(double nowSec)
{
    std::vector<SpeechEvent> out;
    while (!pending_.empty() && pending_.front().atSec <= nowSec)
    {
        SpeechEvent e = pending_.front();
        pending_.pop_front();
        if (SpeechJob* job = find(e.jobId); job && e.status != SpeechStatus::Failed)
            job->status = e.status;
        if (e.status == SpeechStatus::Done && activeId_ == e.jobId)
            activeId_.reset();
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<double> SpeechChannel::nextEventSec() const
{
    if (pending_.empty())
        return std::nullopt;
    return pending_.front().atSec;
}

std::optional<SpeechJob> SpeechChannel::active() const
{
    if (!activeId_)
        return std::nullopt;
    return job(*activeId_);
}

std::optional<SpeechJob> SpeechChannel::job(const std::string& id) const
{
    for (const auto& j : jobs_)
        if (j.id == id)
            return j;
    return std::nullopt;
}

} // namespace lecturekit::media
