#include "lecturekit/session/session.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/imaging/image.hpp"

#include <algorithm>
#include <cmath>

namespace lecturekit::session
{

using nlohmann::json;
namespace fs = std::filesystem;

const char* toString(Mode mode)
{
    switch (mode)
    {
    case Mode::Playing:
        return "Playing";
    case Mode::Clarifying:
        return "Clarifying";
    case Mode::VisualShown:
        return "VisualShown";
    case Mode::QuizActive:
        return "QuizActive";
    case Mode::OnBreak:
        return "OnBreak";
    case Mode::SummaryView:
        return "SummaryView";
    case Mode::ExampleActive:
        return "ExampleActive";
    }
    return "Playing";
}

const char* toString(ExplanationMode mode)
{
    switch (mode)
    {
    case ExplanationMode::Default:
        return "default";
    case ExplanationMode::Analogy:
        return "analogy";
    case ExplanationMode::Step:
        return "step";
    }
    return "default";
}

bool allowedBreakMinutes(int minutes)
{
    return minutes == 1 || minutes == 3 || minutes == 5;
}

ExplanationMode detectExplanationMode(const std::string& question)
{
    std::string q = text::normalize(question);
    if (q.find("analogy") != std::string::npos || q.find("analogies") != std::string::npos ||
        q.find("like i'm") != std::string::npos)
        return ExplanationMode::Analogy;
    if (q.find("step by step") != std::string::npos || q.find("step-by-step") != std::string::npos)
        return ExplanationMode::Step;
    return ExplanationMode::Default;
}

namespace
{

constexpr const char* kApology =
    "Sorry, I could not answer that right now. Let's keep going and you can ask again in a moment.";

json planJson(const layout::OverlayPlan& plan)
{
    return {{"region", content::rectToJson(plan.region.rect)},
            {"cells",
             {{"col", plan.region.cells.col},
              {"row", plan.region.cells.row},
              {"width", plan.region.cells.width},
              {"height", plan.region.cells.height}}},
            {"estimatedCapacityChars", plan.estimatedCapacityChars},
            {"scrollable", plan.scrollable},
            {"fontScale", plan.fontScale},
            {"modal", plan.modal}};
}

json quizPromptJson(const ServedQuiz& q)
{
    return {{"sectionId", q.sectionId},
            {"level", q.level},
            {"fallback", q.fallback},
            {"type", content::toString(q.item.type)},
            {"question", q.item.question},
            {"options", q.item.options},
            {"difficulty", q.item.difficulty}};
}

json imageJson(const media::ImageResult& r)
{
    return {{"url", r.url}, {"title", r.title}, {"sourceDomain", r.sourceDomain}, {"thumbUrl", r.thumbUrl}};
}

bool intersects(const content::Rect& a, const content::Rect& b)
{
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

std::string rectText(const content::Rect& r)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.3f, %.3f, %.3f, %.3f]", r.x0, r.y0, r.x1, r.y1);
    return buf;
}

void checkArea(const content::Rect& r)
{
    for (double v : {r.x0, r.y0, r.x1, r.y1})
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw PreconditionFailed("area must lie within [0,1]");
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
        throw PreconditionFailed("area must have positive size");
}

bool answerMatches(const content::QuizItem& item, const std::string& answer)
{
    std::string given = text::normalize(answer);
    if (given == text::normalize(item.correctAnswer))
        return true;
    if (item.type == content::QuizType::FillBlank)
        for (const auto& s : item.synonyms)
            if (given == text::normalize(s))
                return true;
    return false;
}

} // namespace

Session::Session(std::shared_ptr<const content::LectureBundle> bundle, fs::path bundleRoot, SessionConfig config,
                 SessionServices services)
    : bundle_(std::move(bundle)), root_(std::move(bundleRoot)), config_(std::move(config)),
      services_(std::move(services)),
      speech_(services_.speech ? services_.speech : std::make_shared<media::StubSpeechBackend>())
{
    if (!bundle_)
        throw PreconditionFailed("session needs a bundle");
    if (!services_.gateway)
        throw PreconditionFailed("session needs a gateway");
    if (!services_.images)
        services_.images = std::make_shared<media::StubImageSearch>();
    if (config_.difficulty < content::kMinDifficulty || config_.difficulty > content::kMaxDifficulty)
        throw PreconditionFailed("difficulty must be within 1..5");
    difficulty_ = config_.difficulty;
    highlightEnabled_ = config_.highlightEnabled;
    exampleFired_.assign(bundle_->examples.size(), false);
}

// ---- helpers ---------------------------------------------------------------

void Session::require(const char* op, std::initializer_list<Mode> allowed) const
{
    if (std::find(allowed.begin(), allowed.end(), mode_) == allowed.end())
        throw IllegalTransition(op, mode_);
}

void Session::requireSections() const
{
    if (bundle_->sections.empty())
        throw PreconditionFailed("lecture has no sections");
}

std::size_t Session::currentSectionIndex() const
{
    requireSections();
    return bundle_->sectionIndexAt(position_).value_or(bundle_->sections.size() - 1);
}

const content::Section& Session::currentSection() const
{
    return bundle_->sections[currentSectionIndex()];
}

fs::path Session::slidePath(const content::Section& section) const
{
    return root_ / section.slideImageRef;
}

const std::vector<content::Rect>& Session::contentBoxes(std::size_t sectionIndex)
{
    auto it = boxCache_.find(sectionIndex);
    if (it != boxCache_.end())
        return it->second;
    std::vector<content::Rect> boxes;
    try
    {
        boxes = layout::detectContentBoxes(slidePath(bundle_->sections[sectionIndex]), config_.plan.detect);
    }
    catch (const Error&)
    {
        // Missing or undecodable slide: plan as if the slide were empty.
    }
    return boxCache_.emplace(sectionIndex, std::move(boxes)).first->second;
}

std::string Session::lectureSummary() const
{
    std::vector<std::string> lines;
    for (const auto& s : bundle_->sections)
        lines.push_back(s.description.empty() ? s.title : s.title + ": " + s.description);
    return text::join(lines, "\n");
}

std::string Session::slideContent(const content::Section& s) const
{
    std::string out = "Title: " + s.title + "\nMain concepts: " + text::join(s.mainConcepts, ", ");
    if (!s.keyPoints.empty())
        out += "\nKey points: " + text::join(s.keyPoints, " ");
    if (s.equations)
        out += "\nEquations: " + text::join(*s.equations, ", ");
    if (s.diagrams)
        out += "\nDiagrams: " + text::join(*s.diagrams, ", ");
    return out;
}

SessionEvent& Session::emit(EventKind kind, json payload, std::optional<double> atSec)
{
    SessionEvent e;
    e.seq = lastSeq() + 1;
    e.kind = kind;
    e.payload = std::move(payload);
    e.atSec = atSec.value_or(clock_);
    events_.push_back(std::move(e));
    return events_.back();
}

std::string Session::wallClock() const
{
    return config_.wallClock ? config_.wallClock() : isoUtcNow();
}

void Session::record(InteractionRecord r)
{
    r.wallClock = wallClock();
    r.timestampSec = roundMillis(r.timestampSec);
    log_.push_back(r);
    if (config_.onRecord)
        config_.onRecord(log_.back());
}

std::string Session::newOverlayId()
{
    return "overlay-" + std::to_string(++overlayCounter_);
}

void Session::restoreLog(std::vector<InteractionRecord> records)
{
    log_ = std::move(records);
}

// ---- clock -----------------------------------------------------------------

void Session::pumpSpeech()
{
    for (const auto& e : speech_.advanceTo(clock_))
    {
        json payload = {{"jobId", e.jobId}, {"status", media::toString(e.status)}};
        if (auto job = speech_.job(e.jobId))
        {
            payload["estimatedDurationSec"] = roundMillis(job->estimatedDurationSec);
            payload["degraded"] = job->degraded;
        }
        if (!e.reason.empty())
            payload["reason"] = e.reason;
        emit(EventKind::SpeechStatus, std::move(payload), e.atSec);
        if (e.status == media::SpeechStatus::Done || e.status == media::SpeechStatus::Failed)
            onSpeechTerminal(e);
    }
    finishBreakIfDue();
}

void Session::onSpeechTerminal(const media::SpeechEvent& e)
{
    if (clarify_ && clarify_->jobId == e.jobId)
    {
        PendingClarify done = *clarify_;
        clarify_.reset();
        mode_ = done.returnMode;
        emit(EventKind::OverlayHide, {{"overlayId", done.overlayId}, {"kind", "clarify"}}, e.atSec);
        emit(EventKind::Resume,
             {{"reason", "clarify"}, {"mode", toString(mode_)}, {"playing", mode_ == Mode::Playing}}, e.atSec);
    }
    if (break_ && break_->jobId == e.jobId)
        break_->speechEndSec = e.atSec;
}

void Session::finishBreakIfDue()
{
    if (!break_ || !break_->speechEndSec || clock_ < break_->timerEndSec)
        return;
    double at = std::max(break_->timerEndSec, *break_->speechEndSec);
    break_.reset();
    mode_ = Mode::Playing;
    emit(EventKind::BreakEnd, json::object(), at);
    emit(EventKind::Resume, {{"reason", "break"}, {"mode", toString(mode_)}, {"playing", true}}, at);
}

void Session::advance(double dtSec)
{
    if (!(dtSec >= 0.0) || !std::isfinite(dtSec))
        throw PreconditionFailed("clock can only move forward");
    const double target = clock_ + dtSec;
    // Step through intermediate event times so each event is handled at its own time.
    while (true)
    {
        std::optional<double> next = speech_.nextEventSec();
        if (break_ && break_->speechEndSec && break_->timerEndSec > clock_)
            next = next ? std::min(*next, break_->timerEndSec) : break_->timerEndSec;
        if (!next || *next > target)
            break;
        clock_ = std::max(clock_, *next);
        pumpSpeech();
    }
    clock_ = target;
    pumpSpeech();
}

// ---- clarification ---------------------------------------------------------

ClarifyResult Session::askClarification(std::optional<content::Rect> area, std::optional<std::string> question)
{
    require("clarify", {Mode::Playing, Mode::QuizActive});
    if (area)
        checkArea(*area);
    std::string q = question && !text::trim(*question).empty() ? text::trim(*question) : kDefaultQuestion;
    const std::size_t idx = currentSectionIndex();
    const content::Section& section = bundle_->sections[idx];

    ClarifyResult result;
    result.mode = detectExplanationMode(q);
    const bool interestsMissing = result.mode == ExplanationMode::Analogy && config_.interests.empty();

    std::string user = std::string(gateway::user_content::kQuestion) + q;
    if (area)
    {
        user += "\n" + std::string(gateway::user_content::kSelectedArea) + rectText(*area);
        std::vector<std::string> nearby;
        for (const auto& h : section.highlights)
            if (intersects(h.box, *area) && !h.relevantTranscript.empty())
                nearby.push_back(h.relevantTranscript);
        if (!nearby.empty())
            user += "\n" + std::string(gateway::user_content::kNearbyText) + text::join(nearby, "; ");
    }
    user += "\n" + std::string(gateway::user_content::kMode) + toString(result.mode);
    if (result.mode == ExplanationMode::Analogy)
        user += "\n" + std::string(gateway::user_content::kInterests) + text::join(config_.interests, ", ");

    gateway::ProviderRequest request;
    request.templateId = gateway::TemplateId::Clarify;
    request.bindings = {{"currentVideoName", bundle_->title},
                        {"summaryText", lectureSummary()},
                        {"currentSlideContent", slideContent(section)}};
    request.userContent = user;
    try
    {
        result.responseText = text::trim(services_.gateway->complete(request).rawText);
        if (result.responseText.empty())
            throw gateway::ProviderUnavailable("empty reply");
    }
    catch (const Error& e)
    {
        result.providerError = e.code();
        result.responseText = kApology;
    }

    result.lengthViolation = text::wordCount(result.responseText) > static_cast<std::size_t>(kMaxResponseWords) ||
                             text::sentenceCount(result.responseText) > static_cast<std::size_t>(kMaxResponseSentences);

    layout::PlanOptions opts = config_.plan;
    opts.reserved.push_back(config_.avatarRegion);
    std::vector<content::Rect> occupied = contentBoxes(idx);
    occupied.insert(occupied.end(), opts.reserved.begin(), opts.reserved.end());
    layout::Point anchor = area ? layout::Point{area->centerX(), area->centerY()} : layout::Point{};
    result.plan = layout::planOnGrid(layout::rasterize(occupied, opts.cols, opts.rows), anchor, result.responseText,
                                     opts);

    PendingClarify pending{newOverlayId(), "", mode_};
    mode_ = Mode::Clarifying;
    json show = {{"overlayId", pending.overlayId},
                 {"kind", "clarify"},
                 {"text", result.responseText},
                 {"mode", toString(result.mode)},
                 {"plan", planJson(result.plan)}};
    if (result.providerError)
        show["providerError"] = *result.providerError;
    emit(EventKind::OverlayShow, std::move(show));

    result.speech = speech_.speak(result.responseText, config_.voiceId, clock_);
    pending.jobId = result.speech.id;
    clarify_ = pending;

    InteractionRecord r;
    r.kind = RecordKind::Question;
    r.sectionId = section.id;
    r.timestampSec = position_;
    r.selectedArea = area;
    r.prompt = q;
    r.response = result.responseText;
    r.extra["mode"] = toString(result.mode);
    r.extra["lengthViolation"] = result.lengthViolation ? "true" : "false";
    if (interestsMissing)
        r.extra["interestsMissing"] = "true";
    if (result.providerError)
        r.extra["providerError"] = *result.providerError;
    record(std::move(r));

    pumpSpeech();
    return result;
}

// ---- visuals ---------------------------------------------------------------

VisualResult Session::requestVisual(const content::Rect& area)
{
    require("visual", {Mode::Playing, Mode::QuizActive, Mode::ExampleActive, Mode::VisualShown});
    checkArea(area);
    const content::Section& section = currentSection();

    fs::path scratch = config_.scratchDir.value_or(fs::temp_directory_path() / "lecturekit-crops");
    fs::create_directories(scratch);
    fs::path crop = scratch / (config_.sessionId + "-" + std::to_string(++cropCounter_) + ".png");
    imaging::cropToFile(slidePath(section), area, crop);

    VisualResult result;
    try
    {
        gateway::ProviderRequest request;
        request.templateId = gateway::TemplateId::VisualKeywords;
        request.modelTier = gateway::ModelTier::Nano;
        request.attachments = {crop};
        auto response = services_.gateway->complete(request);
        result.keywords = text::trim(response.parsed->at("keywords").get<std::string>());
        fs::remove(crop);
    }
    catch (...)
    {
        std::error_code ec;
        fs::remove(crop, ec);
        throw;
    }

    if (!result.keywords.empty())
    {
        try
        {
            result.results = media::searchImages(*services_.images, result.keywords, kVisualResults);
        }
        catch (const media::EmptyResults&)
        {
            result.results.clear();
        }
    }

    InteractionRecord r;
    r.kind = RecordKind::VisualRequest;
    r.sectionId = section.id;
    r.timestampSec = position_;
    r.selectedArea = area;
    r.prompt = result.keywords;
    r.extra["resultCount"] = std::to_string(result.results.size());

    if (result.results.empty())
    {
        result.notice = "no visuals found";
        r.extra["empty"] = "true";
        record(std::move(r));
        return result;
    }

    if (visualOverlayId_)
        emit(EventKind::OverlayHide, {{"overlayId", *visualOverlayId_}, {"kind", "visual"}});
    else
        visualReturn_ = mode_;
    visualOverlayId_ = newOverlayId();
    json results = json::array();
    for (const auto& img : result.results)
        results.push_back(imageJson(img));
    emit(EventKind::OverlayShow, {{"overlayId", *visualOverlayId_},
                                  {"kind", "visual"},
                                  {"keywords", result.keywords},
                                  {"area", content::rectToJson(area)},
                                  {"results", results}});
    mode_ = Mode::VisualShown;

    r.response = result.results.front().url;
    record(std::move(r));
    return result;
}

void Session::dismissVisual()
{
    require("dismissVisual", {Mode::VisualShown});
    emit(EventKind::OverlayHide, {{"overlayId", *visualOverlayId_}, {"kind", "visual"}});
    visualOverlayId_.reset();
    mode_ = visualReturn_;
}

// ---- quizzes ---------------------------------------------------------------

std::optional<ServedQuiz> Session::pickQuiz(const content::Section& section, int level)
{
    std::vector<int> order{level};
    for (int d = 1; d < content::kMaxDifficulty; ++d)
    {
        order.push_back(level - d);
        order.push_back(level + d);
    }
    for (int l : order)
    {
        if (l < content::kMinDifficulty || l > content::kMaxDifficulty)
            continue;
        auto it = section.quizzes.find(l);
        if (it == section.quizzes.end() || it->second.empty())
            continue;
        std::size_t best = 0;
        std::optional<std::uint64_t> bestStamp;
        for (std::size_t i = 0; i < it->second.size(); ++i)
        {
            auto s = lastServed_.find({section.id, l, i});
            if (s == lastServed_.end())
            {
                bestStamp.reset();
                best = i;
                break;
            }
            if (!bestStamp || s->second < *bestStamp)
            {
                bestStamp = s->second;
                best = i;
            }
        }
        ServedQuiz q;
        q.sectionId = section.id;
        q.level = l;
        q.index = best;
        q.item = it->second[best];
        q.item.difficulty = std::clamp(q.item.difficulty, content::kMinDifficulty, content::kMaxDifficulty);
        q.fallback = l != level;
        return q;
    }
    return std::nullopt;
}

ServedQuiz Session::serveQuiz(const std::optional<std::string>& sectionId)
{
    require("serveQuiz", {Mode::Playing, Mode::QuizActive});
    requireSections();
    const content::Section* section = sectionId ? bundle_->findSection(*sectionId) : &currentSection();
    if (!section)
        throw NotFound("unknown section " + *sectionId);
    auto q = pickQuiz(*section, difficulty_);
    if (!q)
        throw PreconditionFailed("section " + section->id + " has no quiz items");
    lastServed_[{q->sectionId, q->level, q->index}] = ++serveCounter_;
    activeQuiz_ = q;
    mode_ = Mode::QuizActive;
    emit(EventKind::QuizPrompt, quizPromptJson(*q));
    return *q;
}

AnswerResult Session::answerQuiz(const std::string& answer)
{
    require("answerQuiz", {Mode::QuizActive});
    const ServedQuiz q = *activeQuiz_;
    AnswerResult result;
    result.correct = answerMatches(q.item, answer);
    result.explanation = q.item.explanation;
    result.correctAnswer = q.item.correctAnswer;

    InteractionRecord r;
    r.kind = RecordKind::QuizAnswer;
    r.sectionId = q.sectionId;
    r.timestampSec = position_;
    r.prompt = q.item.question;
    r.response = answer;
    r.extra["correct"] = result.correct ? "true" : "false";
    r.extra["level"] = std::to_string(q.level);
    r.extra["correctAnswer"] = q.item.correctAnswer;
    r.extra["type"] = content::toString(q.item.type);
    if (q.fallback)
        r.extra["fallbackLevel"] = "true";
    record(std::move(r));

    activeQuiz_.reset();
    mode_ = Mode::Playing;
    emit(EventKind::Resume, {{"reason", "quiz"}, {"mode", toString(mode_)}, {"playing", true}});
    return result;
}

// ---- breaks ----------------------------------------------------------------

BreakResult Session::startBreak(int minutes)
{
    if (!allowedBreakMinutes(minutes))
        throw PreconditionFailed("break length must be 1, 3 or 5 minutes");
    require("break", {Mode::Playing});
    const content::Section& section = currentSection();

    gateway::ProviderRequest request;
    request.templateId = gateway::TemplateId::BreakStory;
    request.bindings = {{"currentVideoName", bundle_->title},
                        {"summaryText", lectureSummary()},
                        {"currentSlideContent", slideContent(section)},
                        {"breakDuration", std::to_string(minutes)},
                        {"userInterests",
                         config_.interests.empty() ? std::string("none specified")
                                                   : text::join(config_.interests, ", ")}};
    std::string story = text::trim(services_.gateway->complete(request).rawText);
    if (story.empty())
        throw gateway::ProviderUnavailable("break story was empty");

    BreakResult result;
    result.story = story;
    result.minutes = minutes;
    result.wordCount = text::wordCount(story);
    result.endsNoEarlierThanSec = clock_ + minutes * 60.0;

    mode_ = Mode::OnBreak;
    result.speech = speech_.speak(story, config_.voiceId, clock_);
    break_ = PendingBreak{result.speech.id, result.endsNoEarlierThanSec, std::nullopt};
    emit(EventKind::BreakStart, {{"minutes", minutes},
                                 {"story", story},
                                 {"jobId", result.speech.id},
                                 {"timerEndsAtSec", roundMillis(result.endsNoEarlierThanSec)}});

    InteractionRecord r;
    r.kind = RecordKind::BreakTaken;
    r.sectionId = section.id;
    r.timestampSec = position_;
    r.prompt = std::to_string(minutes) + " minute break";
    r.response = story;
    r.extra["minutes"] = std::to_string(minutes);
    r.extra["wordCount"] = std::to_string(result.wordCount);
    r.extra["targetWords"] = std::to_string(minutes * kWordsPerBreakMinute);
    record(std::move(r));

    pumpSpeech();
    return result;
}

// ---- settings and position -------------------------------------------------

void Session::setDifficulty(int level)
{
    if (level < content::kMinDifficulty || level > content::kMaxDifficulty)
        throw PreconditionFailed("difficulty must be within 1..5");
    difficulty_ = level;
}

void Session::setHighlightEnabled(bool enabled)
{
    highlightEnabled_ = enabled;
    emitHighlightsIfChanged(true);
}

std::vector<content::HighlightEntry> Session::activeHighlights(double tSec) const
{
    std::vector<content::HighlightEntry> out;
    if (!highlightEnabled_ || bundle_->sections.empty())
        return out;
    auto idx = bundle_->sectionIndexAt(tSec);
    if (!idx)
        return out;
    for (const auto& h : bundle_->sections[*idx].highlights)
        if (h.span && tSec >= h.span->startSec - kTimeEpsilon && tSec <= h.span->endSec + kTimeEpsilon)
            out.push_back(h);
    return out;
}

void Session::emitHighlightsIfChanged(bool force)
{
    std::vector<std::size_t> ids;
    json entries = json::array();
    std::string sectionId;
    if (highlightEnabled_ && !bundle_->sections.empty())
    {
        if (auto idx = bundle_->sectionIndexAt(position_))
        {
            const auto& s = bundle_->sections[*idx];
            sectionId = s.id;
            for (std::size_t i = 0; i < s.highlights.size(); ++i)
            {
                const auto& h = s.highlights[i];
                if (h.span && position_ >= h.span->startSec - kTimeEpsilon &&
                    position_ <= h.span->endSec + kTimeEpsilon)
                {
                    ids.push_back(*idx * 100000 + i);
                    entries.push_back({{"index", i},
                                       {"box", content::rectToJson(h.box)},
                                       {"relevantTranscript", h.relevantTranscript}});
                }
            }
        }
    }
    if (!force && ids == lastHighlightSet_)
        return;
    lastHighlightSet_ = ids;
    emit(EventKind::HighlightSet, {{"enabled", highlightEnabled_}, {"sectionId", sectionId}, {"entries", entries}});
}

PositionResult Session::setPosition(double tSec)
{
    if (!std::isfinite(tSec) || tSec < 0.0 || tSec > bundle_->durationSec + kTimeEpsilon)
        throw PreconditionFailed("position must lie within [0, durationSec]");
    require("position", {Mode::Playing, Mode::QuizActive, Mode::VisualShown, Mode::ExampleActive, Mode::SummaryView});
    tSec = std::min(tSec, bundle_->durationSec);

    PositionResult result;
    const double from = position_;
    if (mode_ != Mode::Playing || tSec <= from)
    {
        position_ = tSec;
        result.positionSec = position_;
        emitHighlightsIfChanged(false);
        return result;
    }

    // Forward crossing while playing: stop at the first quiz or example trigger.
    std::optional<double> quizAt;
    std::optional<std::size_t> quizSection;
    for (std::size_t k = 0; k < bundle_->sections.size(); ++k)
    {
        const auto& s = bundle_->sections[k];
        bool hasItems = std::any_of(s.quizzes.begin(), s.quizzes.end(), [](const auto& kv) { return !kv.second.empty(); });
        if (hasItems && s.endSec > from && s.endSec <= tSec)
        {
            quizAt = s.endSec;
            quizSection = k;
            break;
        }
    }
    std::optional<std::size_t> example;
    for (std::size_t i = 0; i < bundle_->examples.size(); ++i)
    {
        const auto& ex = bundle_->examples[i];
        if (exampleFired_[i] || !(ex.triggerSec > from && ex.triggerSec <= tSec))
            continue;
        if (!example || ex.triggerSec < bundle_->examples[*example].triggerSec)
            example = i;
    }

    const bool quizFirst = quizAt && (!example || *quizAt <= bundle_->examples[*example].triggerSec);
    if (quizFirst)
    {
        // Section end belongs to the next section; keep the position inside the ending one for context.
        position_ = *quizAt;
        result.positionSec = position_;
        emitHighlightsIfChanged(false);
        result.quiz = serveQuiz(bundle_->sections[*quizSection].id);
        return result;
    }
    if (example)
    {
        const auto& ex = bundle_->examples[*example];
        exampleFired_[*example] = true;
        position_ = ex.triggerSec;
        result.positionSec = position_;
        emitHighlightsIfChanged(false);
        mode_ = Mode::ExampleActive;
        emit(EventKind::ExamplePrompt, {{"sectionId", ex.sectionId},
                                        {"htmlRef", ex.htmlRef},
                                        {"title", ex.title},
                                        {"triggerSec", ex.triggerSec},
                                        {"trigger", "auto"}});
        InteractionRecord r;
        r.kind = RecordKind::ExampleOpened;
        r.sectionId = ex.sectionId;
        r.timestampSec = position_;
        r.prompt = ex.title;
        r.response = ex.htmlRef;
        r.extra["trigger"] = "auto";
        record(std::move(r));
        result.example = ex;
        return result;
    }

    position_ = tSec;
    result.positionSec = position_;
    emitHighlightsIfChanged(false);
    return result;
}

// ---- examples and summary view ---------------------------------------------

content::ExampleAsset Session::openExample(const std::optional<std::string>& htmlRef)
{
    require("openExample", {Mode::Playing, Mode::ExampleActive});
    const content::ExampleAsset* chosen = nullptr;
    if (htmlRef)
    {
        for (const auto& ex : bundle_->examples)
            if (ex.htmlRef == *htmlRef)
                chosen = &ex;
        if (!chosen)
            throw NotFound("unknown example " + *htmlRef);
    }
    else
    {
        if (bundle_->examples.empty())
            throw NotFound("lecture has no examples");
        std::string current = bundle_->sections.empty() ? "" : currentSection().id;
        for (const auto& ex : bundle_->examples)
            if (ex.sectionId == current)
            {
                chosen = &ex;
                break;
            }
        if (!chosen)
            chosen = &bundle_->examples.front();
    }

    mode_ = Mode::ExampleActive;
    emit(EventKind::ExamplePrompt, {{"sectionId", chosen->sectionId},
                                    {"htmlRef", chosen->htmlRef},
                                    {"title", chosen->title},
                                    {"triggerSec", chosen->triggerSec},
                                    {"trigger", "manual"}});
    InteractionRecord r;
    r.kind = RecordKind::ExampleOpened;
    r.sectionId = chosen->sectionId;
    r.timestampSec = position_;
    r.prompt = chosen->title;
    r.response = chosen->htmlRef;
    r.extra["trigger"] = "manual";
    record(std::move(r));
    return *chosen;
}

void Session::closeExample()
{
    require("closeExample", {Mode::ExampleActive});
    mode_ = Mode::Playing;
    emit(EventKind::Resume, {{"reason", "example"}, {"mode", toString(mode_)}, {"playing", true}});
}

void Session::openSummary()
{
    require("openSummary", {Mode::Playing});
    mode_ = Mode::SummaryView;
}

void Session::closeSummary()
{
    require("closeSummary", {Mode::SummaryView});
    mode_ = Mode::Playing;
}

media::SpeechJob Session::replay(std::size_t recordIndex)
{
    require("replay", {Mode::SummaryView});
    if (recordIndex >= log_.size())
        throw NotFound("no record " + std::to_string(recordIndex));
    const auto& r = log_[recordIndex];
    if (r.kind != RecordKind::Question || !r.response || text::trim(*r.response).empty())
        throw PreconditionFailed("only answered questions can be replayed");
    auto job = speech_.speak(*r.response, config_.voiceId, clock_);
    pumpSpeech();
    return job;
}

void Session::addNote(const std::string& note, std::optional<content::Rect> area)
{
    if (text::trim(note).empty())
        throw PreconditionFailed("note text must be non-empty");
    if (area)
        checkArea(*area);
    InteractionRecord r;
    r.kind = RecordKind::Note;
    r.sectionId = currentSection().id;
    r.timestampSec = position_;
    r.selectedArea = area;
    r.response = note;
    record(std::move(r));
}

json Session::snapshot() const
{
    json j = {{"sessionId", config_.sessionId},
              {"bundleId", bundle_->id},
              {"positionSec", roundMillis(position_)},
              {"clockSec", roundMillis(clock_)},
              {"mode", toString(mode_)},
              {"difficulty", difficulty_},
              {"interests", config_.interests},
              {"highlightEnabled", highlightEnabled_},
              {"logSize", log_.size()},
              {"lastSeq", lastSeq()}};
    if (activeQuiz_)
        j["activeQuiz"] = quizPromptJson(*activeQuiz_);
    if (auto job = speech_.active())
        j["activeSpeech"] = {{"jobId", job->id}, {"status", media::toString(job->status)}, {"degraded", job->degraded}};
    return j;
}

} // namespace lecturekit::session
