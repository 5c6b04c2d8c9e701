#include "fixtures.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/content/errors.hpp"
#include "lecturekit/imaging/image.hpp"
#include "lecturekit/session/session.hpp"

#include <doctest.h>

#include <fstream>
#include <set>

using namespace lecturekit;
using namespace lecturekit::session;
namespace lt = lecturekit::testing;

namespace
{

struct Fixture
{
    lt::HandBundle hb = lt::buildHandBundle();
    lt::SessionRig rig = lt::makeRig();
    lt::TempDir scratch{"scratch"};

    std::unique_ptr<Session> make(std::vector<std::string> interests = {}, bool avatar = true)
    {
        if (!avatar)
            rig.speech = std::make_shared<media::StubSpeechBackend>(false);
        auto cfg = lt::sessionConfig("sess", std::move(interests));
        cfg.scratchDir = scratch.path();
        return std::make_unique<Session>(hb.bundle, hb.root, cfg, rig.services());
    }
};

std::size_t countKind(const Session& s, EventKind k)
{
    std::size_t n = 0;
    for (const auto& e : s.events())
        n += e.kind == k ? 1 : 0;
    return n;
}

void finishSpeech(Session& s)
{
    s.advance(600.0);
}

} // namespace

TEST_CASE("explanation mode detection")
{
    CHECK((detectExplanationMode("Can you make an analogy?") == ExplanationMode::Analogy));
    CHECK((detectExplanationMode("Any ANALOGIES for this") == ExplanationMode::Analogy));
    CHECK((detectExplanationMode("Explain like I'm five") == ExplanationMode::Analogy));
    CHECK((detectExplanationMode("Walk me through this step by step") == ExplanationMode::Step));
    CHECK((detectExplanationMode("Please explain this.") == ExplanationMode::Default));
    CHECK(allowedBreakMinutes(1));
    CHECK(allowedBreakMinutes(3));
    CHECK(allowedBreakMinutes(5));
    CHECK_FALSE(allowedBreakMinutes(2));
}

TEST_CASE("default clarification pauses, answers, then resumes once")
{
    Fixture f;
    auto s = f.make();
    auto r = s->askClarification(std::nullopt, std::nullopt);
    CHECK((s->mode() == Mode::Clarifying));
    CHECK_FALSE(r.responseText.empty());
    CHECK_FALSE(r.providerError.has_value());
    REQUIRE(s->log().size() == 1);
    CHECK(s->log()[0].prompt == std::string(kDefaultQuestion));
    CHECK(s->log()[0].wallClock == lt::fixedClock());

    // No overlap with the avatar viewport.
    content::Rect avatar{0.78, 0.72, 1.0, 1.0};
    CHECK_FALSE((std::min(r.plan.region.rect.x1, avatar.x1) - std::max(r.plan.region.rect.x0, avatar.x0) > 1e-9 &&
                 std::min(r.plan.region.rect.y1, avatar.y1) - std::max(r.plan.region.rect.y0, avatar.y0) > 1e-9));

    finishSpeech(*s);
    CHECK((s->mode() == Mode::Playing));
    CHECK(countKind(*s, EventKind::Resume) == 1);
    CHECK(countKind(*s, EventKind::OverlayHide) == 1);
    finishSpeech(*s);
    CHECK(countKind(*s, EventKind::Resume) == 1);
}

TEST_CASE("nucleus question gets a short answer")
{
    Fixture f;
    auto s = f.make();
    auto r = s->askClarification(content::Rect{0.05, 0.2, 0.5, 0.35},
                                 std::string("What is the difference between nucleus and nucleons?"));
    CHECK(text::sentenceCount(r.responseText) <= 3);
    CHECK(text::wordCount(r.responseText) <= 50);
    CHECK_FALSE(r.lengthViolation);
    CHECK(s->log()[0].extra.at("lengthViolation") == "false");
    // Nearby highlight text travels with the question.
    auto history = f.rig.mock->history();
    REQUIRE_FALSE(history.empty());
    CHECK(history.back().userContent.find("nucleus holds protons") != std::string::npos);
}

TEST_CASE("analogy requests use interests; missing interests are flagged")
{
    Fixture f;
    auto withFootball = f.make({"football"});
    auto r = withFootball->askClarification(std::nullopt, std::string("Can you make an analogy?"));
    CHECK((r.mode == ExplanationMode::Analogy));
    CHECK(text::toLower(r.responseText).find("stadium") != std::string::npos);
    CHECK(f.rig.mock->history().back().userContent.find("Learner interests: football") != std::string::npos);

    auto none = f.make();
    auto g = none->askClarification(std::nullopt, std::string("Can you make an analogy?"));
    CHECK(text::toLower(g.responseText).find("stadium") == std::string::npos);
    CHECK(none->log()[0].extra.at("interestsMissing") == "true");

    auto step = f.make({"football"});
    auto st = step->askClarification(std::nullopt, std::string("Walk me through this step by step"));
    CHECK((st.mode == ExplanationMode::Step));
    CHECK(f.rig.mock->history().back().userContent.find("Learner interests") == std::string::npos);
}

TEST_CASE("overlong replies are delivered and flagged")
{
    Fixture f;
    auto s = f.make();
    std::string eighty;
    for (int i = 0; i < 80; ++i)
        eighty += "word ";
    f.rig.mock->script(gateway::TemplateId::Clarify, eighty);
    auto r = s->askClarification(std::nullopt, std::nullopt);
    CHECK(r.lengthViolation);
    CHECK(text::wordCount(r.responseText) == 80);
    CHECK(s->log()[0].extra.at("lengthViolation") == "true");
}

TEST_CASE("provider failure shows an apology and still resumes")
{
    Fixture f;
    auto s = f.make({}, false);
    f.rig.mock->failNext(gateway::TemplateId::Clarify, 10);
    auto r = s->askClarification(std::nullopt, std::nullopt);
    REQUIRE(r.providerError.has_value());
    CHECK(*r.providerError == "ProviderUnavailable");
    CHECK(r.speech.degraded);
    finishSpeech(*s);
    CHECK((s->mode() == Mode::Playing));
    CHECK(countKind(*s, EventKind::Resume) == 1);
}

TEST_CASE("visual requests: labelled crop, dismissal, blank crop")
{
    Fixture f;
    auto s = f.make();
    // Seeking outside Playing fires no quiz or example.
    s->openSummary();
    s->setPosition(21.0);
    s->closeSummary();
    content::Rect area{0.05, 0.5, 0.95, 0.85};
    lt::TempDir tmp("crop");
    imaging::cropToFile(f.hb.root / f.hb.bundle->sections[2].slideImageRef, area, tmp / "c.png");
    f.rig.mock->registerImageLabel(imaging::perceptualHash(imaging::loadGray(tmp / "c.png")), "quarks");

    auto v = s->requestVisual(area);
    CHECK(v.keywords == "quarks");
    REQUIRE_FALSE(v.results.empty());
    CHECK(v.results.size() <= static_cast<std::size_t>(kVisualResults));
    CHECK((s->mode() == Mode::VisualShown));
    s->dismissVisual();
    CHECK((s->mode() == Mode::Playing));

    // White strip with nothing on it.
    auto blank = s->requestVisual(content::Rect{0.0, 0.92, 0.3, 1.0});
    CHECK(blank.keywords.empty());
    CHECK(blank.notice == std::string("no visuals found"));
    CHECK((s->mode() == Mode::Playing));
    CHECK(s->log().size() == 2);
    CHECK_THROWS_AS(s->dismissVisual(), IllegalTransition);
}

TEST_CASE("quiz serving: formula at level 3, slider, fallback, least recently served")
{
    Fixture f;
    auto s = f.make();
    auto q = s->serveQuiz(std::string("s002"));
    CHECK(q.level == 3);
    CHECK(q.item.difficulty == 3);
    CHECK(q.item.correctAnswer == "y = w · x + b");
    CHECK((s->mode() == Mode::QuizActive));
    auto a = s->answerQuiz(q.item.correctAnswer);
    CHECK(a.correct);
    CHECK_FALSE(a.explanation.empty());
    CHECK((s->mode() == Mode::Playing));

    // Three items at the level: the next two are new, the fourth wraps around.
    std::set<std::size_t> seen{q.index};
    for (int i = 0; i < 2; ++i)
    {
        auto n = s->serveQuiz(std::string("s002"));
        seen.insert(n.index);
        s->answerQuiz("nonsense");
    }
    CHECK(seen.size() == 3);
    CHECK(s->serveQuiz(std::string("s002")).index == q.index);
    s->answerQuiz("x");

    s->setDifficulty(5);
    CHECK(s->serveQuiz(std::string("s001")).level == 5);
    s->answerQuiz("x");
    CHECK_THROWS_AS(s->setDifficulty(0), PreconditionFailed);
    CHECK_THROWS_AS(s->setDifficulty(6), PreconditionFailed);

    // Empty level 1 falls back to level 2.
    auto bundle = *f.hb.bundle;
    bundle.sections[0].quizzes[1].clear();
    auto cfg = lt::sessionConfig("fb");
    cfg.difficulty = 1;
    Session fb(std::make_shared<const content::LectureBundle>(bundle), f.hb.root, cfg, f.rig.services());
    auto fq = fb.serveQuiz(std::string("s001"));
    CHECK(fq.level == 2);
    CHECK(fq.fallback);
    fb.answerQuiz("x");
    CHECK(fb.log().back().extra.at("fallbackLevel") == "true");
}

TEST_CASE("quiz answers are normalized; fill-blank accepts synonyms")
{
    Fixture f;
    auto bundle = *f.hb.bundle;
    content::QuizItem fill;
    fill.type = content::QuizType::FillBlank;
    fill.question = "A perceptron combines inputs by ____.";
    fill.correctAnswer = "addition";
    fill.explanation = "Weighted addition.";
    fill.difficulty = 3;
    fill.synonyms = {"summation"};
    bundle.sections[1].quizzes[3] = {fill};
    Session s(std::make_shared<const content::LectureBundle>(bundle), f.hb.root, lt::sessionConfig("n"),
              f.rig.services());
    s.serveQuiz(std::string("s002"));
    CHECK(s.answerQuiz("Addition ").correct);
    s.serveQuiz(std::string("s002"));
    CHECK(s.answerQuiz("SUMMATION").correct);
    s.serveQuiz(std::string("s002"));
    auto wrong = s.answerQuiz("subtraction");
    CHECK_FALSE(wrong.correct);
    CHECK(wrong.explanation == "Weighted addition.");
}

TEST_CASE("breaks: allowed lengths, budget, resume after timer and story")
{
    Fixture f;
    auto s = f.make({"football"});
    CHECK_THROWS_AS(s->startBreak(2), PreconditionFailed);
    auto b = s->startBreak(3);
    CHECK((s->mode() == Mode::OnBreak));
    CHECK(static_cast<double>(b.wordCount) >= 450 * 0.8);
    CHECK(static_cast<double>(b.wordCount) <= 450 * 1.2);
    CHECK_THROWS_AS(s->askClarification(std::nullopt, std::nullopt), IllegalTransition);
    CHECK_THROWS_AS(s->setPosition(5.0), IllegalTransition);
    CHECK_THROWS_AS(s->startBreak(2), PreconditionFailed);

    s->advance(179.0);
    CHECK((s->mode() == Mode::OnBreak));
    s->advance(400.0);
    CHECK((s->mode() == Mode::Playing));
    CHECK(countKind(*s, EventKind::BreakEnd) == 1);
}

TEST_CASE("highlights activate inside their time range and respect the toggle")
{
    Fixture f;
    auto s = f.make();
    auto inGluons = s->activeHighlights(23.0);
    REQUIRE(inGluons.size() == 1);
    CHECK(inGluons[0].relevantTranscript.find("Gluons") != std::string::npos);
    CHECK(s->activeHighlights(29.0).empty());
    s->setHighlightEnabled(false);
    CHECK(s->activeHighlights(23.0).empty());
}

TEST_CASE("position crossings trigger quizzes and examples")
{
    Fixture f;
    auto s = f.make();
    auto r = s->setPosition(11.0);
    // The section-1 end (10 s) comes before the 12 s example.
    REQUIRE(r.quiz.has_value());
    CHECK(r.quiz->sectionId == "s001");
    CHECK(r.positionSec == 10.0);
    CHECK((s->mode() == Mode::QuizActive));
    s->answerQuiz("x");

    auto e = s->setPosition(13.0);
    REQUIRE(e.example.has_value());
    CHECK(e.example->triggerSec == 12.0);
    CHECK((s->mode() == Mode::ExampleActive));
    s->closeExample();

    // Seeking back over the trigger does not fire it again.
    s->setPosition(5.0);
    auto again = s->setPosition(9.0);
    CHECK_FALSE(again.example.has_value());
    s->setPosition(11.5);
    s->answerQuiz("x");
    auto noRepeat = s->setPosition(14.0);
    CHECK_FALSE(noRepeat.example.has_value());
    CHECK((s->mode() == Mode::Playing));

    // Manual open ignores the once rule and is recorded.
    auto manual = s->openExample(std::string("examples/perceptron_demo.html"));
    CHECK(manual.triggerSec == 12.0);
    CHECK((s->log().back().kind == RecordKind::ExampleOpened));
    CHECK(s->log().back().extra.at("trigger") == "manual");
    s->closeExample();

    CHECK_THROWS_AS(s->setPosition(-1.0), PreconditionFailed);
    CHECK_THROWS_AS(s->setPosition(31.0), PreconditionFailed);
}

TEST_CASE("illegal operations are rejected without changing state")
{
    Fixture f;
    auto s = f.make();
    CHECK_THROWS_AS(s->answerQuiz("x"), IllegalTransition);
    CHECK_THROWS_AS(s->closeExample(), IllegalTransition);
    CHECK_THROWS_AS(s->closeSummary(), IllegalTransition);
    s->openSummary();
    CHECK_THROWS_AS(s->startBreak(1), IllegalTransition);
    CHECK_THROWS_AS(s->serveQuiz(), IllegalTransition);
    CHECK((s->mode() == Mode::SummaryView));
    CHECK(s->log().empty());
    s->closeSummary();
    CHECK((s->mode() == Mode::Playing));
}

TEST_CASE("summary replay re-speaks a stored answer")
{
    Fixture f;
    auto s = f.make();
    auto r = s->askClarification(std::nullopt, std::nullopt);
    finishSpeech(*s);
    s->openSummary();
    auto job = s->replay(0);
    CHECK(job.text == r.responseText);
    CHECK_THROWS_AS(s->replay(5), NotFound);
    s->addNote("remember this");
    CHECK_THROWS_AS(s->replay(1), PreconditionFailed);
}

TEST_CASE("records persist through the callback and restore")
{
    Fixture f;
    std::vector<InteractionRecord> persisted;
    auto cfg = lt::sessionConfig("p");
    cfg.onRecord = [&](const InteractionRecord& r) { persisted.push_back(r); };
    Session s(f.hb.bundle, f.hb.root, cfg, f.rig.services());
    s.addNote("first", content::Rect{0.1, 0.1, 0.2, 0.2});
    s.askClarification(std::nullopt, std::nullopt);
    CHECK(persisted == s.log());

    Session restored(f.hb.bundle, f.hb.root, lt::sessionConfig("p"), f.rig.services());
    restored.restoreLog(persisted);
    CHECK(restored.log() == s.log());
    CHECK((restored.mode() == Mode::Playing));
}

TEST_CASE("log files round trip and ignore a torn tail")
{
    lt::TempDir dir("log");
    InteractionRecord a;
    a.kind = RecordKind::Question;
    a.sectionId = "s001";
    a.wallClock = lt::fixedClock();
    a.timestampSec = 1.5;
    a.selectedArea = content::Rect{0.1, 0.2, 0.3, 0.4};
    a.prompt = "why?";
    a.response = "because";
    a.extra["mode"] = "default";
    appendRecord(dir / "s.jsonl", a);
    appendRecord(dir / "s.jsonl", a);
    {
        std::ofstream out(dir / "s.jsonl", std::ios::app);
        out << "{\"kind\":\"note\",\"sec";
    }
    auto back = readLog(dir / "s.jsonl");
    REQUIRE(back.size() == 2);
    CHECK(back[0] == a);
    CHECK(readLog(dir / "missing.jsonl").empty());
    CHECK_THROWS_AS(recordFromJson(nlohmann::json{{"kind", "bogus"}}), content::SchemaViolation);
}
