#include "lecturekit/common/net.hpp"
#include "lecturekit/media/image_search.hpp"
#include "lecturekit/media/speech.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace lecturekit;
using namespace lecturekit::media;

namespace
{

std::string words(int n)
{
    std::string s;
    for (int i = 0; i < n; ++i)
        s += "word ";
    return s;
}

class FixedSearch : public ImageSearchProvider
{
  public:
    std::vector<ImageResult> results;
    std::vector<ImageResult> query(const std::string&, int maxResults) override
    {
        auto out = results;
        if (static_cast<int>(out.size()) > maxResults)
            out.resize(static_cast<std::size_t>(maxResults));
        return out;
    }
};

} // namespace

TEST_CASE("speech duration estimate is words at 150 per minute")
{
    CHECK(estimateSpeechSec(words(150)) == doctest::Approx(60.0));
    CHECK(estimateSpeechSec(words(50)) == doctest::Approx(20.0));
    CHECK(estimateSpeechSec("") == 0.0);
}

TEST_CASE("speech jobs go queued, speaking, done on the simulated clock")
{
    SpeechChannel ch(std::make_shared<StubSpeechBackend>(true));
    auto job = ch.speak(words(25), "instructor", 1.0);
    CHECK(job.estimatedDurationSec == doctest::Approx(10.0));
    CHECK_FALSE(job.degraded);

    auto first = ch.advanceTo(1.0);
    REQUIRE(first.size() == 1);
    CHECK((first[0].status == SpeechStatus::Queued));
    CHECK(ch.nextEventSec() == doctest::Approx(1.5));

    auto second = ch.advanceTo(1.5);
    REQUIRE(second.size() == 1);
    CHECK((second[0].status == SpeechStatus::Speaking));

    CHECK(ch.advanceTo(11.49).empty());
    auto done = ch.advanceTo(11.5);
    REQUIRE(done.size() == 1);
    CHECK((done[0].status == SpeechStatus::Done));
    CHECK_FALSE(ch.active().has_value());
    CHECK((ch.job(job.id)->status == SpeechStatus::Done));
}

TEST_CASE("new speech preempts the active job with exactly one failed event")
{
    SpeechChannel ch(std::make_shared<StubSpeechBackend>(true));
    auto a = ch.speak(words(100), "v", 0.0);
    ch.advanceTo(1.0);
    auto b = ch.speak(words(10), "v", 1.0);
    auto events = ch.advanceTo(100.0);
    int aTerminal = 0, bDone = 0;
    for (const auto& e : events)
    {
        if (e.jobId == a.id && (e.status == SpeechStatus::Done || e.status == SpeechStatus::Failed))
        {
            ++aTerminal;
            CHECK((e.status == SpeechStatus::Failed));
            CHECK(e.reason == "preempted");
        }
        if (e.jobId == b.id && e.status == SpeechStatus::Done)
            ++bDone;
    }
    CHECK(aTerminal == 1);
    CHECK(bDone == 1);
    CHECK(a.id != b.id);
}

TEST_CASE("unavailable avatar degrades to timed text")
{
    SpeechChannel ch(std::make_shared<StubSpeechBackend>(false));
    auto job = ch.speak(words(5), "v", 0.0);
    CHECK(job.degraded);
    auto events = ch.advanceTo(job.estimatedDurationSec);
    REQUIRE_FALSE(events.empty());
    CHECK((events.back().status == SpeechStatus::Done));
    CHECK(events.back().atSec == doctest::Approx(2.0));
    for (const auto& e : events)
        CHECK((e.status != SpeechStatus::Speaking));
}

TEST_CASE("cancel is a no-op when idle")
{
    SpeechChannel ch(std::make_shared<StubSpeechBackend>(true));
    ch.cancel(0.0);
    CHECK(ch.advanceTo(10).empty());
    CHECK_THROWS_AS(ch.speak("   ", "v", 0.0), PreconditionFailed);
}

TEST_CASE("stub image search fixtures")
{
    StubImageSearch stub;
    auto quarks = searchImages(stub, "Quarks", 5);
    REQUIRE_FALSE(quarks.empty());
    CHECK(quarks[0].sourceDomain.find("wikimedia") != std::string::npos);
    CHECK(searchImages(stub, "quarks", 0).empty());
    CHECK_THROWS_AS(searchImages(stub, "zzzz unrelated", 5), EmptyResults);
    CHECK_THROWS_AS(searchImages(stub, "", 5), PreconditionFailed);

    stub.setUnavailable(true);
    CHECK_THROWS_AS(searchImages(stub, "quarks", 5), SearchUnavailable);
    CHECK(stub.queryCount() >= 3);
}

TEST_CASE("malformed result URLs are dropped")
{
    FixedSearch fixed;
    fixed.results = {{"https://example.org/a.png", "a", "example.org", ""},
                     {"javascript:alert(1)", "b", "", ""},
                     {"not a url", "c", "", ""}};
    auto out = searchImages(fixed, "anything", 5);
    REQUIRE(out.size() == 1);
    CHECK(out[0].title == "a");

    fixed.results = {{"ftp://x/y.png", "x", "", ""}};
    CHECK_THROWS_AS(searchImages(fixed, "anything", 5), EmptyResults);
}

TEST_CASE("environment factories stay offline in mock mode")
{
    auto before = net::egressCount();
    auto search = imageSearchFromEnvironment(true);
    CHECK_NOTHROW(search->query("gluon", 3));
    auto speech = speechBackendFromEnvironment(true);
    SpeechChannel ch(speech);
    CHECK_FALSE(ch.speak("hello there", "v", 0).degraded);
    CHECK(net::egressCount() == before);

    ::unsetenv("MEDIA_MOCK");
    ::unsetenv("IMAGE_SEARCH_KEY");
    ::unsetenv("IMAGE_SEARCH_CX");
    auto unconfigured = imageSearchFromEnvironment(false);
    CHECK_THROWS_AS(unconfigured->query("gluon", 3), SearchUnavailable);
    CHECK(net::egressCount() == before);
}
