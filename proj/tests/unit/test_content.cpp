#include "fixtures.hpp"

#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/content/errors.hpp"

#include <doctest.h>

#include <filesystem>

namespace fs = std::filesystem;

using namespace lecturekit;
using namespace lecturekit::content;
using nlohmann::json;
namespace lt = lecturekit::testing;

namespace
{

json mc(std::string answer = "Option A")
{
    return {{"type", "multiple-choice"},
            {"question", "Which option?"},
            {"options", {"Option A", "Option B", "Option C", "Option D"}},
            {"correctAnswer", answer},
            {"explanation", "Because."},
            {"difficulty", 2}};
}

} // namespace

TEST_CASE("validateQuizItem accepts the documented shapes")
{
    QuizItem item = validateQuizItem(mc());
    CHECK((item.type == QuizType::MultipleChoice));
    CHECK(item.options.size() == 4);
    CHECK(item.correctAnswer == "Option A");
    CHECK(item.difficulty == 2);

    json tf = {{"type", "true-false"},     {"question", "Nucleons live in the nucleus."},
               {"options", json::array()}, {"correctAnswer", "true"},
               {"explanation", "They do."}, {"difficulty", "medium"}};
    QuizItem t = validateQuizItem(tf);
    CHECK(t.correctAnswer == "True");
    CHECK(t.difficulty == 3);

    json fb = {{"type", "fill-blank"},      {"question", "A perceptron sums inputs by ____."},
               {"options", json::array()}, {"correctAnswer", "addition"},
               {"explanation", "Weighted addition."}};
    CHECK(validateQuizItem(fb, 4).difficulty == 4);
    CHECK_THROWS_AS(validateQuizItem(fb), MissingField);
}

TEST_CASE("validateQuizItem rejects contract violations with typed errors")
{
    CHECK_THROWS_AS(validateQuizItem(mc("Option E")), AnswerNotInOptions);

    json three = mc();
    three["options"] = {"a", "b", "c"};
    three["correctAnswer"] = "a";
    CHECK_THROWS_AS(validateQuizItem(three), SchemaViolation);

    json badType = mc();
    badType["type"] = "essay";
    CHECK_THROWS_AS(validateQuizItem(badType), BadEnum);

    json badLevel = mc();
    badLevel["difficulty"] = 6;
    CHECK_THROWS_AS(validateQuizItem(badLevel), BadEnum);
    badLevel["difficulty"] = 2.5;
    CHECK_THROWS_AS(validateQuizItem(badLevel), BadEnum);

    json noQuestion = mc();
    noQuestion.erase("question");
    CHECK_THROWS_AS(validateQuizItem(noQuestion), MissingField);

    CHECK_THROWS_AS(validateQuizItem(json::array()), SchemaViolation);
}

TEST_CASE("difficulty labels map onto levels")
{
    CHECK(difficultyFromLabel("very easy") == 1);
    CHECK(difficultyFromLabel("Easy") == 2);
    CHECK(difficultyFromLabel("medium") == 3);
    CHECK(difficultyFromLabel("hard") == 4);
    CHECK(difficultyFromLabel("very hard") == 5);
    CHECK(difficultyFromLabel("3") == 3);
    CHECK_FALSE(difficultyFromLabel("impossible").has_value());
}

TEST_CASE("rects serialize as [x0, y0, x1, y1] and are range checked")
{
    Rect r{0.1, 0.2, 0.3, 0.4};
    CHECK(rectToJson(r) == json::array({0.1, 0.2, 0.3, 0.4}));
    CHECK(rectFromJson(json::array({0.1, 0.2, 0.3, 0.4}), "r") == r);
    CHECK_THROWS_AS(rectFromJson(json::array({0.5, 0.2, 0.3, 0.4}), "r"), SchemaViolation);
    CHECK_THROWS_AS(rectFromJson(json::array({0.1, 0.2, 1.3, 0.4}), "r"), SchemaViolation);
    CHECK_THROWS_AS(rectFromJson(json::array({0.1, 0.2}), "r"), SchemaViolation);
}

TEST_CASE("bundle round trip is structurally equal and byte stable")
{
    auto hb = lt::buildHandBundle();
    const LectureBundle& b = *hb.bundle;
    CHECK(b.sections.size() == 3);
    CHECK(b.examples.size() == 2);

    lt::TempDir copy("copy");
    fs::create_directories(copy.path());
    fs::copy(hb.root, copy.path(), fs::copy_options::recursive);
    saveBundle(b, copy.path());
    LectureBundle again = loadBundle(copy.path());
    CHECK(structurallyEqual(b, again));
    CHECK(lt::readText(hb.root / kManifestFile) == lt::readText(copy / kManifestFile));
    CHECK(lt::readText(hb.root / "sections/001/quiz.json") == lt::readText(copy / "sections/001/quiz.json"));
}

TEST_CASE("canonical dump sorts keys and ends with a newline")
{
    json j = {{"b", 1}, {"a", {{"d", 2}, {"c", 3}}}};
    CHECK(canonicalDump(j) == "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n");
}

TEST_CASE("loading reports typed errors")
{
    lt::TempDir empty("empty");
    CHECK_THROWS_AS(loadBundle(empty.path()), MissingManifest);

    auto hb = lt::buildHandBundle();
    fs::remove(hb.root / "sections/001/slide.png");
    CHECK_THROWS_AS(loadBundle(hb.root), DanglingReference);

    auto hb2 = lt::buildHandBundle();
    json manifest = json::parse(lt::readText(hb2.root / kManifestFile));
    manifest["durationSec"] = 31.0;
    lt::writeText(hb2.root / kManifestFile, manifest.dump());
    CHECK_THROWS_AS(loadBundle(hb2.root), SchemaViolation);
}

TEST_CASE("validateBundle enforces section coverage and example ownership")
{
    auto hb = lt::buildHandBundle();
    LectureBundle b = *hb.bundle;
    CHECK_NOTHROW(validateBundle(b, hb.root));

    LectureBundle gap = b;
    gap.sections[1].startSec = 10.5;
    CHECK_THROWS_AS(validateBundle(gap), SchemaViolation);

    LectureBundle wrongOwner = b;
    wrongOwner.examples[0].sectionId = "s003";
    CHECK_THROWS_AS(validateBundle(wrongOwner), SchemaViolation);

    LectureBundle badHighlight = b;
    badHighlight.sections[0].highlights[0].span = TimeSpan{12.0, 13.0};
    CHECK_THROWS_AS(validateBundle(badHighlight), SchemaViolation);
}

TEST_CASE("sectionIndexAt uses half-open spans with a closed final section")
{
    auto hb = lt::buildHandBundle();
    const auto& b = *hb.bundle;
    CHECK(b.sectionIndexAt(0.0) == 0u);
    CHECK(b.sectionIndexAt(9.999) == 0u);
    CHECK(b.sectionIndexAt(10.0) == 1u);
    CHECK(b.sectionIndexAt(30.0) == 2u);
    CHECK_FALSE(b.sectionIndexAt(30.5).has_value());
    CHECK(b.findSection("s002") != nullptr);
    CHECK(b.findSection("nope") == nullptr);
}
