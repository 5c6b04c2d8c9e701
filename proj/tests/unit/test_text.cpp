#include "lecturekit/common/error.hpp"
#include "lecturekit/common/net.hpp"
#include "lecturekit/common/text.hpp"
#include "lecturekit/common/time.hpp"

#include <doctest.h>

using namespace lecturekit;

TEST_CASE("normalize trims, folds case and collapses whitespace")
{
    CHECK(text::normalize("  Addition \t\n") == "addition");
    CHECK(text::normalize("Option   A") == "option a");
    CHECK(text::collapseWhitespace("  Hello\n  there ") == "Hello there");
    CHECK(text::normalize("") == "");
}

TEST_CASE("word and sentence counts")
{
    CHECK(text::wordCount("one two  three\nfour") == 4);
    CHECK(text::wordCount("   ") == 0);
    CHECK(text::sentenceCount("One. Two! Three?") == 3);
    CHECK(text::sentenceCount("No terminator") == 1);
    CHECK(text::sentenceCount("w = 0.5 is a weight.") == 1);
    CHECK(text::sentenceCount("Wait... what?") == 2);
    CHECK(text::sentenceCount("") == 0);
}

TEST_CASE("code points count UTF-8 sequences, not bytes")
{
    CHECK(text::codePointCount("abc") == 3);
    CHECK(text::codePointCount("w \xC2\xB7 x") == 5);         // middle dot
    CHECK(text::codePointCount("\xE2\x86\x92") == 1);         // arrow
    CHECK(text::codePointCount("\xF0\x9F\x8F\x88") == 1);     // football emoji
}

TEST_CASE("fnv1a matches published test vectors")
{
    CHECK(text::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(text::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(text::fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("content tokens drop stopwords")
{
    auto t = text::contentTokens("The nucleus and THE nucleons!");
    CHECK(t == std::vector<std::string>{"nucleus", "nucleons"});
}

TEST_CASE("millisecond time helpers")
{
    CHECK(roundMillis(1.23449) == doctest::Approx(1.234));
    CHECK(timeNear(10.0, 10.0009));
    CHECK_FALSE(timeNear(10.0, 10.002));
    CHECK(timeLess(1.0, 1.002));
    CHECK_FALSE(timeLess(1.0, 1.0005));
    auto now = isoUtcNow();
    CHECK(now.size() == 20);
    CHECK(now.back() == 'Z');
}

TEST_CASE("url parsing and encoding")
{
    auto u = net::parseUrl("https://api.example.com/v1/chat");
    CHECK(u.scheme == "https");
    CHECK(u.host == "api.example.com");
    CHECK(u.port == 443);
    CHECK(u.path == "/v1/chat");
    CHECK(net::parseUrl("http://localhost:8080").port == 8080);
    CHECK_THROWS_AS(net::parseUrl("ftp://x"), PreconditionFailed);
    CHECK(net::base64("hello") == "aGVsbG8=");
    CHECK(net::urlEncode("a b&c") == "a%20b%26c");
}
