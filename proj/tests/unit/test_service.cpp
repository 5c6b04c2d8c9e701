#include "fixtures.hpp"

#include "lecturekit/common/net.hpp"
#include "lecturekit/content/errors.hpp"
#include "lecturekit/gateway/gateway.hpp"
#include "lecturekit/service/api_error.hpp"
#include "lecturekit/service/server.hpp"

#include <doctest.h>
#include <httplib.h>

using namespace lecturekit;
using namespace lecturekit::service;
using nlohmann::json;
namespace lt = lecturekit::testing;

namespace
{

struct LiveServer
{
    lt::HandBundle hb = lt::buildHandBundle();
    lt::TempDir sessions{"sessions"};
    std::unique_ptr<Server> server;
    std::unique_ptr<httplib::Client> client;

    LiveServer()
    {
        ServerOptions o;
        o.bundleDir = hb.root;
        o.mock = true;
        o.sessionDir = sessions.path();
        o.timeScale = 100.0;
        o.wallClock = [] { return lt::fixedClock(); };
        server = std::make_unique<Server>(o);
        int port = server->start();
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
        client->set_read_timeout(10, 0);
    }

    std::pair<int, json> post(const std::string& path, const json& body = json::object())
    {
        auto r = client->Post(path, body.dump(), "application/json");
        REQUIRE(r);
        return {r->status, r->body.empty() ? json() : json::parse(r->body)};
    }

    std::pair<int, json> get(const std::string& path)
    {
        auto r = client->Get(path);
        REQUIRE(r);
        json body;
        if (r->get_header_value("Content-Type").rfind("application/json", 0) == 0)
            body = json::parse(r->body);
        return {r->status, body};
    }
};

} // namespace

TEST_CASE("error codes map onto http statuses")
{
    CHECK(httpStatusFor("ValidationError") == 400);
    CHECK(httpStatusFor("PreconditionFailed") == 400);
    CHECK(httpStatusFor("NotFound") == 404);
    CHECK(httpStatusFor("IllegalTransition") == 409);
    CHECK(httpStatusFor("ProviderUnavailable") == 502);
    CHECK(httpStatusFor("Whatever") == 500);

    auto sv = toApiError(content::SchemaViolation("options", "must have 4 entries"));
    CHECK(sv.httpStatus == 400);
    REQUIRE(sv.detail.has_value());
    CHECK(sv.detail->at("field") == "options");

    auto plain = toApiError(std::runtime_error("boom"));
    CHECK(plain.code == "Internal");
    CHECK(plain.httpStatus == 500);
    CHECK(toJson(plain)["error"]["message"] == "boom");
}

TEST_CASE("every declared route is unique")
{
    std::set<std::string> seen;
    for (const auto& r : routeTable())
        CHECK(seen.insert(r.method + " " + r.path).second);
    CHECK(routeTable().size() >= 20);
}

TEST_CASE("server: lectures, sessions and error statuses")
{
    LiveServer live;
    CHECK(live.server->bundleCount() == 1);
    auto before = net::egressCount();

    auto [hs, health] = live.get("/health");
    CHECK(hs == 200);
    CHECK(health["status"] == "ok");

    auto [ls, lectures] = live.get("/lectures");
    REQUIRE(ls == 200);
    REQUIRE(lectures.size() == 1);
    CHECK(lectures[0]["id"] == "physics-101");

    CHECK(live.get("/lectures/nope/manifest").first == 404);
    CHECK(live.get("/lectures/physics-101/manifest").second["sections"].size() == 3);
    auto png = live.client->Get("/lectures/physics-101/sections/s001/slide.png");
    REQUIRE(png);
    CHECK(png->status == 200);
    CHECK(png->body.substr(1, 3) == "PNG");
    CHECK(live.get("/lectures/physics-101/sections/9/slide.png").first == 404);
    CHECK(live.get("/lectures/physics-101/examples/forces.html").first == 200);
    CHECK(live.get("/lectures/physics-101/examples/secret.html").first == 404);

    auto [cs, snap] = live.post("/sessions", {{"bundleId", "physics-101"}, {"interests", {"football"}}});
    REQUIRE(cs == 201);
    std::string id = snap["sessionId"];
    CHECK(snap["mode"] == "Playing");
    CHECK(snap["difficulty"] == 3);
    std::string base = "/sessions/" + id;

    CHECK(live.post("/sessions", {{"bundleId", "nope"}}).first == 404);
    CHECK(live.post("/sessions", {{"bundleId", "physics-101"}, {"difficulty", 9}}).first == 400);
    CHECK(live.get("/sessions/session-999").first == 404);

    auto [bs, badBreak] = live.post(base + "/break", {{"minutes", 2}});
    CHECK(bs == 400);
    CHECK(badBreak["error"]["code"] == "PreconditionFailed");
    CHECK(live.post(base + "/break", {{"minutes", 2.5}}).first == 400);
    CHECK(live.post(base + "/quiz/answer", {{"answer", "x"}}).first == 409);
    CHECK(live.post(base + "/visual", json::object()).first == 400);

    auto r = live.client->Post(base + "/clarify", "{not json", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    auto [qs, quiz] = live.post(base + "/quiz/next", {{"sectionId", "s002"}});
    REQUIRE(qs == 200);
    CHECK(quiz["level"] == 3);
    CHECK_FALSE(quiz.contains("correctAnswer"));
    auto [as, answer] = live.post(base + "/quiz/answer", {{"answer", "nope"}});
    CHECK(as == 200);
    CHECK(answer.contains("correctAnswer"));

    auto [ns, note] = live.post(base + "/note", {{"text", "check units"}});
    CHECK(ns == 200);
    CHECK(note["logSize"] == 2);

    auto [ss, summary] = live.get(base + "/summary");
    CHECK(ss == 200);
    CHECK(summary["canvas"].size() == 2);

    auto events = live.client->Get(base + "/events?since=0&follow=0");
    REQUIRE(events);
    CHECK(events->status == 200);
    CHECK(events->get_header_value("Content-Type").find("text/event-stream") == 0);
    CHECK(events->body.find("event: quizPrompt") != std::string::npos);
    CHECK(live.get(base + "/events?since=abc&follow=0").first == 400);

    // CORS preflight.
    auto pre = live.client->Options(base + "/clarify");
    REQUIRE(pre);
    CHECK(pre->status == 204);
    CHECK(pre->get_header_value("Access-Control-Allow-Origin") == "*");

    CHECK(net::egressCount() == before);
    live.server->stop();
}

TEST_CASE("server: sessions survive a restart")
{
    lt::HandBundle hb = lt::buildHandBundle();
    lt::TempDir sessions("sessions");
    ServerOptions o;
    o.bundleDir = hb.root;
    o.mock = true;
    o.sessionDir = sessions.path();
    std::string id;
    {
        Server first(o);
        httplib::Client c("127.0.0.1", first.start());
        auto r = c.Post("/sessions", json{{"bundleId", "physics-101"}, {"difficulty", 4}}.dump(), "application/json");
        REQUIRE(r);
        id = json::parse(r->body)["sessionId"];
        REQUIRE(c.Post("/sessions/" + id + "/note", json{{"text", "kept"}}.dump(), "application/json"));
        first.stop();
    }
    Server second(o);
    httplib::Client c("127.0.0.1", second.start());
    auto r = c.Get("/sessions/" + id);
    REQUIRE(r);
    REQUIRE(r->status == 200);
    auto snap = json::parse(r->body);
    CHECK(snap["logSize"] == 1);
    CHECK(snap["difficulty"] == 4);
    second.stop();
}
