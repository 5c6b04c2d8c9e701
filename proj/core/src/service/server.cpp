#include "lecturekit/service/server.hpp"

#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/content/errors.hpp"
#include "lecturekit/gateway/http_provider.hpp"
#include "lecturekit/gateway/mock_provider.hpp"
#include "lecturekit/service/api_error.hpp"
#include "lecturekit/summary/summary.hpp"

#include <httplib.h>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace lecturekit::service
{

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<RouteInfo>& routeTable()
{
    static const std::vector<RouteInfo> table = {
        {"GET", "/health"},
        {"GET", "/lectures"},
        {"GET", "/lectures/{id}/manifest"},
        {"GET", "/lectures/{id}/sections/{n}/slide.png"},
        {"GET", "/lectures/{id}/video"},
        {"GET", "/lectures/{id}/examples/{file}"},
        {"POST", "/sessions"},
        {"GET", "/sessions/{id}"},
        {"POST", "/sessions/{id}/clarify"},
        {"POST", "/sessions/{id}/clarify-replay"},
        {"POST", "/sessions/{id}/visual"},
        {"POST", "/sessions/{id}/visual/dismiss"},
        {"POST", "/sessions/{id}/quiz/next"},
        {"POST", "/sessions/{id}/quiz/answer"},
        {"POST", "/sessions/{id}/difficulty"},
        {"POST", "/sessions/{id}/break"},
        {"POST", "/sessions/{id}/highlight"},
        {"POST", "/sessions/{id}/position"},
        {"POST", "/sessions/{id}/example/open"},
        {"POST", "/sessions/{id}/example/close"},
        {"POST", "/sessions/{id}/summary/open"},
        {"POST", "/sessions/{id}/summary/close"},
        {"POST", "/sessions/{id}/note"},
        {"GET", "/sessions/{id}/summary"},
        {"GET", "/sessions/{id}/events"},
    };
    return table;
}

namespace
{

class ValidationError : public Error
{
  public:
    explicit ValidationError(const std::string& what) : Error("ValidationError", what) {}
};

json parseBody(const httplib::Request& req)
{
    if (req.body.empty())
        return json::object();
    json j = json::parse(req.body, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("request body is not valid JSON");
    if (!j.is_object())
        throw ValidationError("request body must be a JSON object");
    return j;
}

template <typename T>
std::optional<T> optionalField(const json& body, const char* name)
{
    if (!body.contains(name) || body[name].is_null())
        return std::nullopt;
    try
    {
        return body[name].get<T>();
    }
    catch (const json::exception&)
    {
        throw ValidationError(std::string("field '") + name + "' has the wrong type");
    }
}

template <typename T>
T requiredField(const json& body, const char* name)
{
    auto v = optionalField<T>(body, name);
    if (!v)
        throw ValidationError(std::string("field '") + name + "' is required");
    return *v;
}

/// Integer fields must be whole numbers; 2.5 minutes is a validation error, not 2.
int requiredInt(const json& body, const char* name)
{
    if (!body.contains(name) || !body[name].is_number())
        throw ValidationError(std::string("field '") + name + "' must be a number");
    double v = body[name].get<double>();
    if (v != std::floor(v) || std::fabs(v) > 1e9)
        throw ValidationError(std::string("field '") + name + "' must be a whole number");
    return static_cast<int>(v);
}

std::optional<content::Rect> optionalRect(const json& body, const char* name)
{
    if (!body.contains(name) || body[name].is_null())
        return std::nullopt;
    return content::rectFromJson(body[name], name);
}

json planJson(const layout::OverlayPlan& plan)
{
    return {{"region", content::rectToJson(plan.region.rect)},
            {"cellCount", plan.region.cellCount},
            {"estimatedCapacityChars", plan.estimatedCapacityChars},
            {"scrollable", plan.scrollable},
            {"fontScale", plan.fontScale},
            {"modal", plan.modal}};
}

json speechJson(const media::SpeechJob& job)
{
    return {{"jobId", job.id},
            {"status", media::toString(job.status)},
            {"estimatedDurationSec", roundMillis(job.estimatedDurationSec)},
            {"degraded", job.degraded}};
}

json quizJson(const session::ServedQuiz& q)
{
    return {{"sectionId", q.sectionId},
            {"level", q.level},
            {"fallback", q.fallback},
            {"type", content::toString(q.item.type)},
            {"question", q.item.question},
            {"options", q.item.options},
            {"difficulty", q.item.difficulty}};
}

json exampleJson(const content::ExampleAsset& e)
{
    return {{"sectionId", e.sectionId}, {"triggerSec", e.triggerSec}, {"htmlRef", e.htmlRef}, {"title", e.title}};
}

std::string readFile(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw NotFound("file not found");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sseFrame(const session::SessionEvent& e)
{
    return "id: " + std::to_string(e.seq) + "\nevent: " + session::toString(e.kind) +
           "\ndata: " + session::toJson(e).dump() + "\n\n";
}

} // namespace

struct Server::Impl
{
    struct BundleEntry
    {
        std::shared_ptr<const content::LectureBundle> bundle;
        fs::path root;
    };

    struct Slot
    {
        std::mutex mutex;
        std::condition_variable cv;
        std::unique_ptr<session::Session> session;
        fs::path root;
    };

    ServerOptions options;
    httplib::Server http;
    std::map<std::string, BundleEntry> bundles;
    std::mutex sessionsMutex;
    std::map<std::string, std::shared_ptr<Slot>> sessions;
    std::uint64_t nextSession{1};
    session::SessionServices sharedServices;
    fs::path sessionDir;
    std::atomic<bool> stopping{false};
    std::thread listener;
    std::thread ticker;
    int boundPort{0};

    explicit Impl(ServerOptions opts) : options(std::move(opts))
    {
        if (!(options.timeScale > 0.0))
            throw PreconditionFailed("time scale must be positive");
        sessionDir = options.sessionDir.value_or(options.bundleDir / ".sessions");
        loadBundles();
        sharedServices = options.services ? options.services() : defaultServices();
        restoreSessions();
        routes();
    }

    session::SessionServices defaultServices() const
    {
        session::SessionServices s;
        s.gateway = std::make_shared<gateway::Gateway>(gateway::providerFromEnvironment(options.mock));
        s.speech = media::speechBackendFromEnvironment(options.mock);
        s.images = media::imageSearchFromEnvironment(options.mock);
        return s;
    }

    void loadBundles()
    {
        if (!fs::is_directory(options.bundleDir))
            throw PreconditionFailed("bundle directory " + options.bundleDir.string() + " does not exist");
        std::vector<fs::path> candidates;
        if (fs::exists(options.bundleDir / content::kManifestFile))
            candidates.push_back(options.bundleDir);
        for (const auto& entry : fs::directory_iterator(options.bundleDir))
            if (entry.is_directory() && fs::exists(entry.path() / content::kManifestFile))
                candidates.push_back(entry.path());
        std::sort(candidates.begin(), candidates.end());
        for (const auto& dir : candidates)
        {
            try
            {
                auto b = std::make_shared<content::LectureBundle>(content::loadBundle(dir));
                if (bundles.count(b->id))
                {
                    std::cerr << "skipping " << dir << ": duplicate bundle id " << b->id << "\n";
                    continue;
                }
                bundles[b->id] = BundleEntry{b, dir};
            }
            catch (const std::exception& e)
            {
                std::cerr << "skipping " << dir << ": " << e.what() << "\n";
            }
        }
    }

    const BundleEntry& bundle(const std::string& id) const
    {
        auto it = bundles.find(id);
        if (it == bundles.end())
            throw NotFound("unknown lecture " + id);
        return it->second;
    }

    // ---- sessions ----------------------------------------------------------

    fs::path metaPath(const std::string& id) const
    {
        return sessionDir / (id + ".json");
    }
    fs::path logPath(const std::string& id) const
    {
        return sessionDir / (id + ".jsonl");
    }

    void writeMeta(const session::Session& s) const
    {
        fs::create_directories(sessionDir);
        json meta = {{"sessionId", s.id()},
                     {"bundleId", s.bundle().id},
                     {"interests", s.interests()},
                     {"difficulty", s.difficulty()},
                     {"highlightEnabled", s.highlightEnabled()}};
        std::ofstream out(metaPath(s.id()), std::ios::binary | std::ios::trunc);
        out << meta.dump(2) << "\n";
    }

    std::shared_ptr<Slot> makeSlot(const std::string& id, const BundleEntry& entry, std::vector<std::string> interests,
                                   int difficulty, bool highlight)
    {
        session::SessionConfig config;
        config.sessionId = id;
        config.interests = std::move(interests);
        config.difficulty = difficulty;
        config.highlightEnabled = highlight;
        config.wallClock = options.wallClock;
        config.scratchDir = sessionDir / "crops";
        fs::path log = logPath(id);
        config.onRecord = [log](const session::InteractionRecord& r) { session::appendRecord(log, r); };
        auto slot = std::make_shared<Slot>();
        slot->root = entry.root;
        slot->session = std::make_unique<session::Session>(entry.bundle, entry.root, std::move(config), sharedServices);
        return slot;
    }

    void restoreSessions()
    {
        if (!fs::is_directory(sessionDir))
            return;
        for (const auto& entry : fs::directory_iterator(sessionDir))
        {
            if (entry.path().extension() != ".json")
                continue;
            try
            {
                json meta = json::parse(readFile(entry.path()));
                std::string id = meta.at("sessionId").get<std::string>();
                auto b = bundles.find(meta.at("bundleId").get<std::string>());
                if (b == bundles.end())
                    continue;
                auto slot = makeSlot(id, b->second, meta.value("interests", std::vector<std::string>{}),
                                     meta.value("difficulty", session::kDefaultDifficulty),
                                     meta.value("highlightEnabled", true));
                slot->session->restoreLog(session::readLog(logPath(id)));
                sessions[id] = slot;
                if (id.rfind("session-", 0) == 0)
                    nextSession = std::max<std::uint64_t>(nextSession, std::stoull(id.substr(8)) + 1);
            }
            catch (const std::exception& e)
            {
                std::cerr << "cannot restore " << entry.path() << ": " << e.what() << "\n";
            }
        }
    }

    std::shared_ptr<Slot> slot(const std::string& id)
    {
        std::lock_guard lock(sessionsMutex);
        auto it = sessions.find(id);
        if (it == sessions.end())
            throw NotFound("unknown session " + id);
        return it->second;
    }

    /// Runs `fn` under the session's single-writer lock and wakes event streams.
    template <typename Fn>
    json withSession(const std::string& id, Fn&& fn)
    {
        auto s = slot(id);
        json out;
        {
            std::lock_guard lock(s->mutex);
            out = fn(*s->session);
        }
        s->cv.notify_all();
        return out;
    }

    // ---- routing -----------------------------------------------------------

    using Handler = std::function<json(const httplib::Request&, httplib::Response&)>;

    void reply(httplib::Response& res, int status, const json& body)
    {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    httplib::Server::Handler wrap(Handler fn, int okStatus = 200)
    {
        return [this, fn = std::move(fn), okStatus](const httplib::Request& req, httplib::Response& res) {
            try
            {
                json body = fn(req, res);
                if (!body.is_null())
                    reply(res, okStatus, body);
            }
            catch (const std::exception& e)
            {
                ApiError err = toApiError(e);
                reply(res, err.httpStatus, toJson(err));
            }
        };
    }

    void sessionPost(const char* suffix, std::function<json(session::Session&, const json&)> fn)
    {
        std::string pattern = std::string(R"(/sessions/([^/]+)/)") + suffix;
        http.Post(pattern, wrap([this, fn](const httplib::Request& req, httplib::Response&) {
            json body = parseBody(req);
            return withSession(req.matches[1], [&](session::Session& s) { return fn(s, body); });
        }));
    }

    void routes()
    {
        http.set_default_headers({{"Access-Control-Allow-Origin", options.corsOrigin},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
        http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

        http.Get("/health", wrap([](const auto&, auto&) { return json{{"status", "ok"}}; }));

        http.Get("/lectures", wrap([this](const auto&, auto&) {
            json out = json::array();
            for (const auto& [id, entry] : bundles)
                out.push_back({{"id", id},
                               {"title", entry.bundle->title},
                               {"durationSec", entry.bundle->durationSec},
                               {"sectionCount", entry.bundle->sections.size()}});
            return out;
        }));

        http.Get(R"(/lectures/([^/]+)/manifest)", wrap([this](const httplib::Request& req, auto&) {
            return content::manifestJson(*bundle(req.matches[1]).bundle);
        }));

        http.Get(R"(/lectures/([^/]+)/sections/([^/]+)/slide\.png)",
                 wrap([this](const httplib::Request& req, httplib::Response& res) -> json {
                     const auto& entry = bundle(req.matches[1]);
                     std::string key = req.matches[2];
                     const content::Section* section = entry.bundle->findSection(key);
                     if (!section && !key.empty() && std::all_of(key.begin(), key.end(), ::isdigit))
                     {
                         std::size_t n = std::stoul(key);
                         if (n < entry.bundle->sections.size())
                             section = &entry.bundle->sections[n];
                     }
                     if (!section)
                         throw NotFound("unknown section " + key);
                     res.set_content(readFile(entry.root / section->slideImageRef), "image/png");
                     return nullptr;
                 }));

        http.Get(R"(/lectures/([^/]+)/video)", wrap([this](const httplib::Request& req, httplib::Response& res) -> json {
                     const auto& entry = bundle(req.matches[1]);
                     res.set_content(readFile(entry.root / entry.bundle->videoRef), "application/octet-stream");
                     return nullptr;
                 }));

        http.Get(R"(/lectures/([^/]+)/examples/([^/]+))",
                 wrap([this](const httplib::Request& req, httplib::Response& res) -> json {
                     const auto& entry = bundle(req.matches[1]);
                     std::string ref = "examples/" + std::string(req.matches[2]);
                     bool known = std::any_of(entry.bundle->examples.begin(), entry.bundle->examples.end(),
                                              [&](const auto& e) { return e.htmlRef == ref; });
                     if (!known)
                         throw NotFound("unknown example " + ref);
                     res.set_content(readFile(entry.root / ref), "text/html; charset=utf-8");
                     return nullptr;
                 }));

        http.Post("/sessions", wrap(
                                   [this](const httplib::Request& req, auto&) {
                                       json body = parseBody(req);
                                       const auto& entry = bundle(requiredField<std::string>(body, "bundleId"));
                                       auto interests =
                                           optionalField<std::vector<std::string>>(body, "interests").value_or(
                                               std::vector<std::string>{});
                                       int difficulty = body.contains("difficulty") ? requiredInt(body, "difficulty")
                                                                                    : session::kDefaultDifficulty;
                                       if (difficulty < 1 || difficulty > 5)
                                           throw ValidationError("difficulty must be within 1..5");
                                       std::shared_ptr<Slot> s;
                                       {
                                           std::lock_guard lock(sessionsMutex);
                                           std::string id = "session-" + std::to_string(nextSession++);
                                           s = makeSlot(id, entry, interests, difficulty, true);
                                           sessions[id] = s;
                                       }
                                       std::lock_guard lock(s->mutex);
                                       writeMeta(*s->session);
                                       return s->session->snapshot();
                                   },
                                   201));

        http.Get(R"(/sessions/([^/]+))", wrap([this](const httplib::Request& req, auto&) {
            return withSession(req.matches[1], [](session::Session& s) { return s.snapshot(); });
        }));

        sessionPost("clarify", [](session::Session& s, const json& body) {
            auto r = s.askClarification(optionalRect(body, "areaRect"), optionalField<std::string>(body, "question"));
            json out = {{"responseText", r.responseText},
                        {"mode", session::toString(r.mode)},
                        {"plan", planJson(r.plan)},
                        {"speech", speechJson(r.speech)},
                        {"lengthViolation", r.lengthViolation}};
            if (r.providerError)
                out["providerError"] = *r.providerError;
            return out;
        });

        sessionPost("clarify-replay", [](session::Session& s, const json& body) {
            int ref = requiredInt(body, "recordRef");
            if (ref < 0)
                throw ValidationError("recordRef must be >= 0");
            return json{{"speech", speechJson(s.replay(static_cast<std::size_t>(ref)))}};
        });

        sessionPost("visual", [](session::Session& s, const json& body) {
            auto area = optionalRect(body, "areaRect");
            if (!area)
                throw ValidationError("field 'areaRect' is required");
            auto r = s.requestVisual(*area);
            json results = json::array();
            for (const auto& img : r.results)
                results.push_back(
                    {{"url", img.url}, {"title", img.title}, {"sourceDomain", img.sourceDomain}, {"thumbUrl", img.thumbUrl}});
            json out = {{"keywords", r.keywords}, {"results", results}, {"mode", session::toString(s.mode())}};
            if (r.notice)
                out["notice"] = *r.notice;
            return out;
        });

        sessionPost("visual/dismiss", [](session::Session& s, const json&) {
            s.dismissVisual();
            return json{{"mode", session::toString(s.mode())}};
        });

        sessionPost("quiz/next", [](session::Session& s, const json& body) {
            return quizJson(s.serveQuiz(optionalField<std::string>(body, "sectionId")));
        });

        sessionPost("quiz/answer", [](session::Session& s, const json& body) {
            auto r = s.answerQuiz(requiredField<std::string>(body, "answer"));
            return json{{"correct", r.correct}, {"explanation", r.explanation}, {"correctAnswer", r.correctAnswer}};
        });

        sessionPost("difficulty", [this](session::Session& s, const json& body) {
            s.setDifficulty(requiredInt(body, "level"));
            writeMeta(s);
            return json{{"difficulty", s.difficulty()}};
        });

        sessionPost("break", [](session::Session& s, const json& body) {
            int minutes = requiredInt(body, "minutes");
            auto r = s.startBreak(minutes);
            return json{{"story", r.story},
                        {"minutes", r.minutes},
                        {"wordCount", r.wordCount},
                        {"speech", speechJson(r.speech)},
                        {"endsNoEarlierThanSec", roundMillis(r.endsNoEarlierThanSec)}};
        });

        sessionPost("highlight", [this](session::Session& s, const json& body) {
            s.setHighlightEnabled(requiredField<bool>(body, "enabled"));
            writeMeta(s);
            return json{{"enabled", s.highlightEnabled()}};
        });

        sessionPost("position", [](session::Session& s, const json& body) {
            if (!body.contains("tSec") || !body["tSec"].is_number())
                throw ValidationError("field 'tSec' must be a number");
            auto r = s.setPosition(body["tSec"].get<double>());
            json highlights = json::array();
            for (const auto& h : s.activeHighlights(s.positionSec()))
                highlights.push_back({{"box", content::rectToJson(h.box)}, {"relevantTranscript", h.relevantTranscript}});
            json out = {{"positionSec", roundMillis(r.positionSec)},
                        {"mode", session::toString(s.mode())},
                        {"highlights", highlights}};
            if (r.quiz)
                out["quiz"] = quizJson(*r.quiz);
            if (r.example)
                out["example"] = exampleJson(*r.example);
            return out;
        });

        sessionPost("example/open", [](session::Session& s, const json& body) {
            return exampleJson(s.openExample(optionalField<std::string>(body, "htmlRef")));
        });
        sessionPost("example/close", [](session::Session& s, const json&) {
            s.closeExample();
            return json{{"mode", session::toString(s.mode())}};
        });
        sessionPost("summary/open", [](session::Session& s, const json&) {
            s.openSummary();
            return json{{"mode", session::toString(s.mode())}};
        });
        sessionPost("summary/close", [](session::Session& s, const json&) {
            s.closeSummary();
            return json{{"mode", session::toString(s.mode())}};
        });
        sessionPost("note", [](session::Session& s, const json& body) {
            s.addNote(requiredField<std::string>(body, "text"), optionalRect(body, "areaRect"));
            return json{{"logSize", s.log().size()}};
        });

        http.Get(R"(/sessions/([^/]+)/summary)", wrap([this](const httplib::Request& req, auto&) {
            return withSession(req.matches[1], [](session::Session& s) {
                return summary::toJson(summary::compileSummary(s.id(), s.log(), s.bundle()));
            });
        }));

        http.Get(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
            std::shared_ptr<Slot> s;
            std::uint64_t since = 0;
            bool follow = true;
            try
            {
                s = slot(req.matches[1]);
                if (req.has_param("since"))
                    since = std::stoull(req.get_param_value("since"));
                else if (req.has_header("Last-Event-ID"))
                    since = std::stoull(req.get_header_value("Last-Event-ID"));
                if (req.has_param("follow"))
                    follow = req.get_param_value("follow") != "0";
            }
            catch (const Error& e)
            {
                ApiError err = toApiError(e);
                reply(res, err.httpStatus, toJson(err));
                return;
            }
            catch (const std::exception&)
            {
                reply(res, 400, toJson(ApiError{"ValidationError", 400, "since must be a non-negative integer", {}}));
                return;
            }

            res.set_header("Cache-Control", "no-cache");
            if (!follow)
            {
                std::string out;
                std::lock_guard lock(s->mutex);
                for (const auto& e : s->session->events())
                    if (e.seq > since)
                        out += sseFrame(e);
                res.set_content(out, "text/event-stream");
                return;
            }
            auto cursor = std::make_shared<std::uint64_t>(since);
            res.set_chunked_content_provider(
                "text/event-stream", [this, s, cursor](std::size_t, httplib::DataSink& sink) {
                    std::string out;
                    {
                        std::unique_lock lock(s->mutex);
                        s->cv.wait_for(lock, std::chrono::milliseconds(250), [&] {
                            return stopping.load() || s->session->lastSeq() > *cursor;
                        });
                        for (const auto& e : s->session->events())
                            if (e.seq > *cursor)
                                out += sseFrame(e);
                        *cursor = s->session->lastSeq();
                    }
                    if (stopping.load())
                    {
                        sink.done();
                        return true;
                    }
                    if (out.empty())
                        out = ": keep-alive\n\n";
                    return sink.write(out.data(), out.size());
                });
        });
    }

    void tick()
    {
        auto last = std::chrono::steady_clock::now();
        while (!stopping.load())
        {
            std::this_thread::sleep_for(std::chrono::milliseconds(options.tickMs));
            auto now = std::chrono::steady_clock::now();
            double dt = std::chrono::duration<double>(now - last).count() * options.timeScale;
            last = now;
            std::vector<std::shared_ptr<Slot>> all;
            {
                std::lock_guard lock(sessionsMutex);
                for (const auto& [id, s] : sessions)
                    all.push_back(s);
            }
            for (const auto& s : all)
            {
                bool changed = false;
                {
                    std::lock_guard lock(s->mutex);
                    auto before = s->session->lastSeq();
                    s->session->advance(dt);
                    changed = s->session->lastSeq() != before;
                }
                if (changed)
                    s->cv.notify_all();
            }
        }
    }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server()
{
    stop();
}

int Server::start()
{
    Impl& im = *impl_;
    if (im.options.port == 0)
        im.boundPort = im.http.bind_to_any_port(im.options.host);
    else
        im.boundPort = im.http.bind_to_port(im.options.host, im.options.port) ? im.options.port : -1;
    if (im.boundPort <= 0)
        throw Error("BindFailed", "cannot bind " + im.options.host + ":" + std::to_string(im.options.port));
    im.listener = std::thread([&im] { im.http.listen_after_bind(); });
    im.ticker = std::thread([&im] { im.tick(); });
    im.http.wait_until_ready();
    return im.boundPort;
}

void Server::wait()
{
    if (impl_->listener.joinable())
        impl_->listener.join();
    if (impl_->ticker.joinable())
        impl_->ticker.join();
}

void Server::stop()
{
    if (!impl_)
        return;
    Impl& im = *impl_;
    if (im.stopping.exchange(true))
    {
        wait();
        return;
    }
    {
        std::lock_guard lock(im.sessionsMutex);
        for (const auto& [id, s] : im.sessions)
            s->cv.notify_all();
    }
    im.http.stop();
    wait();
}

int Server::port() const
{
    return impl_->boundPort;
}

std::size_t Server::bundleCount() const
{
    return impl_->bundles.size();
}

} // namespace lecturekit::service
