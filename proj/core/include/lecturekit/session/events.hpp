#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace lecturekit::session
{

enum class EventKind
{
    OverlayShow,
    OverlayHide,
    SpeechStatus,
    HighlightSet,
    QuizPrompt,
    ExamplePrompt,
    Resume,
    BreakStart,
    BreakEnd,
};

const char* toString(EventKind kind);

struct SessionEvent
{
    std::uint64_t seq{0};
    EventKind kind{EventKind::Resume};
    nlohmann::json payload = nlohmann::json::object();
    /// Session clock time the event belongs to.
    double atSec{0.0};
};

nlohmann::json toJson(const SessionEvent& event);

} // namespace lecturekit::session
