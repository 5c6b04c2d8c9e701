#include "lecturekit/session/events.hpp"

#include "lecturekit/common/time.hpp"

namespace lecturekit::session
{

const char* toString(EventKind kind)
{
    switch (kind)
    {
    case EventKind::OverlayShow:
        return "overlayShow";
    case EventKind::OverlayHide:
        return "overlayHide";
    case EventKind::SpeechStatus:
        return "speechStatus";
    case EventKind::HighlightSet:
        return "highlightSet";
    case EventKind::QuizPrompt:
        return "quizPrompt";
    case EventKind::ExamplePrompt:
        return "examplePrompt";
    case EventKind::Resume:
        return "resume";
    case EventKind::BreakStart:
        return "breakStart";
    case EventKind::BreakEnd:
        return "breakEnd";
    }
    return "resume";
}

nlohmann::json toJson(const SessionEvent& event)
{
    return {{"seq", event.seq}, {"kind", toString(event.kind)}, {"payload", event.payload},
            {"atSec", roundMillis(event.atSec)}};
}

} // namespace lecturekit::session
