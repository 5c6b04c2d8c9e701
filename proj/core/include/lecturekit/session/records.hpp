#pragma once

#include "lecturekit/content/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::session
{

enum class RecordKind
{
    Question,
    VisualRequest,
    QuizAnswer,
    BreakTaken,
    ExampleOpened,
    Note,
};

const char* toString(RecordKind kind);
std::optional<RecordKind> parseRecordKind(const std::string& s);

struct InteractionRecord
{
    RecordKind kind{RecordKind::Note};
    std::string sectionId;
    /// ISO-8601 UTC wall-clock time of the interaction.
    std::string wallClock;
    /// Video position when the interaction happened.
    double timestampSec{0.0};
    std::optional<content::Rect> selectedArea;
    std::optional<std::string> prompt;
    std::optional<std::string> response;
    std::map<std::string, std::string> extra;

    bool operator==(const InteractionRecord&) const = default;
};

nlohmann::json toJson(const InteractionRecord& record);
/// Throws content::SchemaViolation on malformed input.
InteractionRecord recordFromJson(const nlohmann::json& j);

/// One JSON object per line, appended and flushed per record.
void appendRecord(const std::filesystem::path& file, const InteractionRecord& record);
/// Missing file reads as an empty log; a torn final line is ignored.
std::vector<InteractionRecord> readLog(const std::filesystem::path& file);

} // namespace lecturekit::session
