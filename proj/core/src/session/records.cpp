#include "lecturekit/session/records.hpp"

#include "lecturekit/common/time.hpp"
#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/content/errors.hpp"

#include <fstream>

namespace lecturekit::session
{

using nlohmann::json;

const char* toString(RecordKind kind)
{
    switch (kind)
    {
    case RecordKind::Question:
        return "question";
    case RecordKind::VisualRequest:
        return "visualRequest";
    case RecordKind::QuizAnswer:
        return "quizAnswer";
    case RecordKind::BreakTaken:
        return "breakTaken";
    case RecordKind::ExampleOpened:
        return "exampleOpened";
    case RecordKind::Note:
        return "note";
    }
    return "note";
}

std::optional<RecordKind> parseRecordKind(const std::string& s)
{
    for (auto k : {RecordKind::Question, RecordKind::VisualRequest, RecordKind::QuizAnswer, RecordKind::BreakTaken,
                   RecordKind::ExampleOpened, RecordKind::Note})
        if (s == toString(k))
            return k;
    return std::nullopt;
}

json toJson(const InteractionRecord& r)
{
    json j = {{"kind", toString(r.kind)},
              {"sectionId", r.sectionId},
              {"wallClock", r.wallClock},
              {"timestampSec", roundMillis(r.timestampSec)},
              {"extra", r.extra}};
    if (r.selectedArea)
        j["selectedArea"] = content::rectToJson(*r.selectedArea);
    if (r.prompt)
        j["prompt"] = *r.prompt;
    if (r.response)
        j["response"] = *r.response;
    return j;
}

InteractionRecord recordFromJson(const json& j)
{
    const std::string field = "record";
    if (!j.is_object())
        throw content::SchemaViolation(field, "expected object");
    try
    {
        InteractionRecord r;
        auto kind = parseRecordKind(j.at("kind").get<std::string>());
        if (!kind)
            throw content::SchemaViolation(field + ".kind", "unknown record kind");
        r.kind = *kind;
        r.sectionId = j.at("sectionId").get<std::string>();
        r.wallClock = j.at("wallClock").get<std::string>();
        r.timestampSec = j.at("timestampSec").get<double>();
        if (j.contains("selectedArea"))
            r.selectedArea = content::rectFromJson(j["selectedArea"], field + ".selectedArea");
        if (j.contains("prompt"))
            r.prompt = j["prompt"].get<std::string>();
        if (j.contains("response"))
            r.response = j["response"].get<std::string>();
        if (j.contains("extra"))
            r.extra = j["extra"].get<std::map<std::string, std::string>>();
        return r;
    }
    catch (const json::exception& e)
    {
        throw content::SchemaViolation(field, e.what());
    }
}

void appendRecord(const std::filesystem::path& file, const InteractionRecord& record)
{
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::app | std::ios::binary);
    if (!out)
        throw content::IoError("cannot append to " + file.string());
    out << toJson(record).dump() << '\n';
    out.flush();
}

std::vector<InteractionRecord> readLog(const std::filesystem::path& file)
{
    std::vector<InteractionRecord> out;
    std::ifstream in(file, std::ios::binary);
    if (!in)
        return out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
        {
            if (in.peek() == std::ifstream::traits_type::eof())
                break;
            throw content::SchemaViolation("log", "malformed line in " + file.string());
        }
        out.push_back(recordFromJson(j));
    }
    return out;
}

} // namespace lecturekit::session
