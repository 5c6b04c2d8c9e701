#include "lecturekit/content/bundle_io.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/common/time.hpp"
#include "lecturekit/content/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lecturekit::content
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr int kFormatVersion = 1;

// Strict accessors: every shape error becomes a SchemaViolation naming the field.

const json& require(const json& obj, const char* key, const std::string& field)
{
    if (!obj.is_object())
        throw SchemaViolation(field, "expected object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaViolation(field + "." + key, "missing");
    return *it;
}

std::string getString(const json& obj, const char* key, const std::string& field)
{
    const json& v = require(obj, key, field);
    if (!v.is_string())
        throw SchemaViolation(field + "." + key, "expected string");
    return v.get<std::string>();
}

double getNumber(const json& obj, const char* key, const std::string& field)
{
    const json& v = require(obj, key, field);
    if (!v.is_number())
        throw SchemaViolation(field + "." + key, "expected number");
    double d = v.get<double>();
    if (!std::isfinite(d))
        throw SchemaViolation(field + "." + key, "not finite");
    return d;
}

std::vector<std::string> stringList(const json& v, const std::string& field)
{
    if (!v.is_array())
        throw SchemaViolation(field, "expected array of strings");
    std::vector<std::string> out;
    for (const auto& e : v)
    {
        if (!e.is_string())
            throw SchemaViolation(field, "expected array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::string> getStringList(const json& obj, const char* key, const std::string& field)
{
    return stringList(require(obj, key, field), field + "." + key);
}

std::optional<std::vector<std::string>> optionalStringList(const json& obj, const char* key, const std::string& field)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    return stringList(*it, field + "." + key);
}

json readJsonFile(const fs::path& file, const std::string& field)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw DanglingReference(file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    json parsed = json::parse(ss.str(), nullptr, false);
    if (parsed.is_discarded())
        throw SchemaViolation(field, "malformed JSON");
    return parsed;
}

void writeFile(const fs::path& file, const std::string& body)
{
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + file.string());
    out << body;
    if (!out)
        throw IoError("write failed: " + file.string());
}

double ms(double t)
{
    return roundMillis(t);
}

TranscriptSegment segmentFromJson(const json& j, const std::string& field)
{
    TranscriptSegment s;
    s.startSec = getNumber(j, "startSec", field);
    s.endSec = getNumber(j, "endSec", field);
    s.text = getString(j, "text", field);
    return s;
}

HighlightEntry highlightFromJson(const json& j, const std::string& field)
{
    HighlightEntry h;
    h.box = rectFromJson(require(j, "box", field), field + ".box");
    h.relevantTranscript = getString(j, "relevantTranscript", field);
    bool hasStart = j.contains("startSec");
    bool hasEnd = j.contains("endSec");
    if (hasStart != hasEnd)
        throw SchemaViolation(field, "startSec and endSec must appear together");
    if (hasStart)
        h.span = TimeSpan{getNumber(j, "startSec", field), getNumber(j, "endSec", field)};
    return h;
}

QuizItem storedQuizItem(const json& j, int level, const std::string& field)
{
    try
    {
        return validateQuizItem(j, level);
    }
    catch (const SchemaViolation&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw SchemaViolation(field, e.what());
    }
}

DifficultyBank bankFromJson(const json& j, const std::string& field)
{
    if (!j.is_object())
        throw SchemaViolation(field, "expected object keyed by difficulty");
    DifficultyBank bank;
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string& key = it.key();
        if (key.size() != 1 || key[0] < '1' || key[0] > '5')
            throw SchemaViolation(field, "difficulty key '" + key + "' outside 1..5");
        int level = key[0] - '0';
        if (!it->is_array())
            throw SchemaViolation(field + "." + key, "expected array");
        auto& items = bank[level];
        for (std::size_t i = 0; i < it->size(); ++i)
            items.push_back(storedQuizItem((*it)[i], level, field + "." + key + "[" + std::to_string(i) + "]"));
    }
    return bank;
}

ExampleAsset exampleFromJson(const json& j, const std::string& field)
{
    ExampleAsset e;
    e.sectionId = getString(j, "sectionId", field);
    e.triggerSec = getNumber(j, "triggerSec", field);
    e.htmlRef = getString(j, "htmlRef", field);
    e.title = getString(j, "title", field);
    return e;
}

bool isSafeRelative(const std::string& ref)
{
    if (ref.empty())
        return false;
    fs::path p(ref);
    if (p.is_absolute())
        return false;
    for (const auto& part : p)
        if (part == "..")
            return false;
    return true;
}

void checkRef(const std::optional<fs::path>& root, const std::string& ref, const std::string& field)
{
    if (!isSafeRelative(ref))
        throw SchemaViolation(field, "reference must be a relative path inside the bundle");
    if (root && !fs::is_regular_file(*root / ref))
        throw DanglingReference(ref);
}

void validateQuizBank(const DifficultyBank& bank, const std::string& field)
{
    for (const auto& [level, items] : bank)
    {
        if (level < kMinDifficulty || level > kMaxDifficulty)
            throw SchemaViolation(field, "difficulty key outside 1..5");
        for (const auto& item : items)
        {
            if (item.difficulty != level)
                throw SchemaViolation(field, "item difficulty differs from its bank level");
            if (item.type == QuizType::MultipleChoice)
            {
                if (item.options.size() != 4)
                    throw SchemaViolation(field, "multiple-choice requires exactly 4 options");
                if (std::find(item.options.begin(), item.options.end(), item.correctAnswer) == item.options.end())
                    throw SchemaViolation(field, "correctAnswer not in options");
            }
            else if (!item.options.empty())
            {
                throw SchemaViolation(field, "options must be empty for " + std::string(toString(item.type)));
            }
        }
    }
}

void validateSection(const Section& s, const std::string& field, const std::optional<fs::path>& root)
{
    if (s.id.empty())
        throw SchemaViolation(field + ".id", "empty");
    if (!(s.startSec < s.endSec))
        throw SchemaViolation(field, "startSec must be < endSec");
    if (text::trim(s.contentFingerprint).empty())
        throw SchemaViolation(field + ".contentFingerprint", "empty");
    checkRef(root, s.slideImageRef, field + ".slideImage");
    if (s.boxReference.width <= 0 || s.boxReference.height <= 0)
        throw SchemaViolation(field + ".boxReference", "must be positive");

    double prevStart = -1.0;
    for (const auto& seg : s.transcript)
    {
        if (timeLess(seg.endSec, seg.startSec))
            throw SchemaViolation(field + ".transcript", "segment ends before it starts");
        if (text::trim(seg.text).empty())
            throw SchemaViolation(field + ".transcript", "empty segment text");
        if (timeLess(seg.startSec, prevStart))
            throw SchemaViolation(field + ".transcript", "segments not sorted");
        if (timeLess(seg.startSec, s.startSec) || timeLess(s.endSec, seg.endSec))
            throw SchemaViolation(field + ".transcript", "segment outside section");
        prevStart = seg.startSec;
    }

    validateQuizBank(s.quizzes, field + ".quizzes");

    for (const auto& h : s.highlights)
    {
        const Rect& b = h.box;
        if (!(b.x0 < b.x1) || !(b.y0 < b.y1))
            throw SchemaViolation(field + ".highlights", "degenerate box");
        if (b.x0 < 0.0 || b.y0 < 0.0 || b.x1 > 1.0 || b.y1 > 1.0)
            throw SchemaViolation(field + ".highlights", "box outside [0,1]");
        if (text::trim(h.relevantTranscript).empty() && h.span)
            throw SchemaViolation(field + ".highlights", "entry without transcript carries a time range");
        if (h.span)
        {
            if (timeLess(h.span->endSec, h.span->startSec))
                throw SchemaViolation(field + ".highlights", "time range reversed");
            if (timeLess(h.span->startSec, s.startSec) || timeLess(s.endSec, h.span->endSec))
                throw SchemaViolation(field + ".highlights", "time range outside section");
        }
    }
}

} // namespace

std::string sectionDir(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sections/%03zu", index);
    return buf;
}

std::string canonicalDump(const json& value)
{
    // nlohmann::json objects are std::map-backed, so keys are emitted sorted.
    return value.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

json rectToJson(const Rect& r)
{
    return json::array({r.x0, r.y0, r.x1, r.y1});
}

Rect rectFromJson(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 4)
        throw SchemaViolation(field, "expected [x0, y0, x1, y1]");
    double v[4];
    for (std::size_t i = 0; i < 4; ++i)
    {
        if (!j[i].is_number())
            throw SchemaViolation(field, "expected numbers");
        v[i] = j[i].get<double>();
        if (!std::isfinite(v[i]))
            throw SchemaViolation(field, "not finite");
    }
    if (v[0] < 0.0 || v[1] < 0.0 || v[2] > 1.0 || v[3] > 1.0 || v[0] >= v[2] || v[1] >= v[3])
        throw SchemaViolation(field, "must satisfy 0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1");
    return Rect{v[0], v[1], v[2], v[3]};
}

json toJson(const QuizItem& item)
{
    json j = {{"type", toString(item.type)},
              {"question", item.question},
              {"options", item.options},
              {"correctAnswer", item.correctAnswer},
              {"explanation", item.explanation},
              {"difficulty", item.difficulty}};
    if (!item.synonyms.empty())
        j["synonyms"] = item.synonyms;
    return j;
}

json toJson(const DifficultyBank& bank)
{
    json j = json::object();
    for (const auto& [level, items] : bank)
    {
        json arr = json::array();
        for (const auto& item : items)
            arr.push_back(toJson(item));
        j[std::to_string(level)] = std::move(arr);
    }
    return j;
}

json toJson(const HighlightEntry& entry)
{
    json j = {{"box", rectToJson(entry.box)}, {"relevantTranscript", entry.relevantTranscript}};
    if (entry.span)
    {
        j["startSec"] = ms(entry.span->startSec);
        j["endSec"] = ms(entry.span->endSec);
    }
    return j;
}

json toJson(const TranscriptSegment& segment)
{
    return {{"startSec", ms(segment.startSec)}, {"endSec", ms(segment.endSec)}, {"text", segment.text}};
}

json toJson(const ExampleAsset& asset)
{
    return {{"sectionId", asset.sectionId},
            {"triggerSec", ms(asset.triggerSec)},
            {"htmlRef", asset.htmlRef},
            {"title", asset.title}};
}

json manifestJson(const LectureBundle& bundle)
{
    json sections = json::array();
    for (std::size_t i = 0; i < bundle.sections.size(); ++i)
    {
        const auto& s = bundle.sections[i];
        sections.push_back({{"id", s.id},
                            {"dir", sectionDir(i)},
                            {"startSec", ms(s.startSec)},
                            {"endSec", ms(s.endSec)},
                            {"title", s.title},
                            {"slideImage", s.slideImageRef}});
    }
    json examples = json::array();
    for (const auto& e : bundle.examples)
        examples.push_back(toJson(e));
    return {{"formatVersion", kFormatVersion},
            {"id", bundle.id},
            {"title", bundle.title},
            {"videoRef", bundle.videoRef},
            {"durationSec", ms(bundle.durationSec)},
            {"createdAt", bundle.createdAt},
            {"sections", std::move(sections)},
            {"examples", std::move(examples)}};
}

json sectionContentJson(const Section& s)
{
    json transcript = json::array();
    for (const auto& seg : s.transcript)
        transcript.push_back(toJson(seg));
    json j = {{"title", s.title},
              {"mainConcepts", s.mainConcepts},
              {"keyPoints", s.keyPoints},
              {"description", s.description},
              {"contentFingerprint", s.contentFingerprint},
              {"boxReference", json::array({s.boxReference.width, s.boxReference.height})},
              {"transcript", std::move(transcript)}};
    if (s.equations)
        j["equations"] = *s.equations;
    if (s.diagrams)
        j["diagrams"] = *s.diagrams;
    return j;
}

std::optional<int> difficultyFromLabel(const std::string& label)
{
    std::string l = text::normalize(label);
    if (l.size() == 1 && l[0] >= '1' && l[0] <= '5')
        return l[0] - '0';
    if (l == "very easy")
        return 1;
    if (l == "easy")
        return 2;
    if (l == "medium")
        return 3;
    if (l == "hard")
        return 4;
    if (l == "very hard")
        return 5;
    return std::nullopt;
}

QuizItem validateQuizItem(const json& raw, std::optional<int> defaultDifficulty)
{
    if (!raw.is_object())
        throw SchemaViolation("quiz", "expected object");

    auto field = [&](const char* name) -> const json& {
        auto it = raw.find(name);
        if (it == raw.end() || it->is_null())
            throw MissingField(name);
        return *it;
    };
    auto stringField = [&](const char* name) {
        const json& v = field(name);
        if (!v.is_string())
            throw SchemaViolation(name, "expected string");
        return v.get<std::string>();
    };

    QuizItem item;
    std::string type = stringField("type");
    auto parsedType = parseQuizType(text::normalize(type));
    if (!parsedType)
        throw BadEnum("type", type);
    item.type = *parsedType;

    item.question = stringField("question");
    if (text::trim(item.question).empty())
        throw SchemaViolation("question", "empty");
    item.options = stringList(field("options"), "options");
    item.correctAnswer = text::trim(stringField("correctAnswer"));
    if (item.correctAnswer.empty())
        throw SchemaViolation("correctAnswer", "empty");
    item.explanation = stringField("explanation");

    auto diffIt = raw.find("difficulty");
    if (diffIt == raw.end() || diffIt->is_null())
    {
        if (!defaultDifficulty)
            throw MissingField("difficulty");
        item.difficulty = *defaultDifficulty;
    }
    else if (diffIt->is_number_integer() || diffIt->is_number_float())
    {
        double d = diffIt->get<double>();
        if (d != std::floor(d) || d < kMinDifficulty || d > kMaxDifficulty)
            throw BadEnum("difficulty", diffIt->dump());
        item.difficulty = static_cast<int>(d);
    }
    else if (diffIt->is_string())
    {
        auto level = difficultyFromLabel(diffIt->get<std::string>());
        if (!level)
            throw BadEnum("difficulty", diffIt->get<std::string>());
        item.difficulty = *level;
    }
    else
    {
        throw BadEnum("difficulty", diffIt->dump());
    }

    if (auto syn = raw.find("synonyms"); syn != raw.end() && !syn->is_null())
        item.synonyms = stringList(*syn, "synonyms");

    switch (item.type)
    {
    case QuizType::MultipleChoice: {
        if (item.options.size() != 4)
            throw SchemaViolation("options", "multiple-choice requires exactly 4 options");
        auto match = std::find_if(item.options.begin(), item.options.end(),
                                  [&](const std::string& o) { return text::trim(o) == item.correctAnswer; });
        if (match == item.options.end())
            throw AnswerNotInOptions(item.correctAnswer);
        item.correctAnswer = *match;
        break;
    }
    case QuizType::TrueFalse: {
        if (!item.options.empty())
            throw SchemaViolation("options", "true-false uses an empty options array");
        std::string answer = text::toLower(item.correctAnswer);
        if (answer != "true" && answer != "false")
            throw BadEnum("correctAnswer", item.correctAnswer);
        item.correctAnswer = answer == "true" ? "True" : "False";
        break;
    }
    case QuizType::FillBlank:
        if (!item.options.empty())
            throw SchemaViolation("options", "fill-blank uses an empty options array");
        break;
    }
    return item;
}

void validateBundle(const LectureBundle& bundle, const std::optional<fs::path>& root)
{
    if (bundle.id.empty())
        throw SchemaViolation("id", "empty");
    if (!(bundle.durationSec >= 0.0) || !std::isfinite(bundle.durationSec))
        throw SchemaViolation("durationSec", "must be >= 0");

    std::set<std::string> ids;
    for (std::size_t i = 0; i < bundle.sections.size(); ++i)
    {
        const auto& s = bundle.sections[i];
        std::string field = "sections[" + std::to_string(i) + "]";
        validateSection(s, field, root);
        if (!ids.insert(s.id).second)
            throw SchemaViolation("sections", "duplicate id " + s.id);
        if (i == 0)
        {
            if (!timeNear(s.startSec, 0.0))
                throw SchemaViolation("sections", "first section must start at 0");
        }
        else
        {
            const auto& prev = bundle.sections[i - 1];
            if (timeLess(s.startSec, prev.endSec))
                throw SchemaViolation("sections", "overlap");
            if (timeLess(prev.endSec, s.startSec))
                throw SchemaViolation("sections", "gap");
        }
    }
    if (!bundle.sections.empty() && !timeNear(bundle.sections.back().endSec, bundle.durationSec))
        throw SchemaViolation("sections", "last section must end at durationSec");

    for (std::size_t i = 0; i < bundle.examples.size(); ++i)
    {
        const auto& e = bundle.examples[i];
        std::string field = "examples[" + std::to_string(i) + "]";
        const Section* owner = bundle.findSection(e.sectionId);
        if (owner == nullptr)
            throw SchemaViolation(field + ".sectionId", "unknown section " + e.sectionId);
        if (timeLess(e.triggerSec, owner->startSec) || timeLess(owner->endSec, e.triggerSec))
            throw SchemaViolation(field + ".triggerSec", "outside owning section");
        checkRef(root, e.htmlRef, field + ".htmlRef");
    }
}

static LectureBundle loadBundleUnchecked(const fs::path& dir)
{
    fs::path manifestPath = dir / kManifestFile;
    std::error_code ec;
    if (!fs::is_regular_file(manifestPath, ec))
        throw MissingManifest(dir.string());

    json manifest = readJsonFile(manifestPath, "manifest");
    if (!manifest.is_object())
        throw SchemaViolation("manifest", "expected object");

    LectureBundle bundle;
    bundle.id = getString(manifest, "id", "manifest");
    bundle.title = getString(manifest, "title", "manifest");
    bundle.videoRef = getString(manifest, "videoRef", "manifest");
    bundle.durationSec = getNumber(manifest, "durationSec", "manifest");
    bundle.createdAt = getString(manifest, "createdAt", "manifest");

    const json& sections = require(manifest, "sections", "manifest");
    if (!sections.is_array())
        throw SchemaViolation("sections", "expected array");
    for (std::size_t i = 0; i < sections.size(); ++i)
    {
        std::string field = "sections[" + std::to_string(i) + "]";
        const json& entry = sections[i];
        Section s;
        s.id = getString(entry, "id", field);
        s.startSec = getNumber(entry, "startSec", field);
        s.endSec = getNumber(entry, "endSec", field);
        s.slideImageRef = getString(entry, "slideImage", field);
        std::string secDir = getString(entry, "dir", field);
        if (!isSafeRelative(secDir))
            throw SchemaViolation(field + ".dir", "must be relative");

        json content = readJsonFile(dir / secDir / "content.json", field + ".content");
        s.title = getString(content, "title", field + ".content");
        s.mainConcepts = getStringList(content, "mainConcepts", field + ".content");
        s.keyPoints = getStringList(content, "keyPoints", field + ".content");
        s.equations = optionalStringList(content, "equations", field + ".content");
        s.diagrams = optionalStringList(content, "diagrams", field + ".content");
        s.description = getString(content, "description", field + ".content");
        s.contentFingerprint = getString(content, "contentFingerprint", field + ".content");
        const json& ref = require(content, "boxReference", field + ".content");
        if (!ref.is_array() || ref.size() != 2 || !ref[0].is_number_integer() || !ref[1].is_number_integer())
            throw SchemaViolation(field + ".content.boxReference", "expected [width, height]");
        s.boxReference = BoxReference{ref[0].get<int>(), ref[1].get<int>()};
        const json& transcript = require(content, "transcript", field + ".content");
        if (!transcript.is_array())
            throw SchemaViolation(field + ".content.transcript", "expected array");
        for (const auto& seg : transcript)
            s.transcript.push_back(segmentFromJson(seg, field + ".content.transcript"));

        s.quizzes = bankFromJson(readJsonFile(dir / secDir / "quiz.json", field + ".quiz"), field + ".quiz");

        json highlights = readJsonFile(dir / secDir / "highlights.json", field + ".highlights");
        if (!highlights.is_array())
            throw SchemaViolation(field + ".highlights", "expected array");
        for (const auto& h : highlights)
            s.highlights.push_back(highlightFromJson(h, field + ".highlights"));

        bundle.sections.push_back(std::move(s));
    }

    const json& examples = require(manifest, "examples", "manifest");
    if (!examples.is_array())
        throw SchemaViolation("examples", "expected array");
    for (std::size_t i = 0; i < examples.size(); ++i)
        bundle.examples.push_back(exampleFromJson(examples[i], "examples[" + std::to_string(i) + "]"));

    validateBundle(bundle, dir);
    return bundle;
}

LectureBundle loadBundle(const fs::path& dir)
{
    try
    {
        return loadBundleUnchecked(dir);
    }
    catch (const json::exception& e)
    {
        throw SchemaViolation("manifest", e.what());
    }
    catch (const fs::filesystem_error& e)
    {
        throw SchemaViolation("manifest", e.what());
    }
}

void saveBundle(const LectureBundle& bundle, const fs::path& dir)
{
    validateBundle(bundle);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create " + dir.string() + ": " + ec.message());

    for (std::size_t i = 0; i < bundle.sections.size(); ++i)
    {
        const auto& s = bundle.sections[i];
        fs::path secDir = dir / sectionDir(i);
        writeFile(secDir / "content.json", canonicalDump(sectionContentJson(s)));
        writeFile(secDir / "quiz.json", canonicalDump(toJson(s.quizzes)));
        json highlights = json::array();
        for (const auto& h : s.highlights)
            highlights.push_back(toJson(h));
        writeFile(secDir / "highlights.json", canonicalDump(highlights));
    }
    writeFile(dir / kManifestFile, canonicalDump(manifestJson(bundle)));
}

} // namespace lecturekit::content
