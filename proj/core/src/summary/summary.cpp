#include "lecturekit/summary/summary.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/common/time.hpp"
#include "lecturekit/content/bundle_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lecturekit::summary
{

using nlohmann::json;
using session::RecordKind;

double cardHeight(std::size_t codePoints)
{
    double lines = std::ceil(static_cast<double>(codePoints) / kCharsPerLine);
    return std::max(kMinCardHeight, kCardChrome + kLineHeight * lines);
}

namespace
{

std::string cardBody(const session::InteractionRecord& r)
{
    std::vector<std::string> parts;
    if (r.prompt && !r.prompt->empty())
        parts.push_back(*r.prompt);
    if (r.response && !r.response->empty())
        parts.push_back(*r.response);
    return text::join(parts, "\n");
}

} // namespace

SummaryDocument compileSummary(const std::string& sessionId, const std::vector<session::InteractionRecord>& log,
                               const content::LectureBundle& bundle)
{
    SummaryDocument doc;
    doc.sessionId = sessionId;
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < bundle.sections.size(); ++i)
    {
        const auto& s = bundle.sections[i];
        SectionSummary ss;
        ss.sectionId = s.id;
        ss.title = s.title;
        ss.slideImageRef = s.slideImageRef;
        ss.columnX = static_cast<double>(i) * (kColumnWidth + kGutter);
        doc.sections.push_back(std::move(ss));
        column[s.id] = i;
    }

    std::vector<std::vector<std::size_t>> perColumn(doc.sections.size());
    for (std::size_t i = 0; i < log.size(); ++i)
    {
        auto it = column.find(log[i].sectionId);
        if (it == column.end())
            throw OrphanRecord(log[i].sectionId);
        perColumn[it->second].push_back(i);
    }

    for (std::size_t c = 0; c < perColumn.size(); ++c)
    {
        auto& refs = perColumn[c];
        std::stable_sort(refs.begin(), refs.end(), [&](std::size_t a, std::size_t b) {
            if (log[a].timestampSec != log[b].timestampSec)
                return log[a].timestampSec < log[b].timestampSec;
            return a < b;
        });

        SectionSummary& ss = doc.sections[c];
        double y = kHeaderHeight + kGutter;
        for (std::size_t ref : refs)
        {
            const auto& r = log[ref];
            CanvasCard card;
            card.recordRef = ref;
            card.kind = r.kind;
            card.sectionId = r.sectionId;
            card.body = cardBody(r);
            card.x = ss.columnX;
            card.y = y;
            card.w = kColumnWidth;
            card.h = cardHeight(text::codePointCount(card.body));
            y += card.h + kGutter;

            if (r.selectedArea)
                ss.selectedAreas.push_back(*r.selectedArea);
            switch (r.kind)
            {
            case RecordKind::Question:
                card.replayText = r.response;
                ss.questions.push_back({ref, r.prompt.value_or(""), r.response.value_or(""), r.selectedArea});
                break;
            case RecordKind::QuizAnswer: {
                auto correct = r.extra.find("correct");
                auto level = r.extra.find("level");
                QuizAttempt a{ref, r.prompt.value_or(""), r.response.value_or(""),
                              correct != r.extra.end() && correct->second == "true", 0};
                if (level != r.extra.end())
                    a.level = std::atoi(level->second.c_str());
                ss.quizzes.push_back(std::move(a));
                break;
            }
            case RecordKind::Note:
                ss.notes.push_back(ref);
                break;
            default:
                ss.others.push_back(ref);
                break;
            }
            doc.canvas.push_back(std::move(card));
        }
    }
    return doc;
}

json toJson(const SummaryDocument& doc)
{
    json sections = json::array();
    for (const auto& s : doc.sections)
    {
        json areas = json::array();
        for (const auto& a : s.selectedAreas)
            areas.push_back(content::rectToJson(a));
        json qa = json::array();
        for (const auto& q : s.questions)
        {
            json e = {{"recordRef", q.recordRef}, {"question", q.question}, {"answer", q.answer}};
            if (q.selectedArea)
                e["selectedArea"] = content::rectToJson(*q.selectedArea);
            qa.push_back(std::move(e));
        }
        json quizzes = json::array();
        for (const auto& q : s.quizzes)
            quizzes.push_back({{"recordRef", q.recordRef},
                               {"question", q.question},
                               {"answer", q.answer},
                               {"correct", q.correct},
                               {"level", q.level}});
        sections.push_back({{"sectionId", s.sectionId},
                            {"title", s.title},
                            {"slideImageRef", s.slideImageRef},
                            {"columnX", s.columnX},
                            {"selectedAreas", areas},
                            {"questions", qa},
                            {"quizzes", quizzes},
                            {"notes", s.notes},
                            {"others", s.others}});
    }
    json canvas = json::array();
    for (const auto& c : doc.canvas)
    {
        json card = {{"recordRef", c.recordRef}, {"kind", session::toString(c.kind)},
                     {"sectionId", c.sectionId}, {"x", c.x},
                     {"y", c.y},                 {"w", c.w},
                     {"h", c.h},                 {"body", c.body}};
        if (c.replayText)
            card["replayText"] = *c.replayText;
        canvas.push_back(std::move(card));
    }
    return {{"sessionId", doc.sessionId},
            {"sections", sections},
            {"canvas", canvas},
            {"geometry",
             {{"columnWidth", kColumnWidth},
              {"gutter", kGutter},
              {"headerHeight", kHeaderHeight},
              {"minCardHeight", kMinCardHeight}}}};
}

} // namespace lecturekit::summary
