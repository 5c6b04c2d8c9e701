#include "lecturekit/common/time.hpp"
#include "lecturekit/imaging/image.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <algorithm>

namespace lecturekit::preprocess
{

const char* toString(ChangeType type)
{
    switch (type)
    {
    case ChangeType::Annotation:
        return "annotation";
    case ChangeType::HumanMotion:
        return "human_motion";
    case ChangeType::Cursor:
        return "cursor";
    case ChangeType::NewSlide:
        return "new_slide";
    case ChangeType::Transition:
        return "transition";
    }
    return "cursor";
}

namespace
{

ChangeType parseChangeType(const std::string& s)
{
    for (auto t : {ChangeType::Annotation, ChangeType::HumanMotion, ChangeType::Cursor, ChangeType::NewSlide,
                   ChangeType::Transition})
        if (s == toString(t))
            return t;
    throw PreconditionFailed("unknown change type " + s);
}

} // namespace

SameSlideVerdict compareFrames(const FrameSample& a, const FrameSample& b, const gateway::Gateway& gateway)
{
    gateway::ProviderRequest request;
    request.templateId = gateway::TemplateId::SameSlide;
    request.modelTier = gateway::ModelTier::Nano;
    request.attachments = {a.imageRef, b.imageRef};
    auto response = gateway.complete(request);
    const auto& j = *response.parsed;

    SameSlideVerdict v;
    v.isSameSlide = j.at("isSameSlide").get<bool>();
    v.confidence = j.at("confidence").get<double>();
    v.reason = j.at("reason").get<std::string>();
    v.changeType = parseChangeType(j.at("contentChange").at("type").get<std::string>());
    if (v.changeType == ChangeType::NewSlide)
        v.isSameSlide = false;
    return v;
}

std::vector<SectionSpan> segmentSections(const std::vector<FrameSample>& samples, const gateway::Gateway& gateway,
                                         std::optional<double> durationSec, const SegmentOptions& options)
{
    if (samples.empty())
        throw PreconditionFailed("segmentation needs at least one frame sample");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].timestampSec > samples[i - 1].timestampSec))
            throw PreconditionFailed("frame samples must be strictly increasing in time");

    std::vector<double> starts{0.0};
    for (std::size_t i = 1; i < samples.size(); ++i)
    {
        int d = imaging::hammingDistance(samples[i - 1].perceptualHash, samples[i].perceptualHash);
        if (d <= options.hashThreshold)
            continue;
        if (!compareFrames(samples[i - 1], samples[i], gateway).isSameSlide)
            starts.push_back(samples[i].timestampSec);
    }

    const double end = std::max(durationSec.value_or(samples.back().timestampSec), samples.back().timestampSec);
    std::vector<SectionSpan> spans;
    for (std::size_t k = 0; k < starts.size(); ++k)
        spans.push_back(SectionSpan{starts[k], k + 1 < starts.size() ? starts[k + 1] : end, {}});

    for (std::size_t k = 0; k < spans.size() && spans.size() > 1;)
    {
        if (spans[k].endSec - spans[k].startSec >= options.minSectionSec - kTimeEpsilon)
        {
            ++k;
            continue;
        }
        if (k > 0)
        {
            spans[k - 1].endSec = spans[k].endSec;
            spans.erase(spans.begin() + static_cast<std::ptrdiff_t>(k));
        }
        else
        {
            spans[1].startSec = spans[0].startSec;
            spans.erase(spans.begin());
        }
    }

    for (std::size_t k = 0; k < spans.size(); ++k)
    {
        bool last = k + 1 == spans.size();
        for (const auto& s : samples)
            if (s.timestampSec >= spans[k].startSec && (last || s.timestampSec < spans[k].endSec))
                spans[k].keyFrame = s;
    }
    return spans;
}

} // namespace lecturekit::preprocess
