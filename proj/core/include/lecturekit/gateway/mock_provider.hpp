#pragma once

#include "lecturekit/gateway/gateway.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace lecturekit::gateway
{

/// One row of the slide fixture table the mock draws slide extracts from.
struct MockSlideTopic
{
    std::string title;
    std::vector<std::string> topics;
    std::vector<std::string> equations;
    std::vector<std::string> diagrams;
};

const std::vector<MockSlideTopic>& mockSlideTopics();

/// Deterministic offline provider. Replies are pure functions of the request:
///  - sameSlide: average-hash distance between the two frames; <= annotation
///    threshold is the same slide, anything above is a new slide.
///  - slideExtract: fingerprint is the hex average hash; topics come from the
///    fixture table row picked by the hash; uniform frames have no topics.
///  - quizGen / breakStory / clarify: drawn from fixture tables with an RNG
///    seeded by (template, bindings).
///  - highlightGen: detected content boxes on a 1000x1000 reference, paired
///    with transcript lines in order.
///  - visualKeywords: registered label for the crop's hash, else a fixture keyword.
/// Scripted replies and transport failures can be queued per template.
class MockProvider : public TextProvider
{
  public:
    static constexpr int kAnnotationThreshold = 24;
    static constexpr int kBoxReference = 1000;

    std::string generate(const ProviderRequest& request, const std::string& renderedPrompt) override;

    /// Next call for `id` returns `raw` verbatim (FIFO).
    void script(TemplateId id, std::string raw);
    /// Next `count` calls for `id` fail with a TransportError.
    void failNext(TemplateId id, int count);
    /// Crops whose hash is within 4 bits of `imageHash` yield `keyword`.
    void registerImageLabel(std::uint64_t imageHash, std::string keyword);

    /// Number of generate() calls seen, per template.
    int callCount(TemplateId id) const;
    /// Requests in arrival order, for assertions.
    std::vector<ProviderRequest> history() const;

  private:
    std::string sameSlide(const ProviderRequest& request) const;
    std::string slideExtract(const ProviderRequest& request) const;
    std::string quizGen(const ProviderRequest& request) const;
    std::string highlightGen(const ProviderRequest& request) const;
    std::string clarify(const ProviderRequest& request) const;
    std::string visualKeywords(const ProviderRequest& request) const;
    std::string breakStory(const ProviderRequest& request) const;

    mutable std::mutex mutex_;
    std::map<TemplateId, std::deque<std::string>> scripted_;
    std::map<TemplateId, int> failures_;
    std::map<TemplateId, int> calls_;
    std::vector<std::pair<std::uint64_t, std::string>> labels_;
    std::vector<ProviderRequest> history_;
};

/// Seed used by the mock for a request: FNV-1a over the template id and sorted bindings.
std::uint64_t mockSeed(const ProviderRequest& request);

} // namespace lecturekit::gateway
