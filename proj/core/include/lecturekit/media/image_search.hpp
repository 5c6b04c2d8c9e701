#pragma once

#include "lecturekit/common/error.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace lecturekit::media
{

class SearchUnavailable : public Error
{
  public:
    explicit SearchUnavailable(const std::string& what) : Error("SearchUnavailable", what) {}
};

class EmptyResults : public Error
{
  public:
    explicit EmptyResults(const std::string& keywords)
        : Error("EmptyResults", "no images found for '" + keywords + "'")
    {
    }
};

struct ImageResult
{
    std::string url;
    std::string title;
    std::string sourceDomain;
    std::string thumbUrl;

    bool operator==(const ImageResult&) const = default;
};

class ImageSearchProvider
{
  public:
    virtual ~ImageSearchProvider() = default;
    /// Up to `maxResults` results in provider order. Throws SearchUnavailable.
    virtual std::vector<ImageResult> query(const std::string& keywords, int maxResults) = 0;
};

/// Fixture table: a query matches every entry whose key occurs in its
/// normalized text, in table order.
class StubImageSearch : public ImageSearchProvider
{
  public:
    StubImageSearch();
    std::vector<ImageResult> query(const std::string& keywords, int maxResults) override;

    void add(const std::string& key, ImageResult result);
    void setUnavailable(bool unavailable);
    int queryCount() const;

  private:
    mutable std::mutex mutex_;
    std::vector<std::pair<std::string, ImageResult>> table_;
    bool unavailable_{false};
    int queries_{0};
};

/// Google Custom Search JSON API, image mode.
class GoogleImageSearch : public ImageSearchProvider
{
  public:
    GoogleImageSearch(std::string apiKey, std::string engineId,
                      std::string endpoint = "https://www.googleapis.com/customsearch/v1");
    std::vector<ImageResult> query(const std::string& keywords, int maxResults) override;

  private:
    std::string apiKey_;
    std::string engineId_;
    std::string endpoint_;
};

/// Stub when forced or MEDIA_MOCK=1, Google CSE from IMAGE_SEARCH_KEY/IMAGE_SEARCH_CX
/// otherwise. Missing keys yield a provider that always raises SearchUnavailable.
std::shared_ptr<ImageSearchProvider> imageSearchFromEnvironment(bool forceMock);

/// Checks preconditions, drops malformed URLs, and raises EmptyResults when nothing is left.
std::vector<ImageResult> searchImages(ImageSearchProvider& provider, const std::string& keywords, int maxResults);

} // namespace lecturekit::media
