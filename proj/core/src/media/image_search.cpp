#include "lecturekit/media/image_search.hpp"

#include "lecturekit/common/net.hpp"
#include "lecturekit/common/text.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>

namespace lecturekit::media
{

namespace
{

ImageResult wiki(const std::string& file, const std::string& title)
{
    std::string url = "https://upload.wikimedia.org/wikipedia/commons/" + file;
    return ImageResult{url, title, "upload.wikimedia.org", url};
}

bool wellFormed(const std::string& url)
{
    try
    {
        net::parseUrl(url);
        return url.find_first_of(" \t\n") == std::string::npos;
    }
    catch (const Error&)
    {
        return false;
    }
}

class UnconfiguredSearch : public ImageSearchProvider
{
  public:
    std::vector<ImageResult> query(const std::string&, int) override
    {
        throw SearchUnavailable("IMAGE_SEARCH_KEY / IMAGE_SEARCH_CX not configured");
    }
};

} // namespace

StubImageSearch::StubImageSearch()
{
    table_ = {
        {"quark", wiki("0/00/Standard_Model_of_Elementary_Particles.svg", "Quark model diagram")},
        {"quark", wiki("a/a4/Quark_structure_proton.svg", "Quark structure of the proton")},
        {"standard model", wiki("0/00/Standard_Model_of_Elementary_Particles.svg", "Standard Model particles")},
        {"atom", wiki("e/e1/Stylised_atom_with_three_Bohr_model_orbits_and_stylised_nucleus.svg",
                      "Stylised atom with nucleus")},
        {"nucle", wiki("2/24/Nucleus_drawing.svg", "Atomic nucleus")},
        {"neural network", wiki("4/46/Colored_neural_network.svg", "Neural network diagram")},
        {"perceptron", wiki("8/8a/Perceptron_example.svg", "Perceptron")},
        {"decision boundary", wiki("2/20/Svm_separating_hyperplanes.png", "Separating hyperplanes")},
        {"vector field", wiki("b/b8/VectorField.svg", "Vector field")},
        {"gradient", wiki("a/a3/Gradient_descent.svg", "Gradient descent")},
        {"gluon", wiki("2/2e/Gluon-exchange.svg", "Gluon exchange")},
    };
}

void StubImageSearch::add(const std::string& key, ImageResult result)
{
    std::lock_guard lock(mutex_);
    table_.emplace_back(text::normalize(key), std::move(result));
}

void StubImageSearch::setUnavailable(bool unavailable)
{
    std::lock_guard lock(mutex_);
    unavailable_ = unavailable;
}

int StubImageSearch::queryCount() const
{
    std::lock_guard lock(mutex_);
    return queries_;
}

std::vector<ImageResult> StubImageSearch::query(const std::string& keywords, int maxResults)
{
    std::lock_guard lock(mutex_);
    ++queries_;
    if (unavailable_)
        throw SearchUnavailable("image search stub is offline");
    std::string q = text::normalize(keywords);
    std::vector<ImageResult> out;
    for (const auto& [key, result] : table_)
    {
        if (static_cast<int>(out.size()) >= maxResults)
            break;
        if (q.find(key) != std::string::npos &&
            std::none_of(out.begin(), out.end(), [&](const ImageResult& r) { return r.url == result.url; }))
            out.push_back(result);
    }
    return out;
}

GoogleImageSearch::GoogleImageSearch(std::string apiKey, std::string engineId, std::string endpoint)
    : apiKey_(std::move(apiKey)), engineId_(std::move(engineId)), endpoint_(std::move(endpoint))
{
    net::parseUrl(endpoint_);
}

std::vector<ImageResult> GoogleImageSearch::query(const std::string& keywords, int maxResults)
{
    net::Url url = net::parseUrl(endpoint_);
    std::string path = (url.path.empty() ? "/" : url.path) + "?key=" + net::urlEncode(apiKey_) +
                       "&cx=" + net::urlEncode(engineId_) + "&searchType=image&q=" + net::urlEncode(keywords) +
                       "&num=" + std::to_string(std::clamp(maxResults, 1, 10));

    httplib::Client client(url.origin());
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(10, 0);
    net::noteEgress(url.host);
    auto res = client.Get(path);
    if (!res)
        throw SearchUnavailable("image search request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw SearchUnavailable("image search returned " + std::to_string(res->status));

    auto body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_discarded())
        throw SearchUnavailable("image search reply is not JSON");
    std::vector<ImageResult> out;
    if (!body.contains("items"))
        return out;
    for (const auto& item : body["items"])
    {
        if (static_cast<int>(out.size()) >= maxResults)
            break;
        ImageResult r;
        r.url = item.value("link", "");
        r.title = item.value("title", "");
        r.sourceDomain = item.value("displayLink", "");
        if (item.contains("image") && item["image"].is_object())
            r.thumbUrl = item["image"].value("thumbnailLink", "");
        out.push_back(std::move(r));
    }
    return out;
}

std::shared_ptr<ImageSearchProvider> imageSearchFromEnvironment(bool forceMock)
{
    const char* mock = std::getenv("MEDIA_MOCK");
    if (forceMock || (mock != nullptr && std::string(mock) == "1"))
        return std::make_shared<StubImageSearch>();
    const char* key = std::getenv("IMAGE_SEARCH_KEY");
    const char* cx = std::getenv("IMAGE_SEARCH_CX");
    if (key == nullptr || cx == nullptr || *key == '\0' || *cx == '\0')
        return std::make_shared<UnconfiguredSearch>();
    return std::make_shared<GoogleImageSearch>(key, cx);
}

std::vector<ImageResult> searchImages(ImageSearchProvider& provider, const std::string& keywords, int maxResults)
{
    if (text::trim(keywords).empty())
        throw PreconditionFailed("search keywords must be non-empty");
    if (maxResults < 0)
        throw PreconditionFailed("maxResults must be >= 0");
    if (maxResults == 0)
        return {};
    auto raw = provider.query(keywords, maxResults);
    std::vector<ImageResult> out;
    for (auto& r : raw)
    {
        if (static_cast<int>(out.size()) >= maxResults)
            break;
        if (!wellFormed(r.url))
            continue;
        if (r.thumbUrl.empty() || !wellFormed(r.thumbUrl))
            r.thumbUrl = r.url;
        out.push_back(std::move(r));
    }
    if (out.empty())
        throw EmptyResults(keywords);
    return out;
}

} // namespace lecturekit::media
