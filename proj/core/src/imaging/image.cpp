#include "lecturekit/imaging/image.hpp"

#include "cv_bridge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace lecturekit::imaging
{

void GrayImage::fillRect(int x0, int y0, int x1, int y1, std::uint8_t value)
{
    x0 = std::clamp(x0, 0, width);
    x1 = std::clamp(x1, 0, width);
    y0 = std::clamp(y0, 0, height);
    y1 = std::clamp(y1, 0, height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
            at(x, y) = value;
}

GrayImage loadGray(const std::filesystem::path& file)
{
    cv::Mat mat = cv::imread(file.string(), cv::IMREAD_GRAYSCALE);
    if (mat.empty())
        throw ImageUndecodable(file.string());
    return detail::fromMat(mat);
}

GrayImage decodeGray(std::span<const std::uint8_t> encoded)
{
    if (encoded.empty())
        throw ImageUndecodable("empty buffer");
    cv::Mat buf(1, static_cast<int>(encoded.size()), CV_8UC1, const_cast<std::uint8_t*>(encoded.data()));
    cv::Mat mat;
    try
    {
        mat = cv::imdecode(buf, cv::IMREAD_GRAYSCALE);
    }
    catch (const cv::Exception& e)
    {
        throw ImageUndecodable(e.what());
    }
    if (mat.empty())
        throw ImageUndecodable("buffer");
    return detail::fromMat(mat);
}

void savePng(const GrayImage& image, const std::filesystem::path& file)
{
    if (image.empty())
        throw PreconditionFailed("cannot save an empty image");
    if (!cv::imwrite(file.string(), detail::toMat(image)))
        throw Error("IoError", "cannot write " + file.string());
}

std::vector<std::uint8_t> encodePng(const GrayImage& image)
{
    std::vector<std::uint8_t> out;
    cv::imencode(".png", detail::toMat(image), out);
    return out;
}

void cropToFile(const std::filesystem::path& source, const content::Rect& area, const std::filesystem::path& dest)
{
    cv::Mat mat = cv::imread(source.string(), cv::IMREAD_COLOR);
    if (mat.empty())
        throw ImageUndecodable(source.string());
    auto clampUnit = [](double v) { return std::clamp(v, 0.0, 1.0); };
    int x0 = static_cast<int>(std::floor(clampUnit(std::min(area.x0, area.x1)) * mat.cols));
    int x1 = static_cast<int>(std::ceil(clampUnit(std::max(area.x0, area.x1)) * mat.cols));
    int y0 = static_cast<int>(std::floor(clampUnit(std::min(area.y0, area.y1)) * mat.rows));
    int y1 = static_cast<int>(std::ceil(clampUnit(std::max(area.y0, area.y1)) * mat.rows));
    x1 = std::max(x1, std::min(x0 + 1, mat.cols));
    y1 = std::max(y1, std::min(y0 + 1, mat.rows));
    x0 = std::min(x0, x1 - 1);
    y0 = std::min(y0, y1 - 1);
    cv::Mat roi = mat(cv::Rect(x0, y0, x1 - x0, y1 - y0)).clone();
    if (!cv::imwrite(dest.string(), roi))
        throw Error("IoError", "cannot write " + dest.string());
}

std::uint64_t perceptualHash(const GrayImage& image)
{
    if (image.empty())
        return 0;
    cv::Mat small;
    cv::resize(detail::toMat(image), small, cv::Size(8, 8), 0, 0, cv::INTER_AREA);
    double mean = cv::mean(small)[0];
    std::uint64_t hash = 0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
        {
            hash <<= 1;
            if (small.at<std::uint8_t>(y, x) > mean)
                hash |= 1;
        }
    return hash;
}

int hammingDistance(std::uint64_t a, std::uint64_t b)
{
    return std::popcount(a ^ b);
}

double intensityStdDev(const GrayImage& image)
{
    if (image.empty())
        return 0.0;
    double sum = 0.0;
    double sumSq = 0.0;
    for (auto p : image.pixels)
    {
        sum += p;
        sumSq += static_cast<double>(p) * p;
    }
    double n = static_cast<double>(image.pixels.size());
    double mean = sum / n;
    return std::sqrt(std::max(0.0, sumSq / n - mean * mean));
}

} // namespace lecturekit::imaging
