#include "lecturekit/layout/layout.hpp"

#include "../imaging/cv_bridge.hpp"

#include <algorithm>

#include <opencv2/imgproc.hpp>

namespace lecturekit::layout
{

namespace
{

struct PixelBox
{
    int x0, y0, x1, y1; // half-open

    long area() const
    {
        return static_cast<long>(x1 - x0) * (y1 - y0);
    }
};

int gapBetween(const PixelBox& a, const PixelBox& b)
{
    int dx = std::max({0, b.x0 - a.x1, a.x0 - b.x1});
    int dy = std::max({0, b.y0 - a.y1, a.y0 - b.y1});
    return std::max(dx, dy);
}

void mergeNearBoxes(std::vector<PixelBox>& boxes, double maxGapPx)
{
    // Repeat whole passes until stable: growing box i can bring an earlier box into range.
    bool merged = true;
    while (merged)
    {
        merged = false;
        for (std::size_t i = 0; i < boxes.size(); ++i)
        {
            std::size_t j = i + 1;
            while (j < boxes.size())
            {
                if (gapBetween(boxes[i], boxes[j]) < maxGapPx)
                {
                    boxes[i] = PixelBox{std::min(boxes[i].x0, boxes[j].x0), std::min(boxes[i].y0, boxes[j].y0),
                                        std::max(boxes[i].x1, boxes[j].x1), std::max(boxes[i].y1, boxes[j].y1)};
                    boxes[j] = boxes.back();
                    boxes.pop_back();
                    merged = true;
                    j = i + 1;
                }
                else
                {
                    ++j;
                }
            }
        }
    }
}

} // namespace

std::vector<Rect> detectContentBoxes(const imaging::GrayImage& slide, const DetectOptions& options)
{
    if (slide.empty())
        throw imaging::ImageUndecodable("empty image");

    cv::Mat gray = imaging::detail::toMat(slide);
    int block = static_cast<int>(std::min(slide.width, slide.height) * options.blockFraction);
    block = std::max(block, 3);
    if (block % 2 == 0)
        ++block;

    cv::Mat ink;
    cv::adaptiveThreshold(gray, ink, 255, cv::ADAPTIVE_THRESH_MEAN_C, cv::THRESH_BINARY_INV, block, options.offset);

    cv::Mat labels, stats, centroids;
    int count = cv::connectedComponentsWithStats(ink, labels, stats, centroids, 8, CV_32S);

    std::vector<PixelBox> boxes;
    for (int label = 1; label < count; ++label)
    {
        if (stats.at<int>(label, cv::CC_STAT_AREA) < options.minComponentPixels)
            continue;
        int x = stats.at<int>(label, cv::CC_STAT_LEFT);
        int y = stats.at<int>(label, cv::CC_STAT_TOP);
        int w = stats.at<int>(label, cv::CC_STAT_WIDTH);
        int h = stats.at<int>(label, cv::CC_STAT_HEIGHT);
        boxes.push_back(PixelBox{x, y, x + w, y + h});
    }

    mergeNearBoxes(boxes, options.mergeGapFraction * slide.width);

    std::sort(boxes.begin(), boxes.end(), [](const PixelBox& a, const PixelBox& b) {
        if (a.area() != b.area())
            return a.area() > b.area();
        if (a.y0 != b.y0)
            return a.y0 < b.y0;
        return a.x0 < b.x0;
    });

    std::vector<Rect> out;
    out.reserve(boxes.size());
    double w = slide.width;
    double h = slide.height;
    for (const auto& b : boxes)
        out.push_back(Rect{b.x0 / w, b.y0 / h, b.x1 / w, b.y1 / h});
    return out;
}

std::vector<Rect> detectContentBoxes(const std::filesystem::path& slide, const DetectOptions& options)
{
    return detectContentBoxes(imaging::loadGray(slide), options);
}

} // namespace lecturekit::layout
