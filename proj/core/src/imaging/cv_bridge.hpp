#pragma once

#include "lecturekit/imaging/image.hpp"

#include <opencv2/core.hpp>

namespace lecturekit::imaging::detail
{

/// Non-owning view; the image must outlive the returned Mat.
inline cv::Mat toMat(const GrayImage& image)
{
    return cv::Mat(image.height, image.width, CV_8UC1, const_cast<std::uint8_t*>(image.pixels.data()));
}

inline GrayImage fromMat(const cv::Mat& mat)
{
    cv::Mat gray = mat;
    if (mat.channels() != 1)
        throw PreconditionFailed("expected single-channel image");
    if (!gray.isContinuous())
        gray = gray.clone();
    GrayImage out;
    out.width = gray.cols;
    out.height = gray.rows;
    out.pixels.assign(gray.datastart, gray.dataend);
    return out;
}

} // namespace lecturekit::imaging::detail
