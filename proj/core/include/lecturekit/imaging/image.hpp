#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/content/model.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lecturekit::imaging
{

class ImageUndecodable : public Error
{
  public:
    explicit ImageUndecodable(const std::string& what) : Error("ImageUndecodable", "cannot decode image: " + what) {}
};

/// 8-bit single-channel raster, row-major.
struct GrayImage
{
    int width{0};
    int height{0};
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 255)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill)
    {
    }

    bool empty() const
    {
        return width <= 0 || height <= 0;
    }
    std::uint8_t at(int x, int y) const
    {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
    std::uint8_t& at(int x, int y)
    {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }

    /// Fills the pixel rectangle [x0, x1) x [y0, y1), clipped to the image.
    void fillRect(int x0, int y0, int x1, int y1, std::uint8_t value);
};

GrayImage loadGray(const std::filesystem::path& file);
GrayImage decodeGray(std::span<const std::uint8_t> encoded);
void savePng(const GrayImage& image, const std::filesystem::path& file);
std::vector<std::uint8_t> encodePng(const GrayImage& image);

/// Copies the normalized `area` of an image file into a new PNG.
void cropToFile(const std::filesystem::path& source, const content::Rect& area, const std::filesystem::path& dest);

/// Average hash: 8x8 area-downsample, bit set where the cell is brighter than
/// the mean. Bit 63 is the top-left cell.
std::uint64_t perceptualHash(const GrayImage& image);

int hammingDistance(std::uint64_t a, std::uint64_t b);

/// Population standard deviation of pixel intensity.
double intensityStdDev(const GrayImage& image);

} // namespace lecturekit::imaging
