#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/content/model.hpp"
#include "lecturekit/imaging/image.hpp"

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace lecturekit::layout
{

using content::Rect;

class NoFreeRegion : public Error
{
  public:
    explicit NoFreeRegion(const std::string& message) : Error("NoFreeRegion", message) {}
};

struct Point
{
    double x{0.5};
    double y{0.5};
};

inline constexpr int kMaxGridCells = 4096;
inline constexpr int kDefaultCols = 24;
inline constexpr int kDefaultRows = 14;
inline constexpr double kCharsPerCell = 6.0;
inline constexpr double kMinFontScale = 0.75;

struct DetectOptions
{
    /// Adaptive-threshold window as a fraction of the shorter image side (forced odd, >= 3 px).
    double blockFraction{0.05};
    /// Offset subtracted from the local mean; pixels darker than mean - offset are ink.
    double offset{10.0};
    /// Boxes closer than this fraction of the image width are merged.
    double mergeGapFraction{0.01};
    /// Components with fewer pixels are treated as noise.
    int minComponentPixels{3};
};

/// grayscale -> adaptive binarization -> connected components -> per-component
/// boxes -> merge of near boxes. Result is normalized and sorted by area, largest first.
std::vector<Rect> detectContentBoxes(const imaging::GrayImage& slide, const DetectOptions& options = {});
std::vector<Rect> detectContentBoxes(const std::filesystem::path& slide, const DetectOptions& options = {});

/// Low-resolution boolean raster of a slide; true cells are occupied.
class OccupancyGrid
{
  public:
    OccupancyGrid(int cols, int rows);

    int cols() const
    {
        return cols_;
    }
    int rows() const
    {
        return rows_;
    }
    int cellCount() const
    {
        return cols_ * rows_;
    }
    bool occupied(int col, int row) const
    {
        return cells_[index(col, row)] != 0;
    }
    void setOccupied(int col, int row, bool value = true)
    {
        cells_[index(col, row)] = value ? 1 : 0;
    }
    int occupiedCount() const;

    /// Pixels per cell for a slide of the given size.
    double cellWidthPx(int imageWidth) const
    {
        return static_cast<double>(imageWidth) / cols_;
    }
    double cellHeightPx(int imageHeight) const
    {
        return static_cast<double>(imageHeight) / rows_;
    }

    bool operator==(const OccupancyGrid&) const = default;

  private:
    std::size_t index(int col, int row) const
    {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(col);
    }

    int cols_;
    int rows_;
    std::vector<std::uint8_t> cells_;
};

/// Marks every cell whose interior overlaps a box. A box edge lying exactly on
/// a cell boundary does not claim the neighbouring cell.
OccupancyGrid rasterize(std::span<const Rect> boxes, int cols = kDefaultCols, int rows = kDefaultRows);

/// Cell-space rectangle: top-left cell plus extent.
struct CellRect
{
    int col{0};
    int row{0};
    int width{0};
    int height{0};

    int area() const
    {
        return width * height;
    }
    bool operator==(const CellRect&) const = default;
};

struct FreeRegion
{
    Rect rect;
    CellRect cells;
    int cellCount{0};
    double distanceToAnchor{0.0};

    bool operator==(const FreeRegion&) const = default;
};

/// sqrt(dx*dx + dy*dy) between the rectangle's normalized center and the anchor.
double anchorDistance(const CellRect& cells, int gridCols, int gridRows, Point anchor);

Rect toNormalized(const CellRect& cells, int gridCols, int gridRows);

/// Strict total order used to pick a region: more cells first, then closer to
/// the anchor, then top row, then left column, then wider.
bool betterRegion(const FreeRegion& a, const FreeRegion& b);

/// Best all-free rectangle under `betterRegion`; throws NoFreeRegion when the
/// grid is full or the best region has fewer than `minCells` cells.
FreeRegion selectFreeRegion(const OccupancyGrid& grid, Point anchor, int minCells = 1);

struct PlanOptions
{
    int cols{kDefaultCols};
    int rows{kDefaultRows};
    int minCells{12};
    double charsPerCell{kCharsPerCell};
    double minFontScale{kMinFontScale};
    /// Always-occupied areas (e.g. the avatar viewport) added to detected content.
    std::vector<Rect> reserved;
    DetectOptions detect;
};

struct OverlayPlan
{
    FreeRegion region;
    int estimatedCapacityChars{0};
    bool scrollable{false};
    double fontScale{1.0};
    /// No free cell existed; the overlay covers the whole slide.
    bool modal{false};
    std::size_t responseLength{0};
};

/// floor(cells * charsPerCell / fontScale^2): smaller type fits more characters per cell.
int capacityChars(int cells, double fontScale, double charsPerCell = kCharsPerCell);

/// Plans on an already rasterized grid. Falls back to the largest free region
/// below `minCells`, then to a full-slide modal when every cell is occupied.
OverlayPlan planOnGrid(const OccupancyGrid& grid, Point anchor, std::string_view responseText,
                       const PlanOptions& options = {});

OverlayPlan planOverlay(const imaging::GrayImage& slide, Point anchor, std::string_view responseText,
                        const PlanOptions& options = {});
OverlayPlan planOverlay(const std::filesystem::path& slide, Point anchor, std::string_view responseText,
                        const PlanOptions& options = {});

} // namespace lecturekit::layout
