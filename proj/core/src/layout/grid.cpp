#include "lecturekit/common/text.hpp"
#include "lecturekit/layout/layout.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace lecturekit::layout
{

OccupancyGrid::OccupancyGrid(int cols, int rows) : cols_(cols), rows_(rows)
{
    if (cols < 1 || rows < 1)
        throw PreconditionFailed("grid dimensions must be >= 1");
    if (cols * rows > kMaxGridCells)
        throw PreconditionFailed("grid exceeds " + std::to_string(kMaxGridCells) + " cells");
    cells_.assign(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows), 0);
}

int OccupancyGrid::occupiedCount() const
{
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

OccupancyGrid rasterize(std::span<const Rect> boxes, int cols, int rows)
{
    OccupancyGrid grid(cols, rows);
    for (const auto& raw : boxes)
    {
        Rect b{std::min(raw.x0, raw.x1), std::min(raw.y0, raw.y1), std::max(raw.x0, raw.x1), std::max(raw.y0, raw.y1)};
        if (b.x1 < 0.0 || b.y1 < 0.0 || b.x0 > 1.0 || b.y0 > 1.0)
            continue;
        // Candidate index range from the scaled edges, widened by one and then
        // settled with the exact per-cell overlap test.
        int c0 = std::max(0, static_cast<int>(std::floor(b.x0 * cols)) - 1);
        int c1 = std::min(cols - 1, static_cast<int>(std::ceil(b.x1 * cols)));
        int r0 = std::max(0, static_cast<int>(std::floor(b.y0 * rows)) - 1);
        int r1 = std::min(rows - 1, static_cast<int>(std::ceil(b.y1 * rows)));
        for (int r = r0; r <= r1; ++r)
        {
            double cy0 = static_cast<double>(r) / rows;
            double cy1 = static_cast<double>(r + 1) / rows;
            if (!(b.y0 < cy1 && b.y1 > cy0))
                continue;
            for (int c = c0; c <= c1; ++c)
            {
                double cx0 = static_cast<double>(c) / cols;
                double cx1 = static_cast<double>(c + 1) / cols;
                if (b.x0 < cx1 && b.x1 > cx0)
                    grid.setOccupied(c, r);
            }
        }
    }
    return grid;
}

double anchorDistance(const CellRect& cells, int gridCols, int gridRows, Point anchor)
{
    double cx = (cells.col + 0.5 * cells.width) / gridCols;
    double cy = (cells.row + 0.5 * cells.height) / gridRows;
    double dx = cx - anchor.x;
    double dy = cy - anchor.y;
    return std::sqrt(dx * dx + dy * dy);
}

Rect toNormalized(const CellRect& cells, int gridCols, int gridRows)
{
    return Rect{static_cast<double>(cells.col) / gridCols, static_cast<double>(cells.row) / gridRows,
                static_cast<double>(cells.col + cells.width) / gridCols,
                static_cast<double>(cells.row + cells.height) / gridRows};
}

bool betterRegion(const FreeRegion& a, const FreeRegion& b)
{
    if (a.cellCount != b.cellCount)
        return a.cellCount > b.cellCount;
    if (a.distanceToAnchor != b.distanceToAnchor)
        return a.distanceToAnchor < b.distanceToAnchor;
    if (a.cells.row != b.cells.row)
        return a.cells.row < b.cells.row;
    if (a.cells.col != b.cells.col)
        return a.cells.col < b.cells.col;
    return a.cells.width > b.cells.width;
}

FreeRegion selectFreeRegion(const OccupancyGrid& grid, Point anchor, int minCells)
{
    const int cols = grid.cols();
    const int rows = grid.rows();

    // heights[c] = run of free cells ending at the current row in column c.
    // For each column, the rectangle of that height spanning every neighbour at
    // least as tall is a candidate; every maximal free rectangle is produced
    // this way from the row it ends on.
    std::vector<int> heights(static_cast<std::size_t>(cols), 0);
    std::optional<FreeRegion> best;

    for (int r = 0; r < rows; ++r)
    {
        for (int c = 0; c < cols; ++c)
            heights[static_cast<std::size_t>(c)] = grid.occupied(c, r) ? 0 : heights[static_cast<std::size_t>(c)] + 1;

        for (int c = 0; c < cols; ++c)
        {
            int h = heights[static_cast<std::size_t>(c)];
            if (h == 0)
                continue;
            int left = c;
            while (left > 0 && heights[static_cast<std::size_t>(left - 1)] >= h)
                --left;
            int right = c;
            while (right + 1 < cols && heights[static_cast<std::size_t>(right + 1)] >= h)
                ++right;

            FreeRegion candidate;
            candidate.cells = CellRect{left, r - h + 1, right - left + 1, h};
            candidate.cellCount = candidate.cells.area();
            candidate.distanceToAnchor = anchorDistance(candidate.cells, cols, rows, anchor);
            if (!best || betterRegion(candidate, *best))
                best = candidate;
        }
    }

    if (!best)
        throw NoFreeRegion("grid is fully occupied");
    if (best->cellCount < minCells)
        throw NoFreeRegion("largest free region has " + std::to_string(best->cellCount) + " cells, need " +
                           std::to_string(minCells));
    best->rect = toNormalized(best->cells, cols, rows);
    return *best;
}

int capacityChars(int cells, double fontScale, double charsPerCell)
{
    return static_cast<int>(std::floor(cells * charsPerCell / (fontScale * fontScale)));
}

OverlayPlan planOnGrid(const OccupancyGrid& grid, Point anchor, std::string_view responseText,
                       const PlanOptions& options)
{
    OverlayPlan plan;
    plan.responseLength = text::codePointCount(responseText);

    try
    {
        plan.region = selectFreeRegion(grid, anchor, options.minCells);
    }
    catch (const NoFreeRegion&)
    {
        if (grid.occupiedCount() < grid.cellCount())
        {
            plan.region = selectFreeRegion(grid, anchor, 1);
        }
        else
        {
            plan.modal = true;
            plan.region.cells = CellRect{0, 0, grid.cols(), grid.rows()};
            plan.region.cellCount = grid.cellCount();
            plan.region.rect = Rect{0.0, 0.0, 1.0, 1.0};
            plan.region.distanceToAnchor = anchorDistance(plan.region.cells, grid.cols(), grid.rows(), anchor);
        }
    }

    const int cells = plan.region.cellCount;
    const auto length = static_cast<long>(plan.responseLength);
    plan.fontScale = 1.0;
    plan.estimatedCapacityChars = capacityChars(cells, 1.0, options.charsPerCell);
    if (length > plan.estimatedCapacityChars)
    {
        plan.fontScale = options.minFontScale;
        plan.estimatedCapacityChars = capacityChars(cells, options.minFontScale, options.charsPerCell);
    }
    plan.scrollable = length > plan.estimatedCapacityChars;
    return plan;
}

OverlayPlan planOverlay(const imaging::GrayImage& slide, Point anchor, std::string_view responseText,
                        const PlanOptions& options)
{
    std::vector<Rect> boxes = detectContentBoxes(slide, options.detect);
    boxes.insert(boxes.end(), options.reserved.begin(), options.reserved.end());
    return planOnGrid(rasterize(boxes, options.cols, options.rows), anchor, responseText, options);
}

OverlayPlan planOverlay(const std::filesystem::path& slide, Point anchor, std::string_view responseText,
                        const PlanOptions& options)
{
    return planOverlay(imaging::loadGray(slide), anchor, responseText, options);
}

} // namespace lecturekit::layout
