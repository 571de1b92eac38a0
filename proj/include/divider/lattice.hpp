#pragma once

#include <cstdint>
#include <vector>

#include "divider/geometry.hpp"

namespace divider::lattice {

struct Cell {
    int x = 0, y = 0;
    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
};

// Discrete foreground set on a w x h grid. Cells outside the image are neither
// foreground nor background: the boundary is the set of foreground cells
// 4-adjacent to an in-image background cell, so shapes need a background
// margin inside the bitmap to have a boundary at all.
class Bitmap {
public:
    Bitmap(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }
    bool foreground(int x, int y) const {
        return in_bounds(x, y) && fg_[static_cast<size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool fg);

    std::vector<Cell> boundary() const;
    int foreground_count() const;

    // w x h foreground block centered in a bitmap padded by `margin` background cells
    static Bitmap filled_rect(int w, int h, int margin = 1);

private:
    int width_, height_;
    std::vector<std::uint8_t> fg_;
};

// Per-cell distance to the boundary set under the chosen metric, with the set
// of near-minimal boundary cells ("feet") for every foreground cell.
struct DistanceField {
    int width = 0, height = 0;
    MetricKind metric = MetricKind::MaxCoordinate;
    double feet_tolerance = 1.0;
    std::vector<Cell> boundary;
    std::vector<double> distance;           // w*h, +inf when boundary is empty
    std::vector<std::vector<int>> feet;     // w*h, indices into boundary

    double dist_at(int x, int y) const { return distance[static_cast<size_t>(y) * width + x]; }
    const std::vector<int>& feet_at(int x, int y) const {
        return feet[static_cast<size_t>(y) * width + x];
    }
};

// Exact distances: unit-weight chamfer passes for MaxCoordinate (8-neighbor)
// and Addition (4-neighbor), dimensional-reduction lower-envelope transform
// for Euclidean. Feet recovered by bounded local search within
// distance + feet_tolerance. Throws empty_foreground_error on an empty
// foreground; an empty boundary (no in-image background) yields an all-infinite
// field.
DistanceField distance_transform(const Bitmap& b, MetricKind m,
                                 double feet_tolerance = 1.0);

struct DividerRule {
    double feet_tolerance = 1.0;
    // A cell qualifies when two of its feet are farther apart along the
    // boundary than separation_factor * (distance + feet_tolerance).
    double separation_factor = 2.0;
};

// Divider cells: feet separated along the boundary (geodesic within the
// boundary set, steps weighted by the metric) beyond the rule threshold, or
// strict 8-neighborhood local maxima of the distance field.
Bitmap discrete_divider(const Bitmap& b, MetricKind m, const DividerRule& rule = {});

// One raster-order pass removing simple cells (deletable without changing
// local 8-connectivity); keeps curve endpoints.
Bitmap thin_once(const Bitmap& mask);

}  // namespace divider::lattice
