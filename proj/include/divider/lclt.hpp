#pragma once

#include <vector>

#include "divider/curve.hpp"
#include "divider/feet.hpp"

namespace divider {

// Curvature of locally convex type at a query point: the inverse of the
// smallest radius at which a closed ball around the point meets the curve in
// a disconnected set. Zero when no radius disconnects.
struct LcltResult {
    double k_lct = 0.0;
    double r_lct = 0.0;  // infinity when k_lct == 0
    std::vector<Foot> feet_used;  // qualifying minimum feet, distance ascending
    bool member_of_pi = false;    // k_lct > 0
};

LcltResult lclt_curvature(const ParametricCurve& c, Point2 p);
LcltResult lclt_curvature(const CurveScan& scan, Point2 p);

// Brute-force disconnection radius: samples the distance profile on n points,
// finds the smallest sampled radius whose sublevel set splits into >= 2
// components under sample adjacency, then refines the bracketing interval.
// Returns infinity when no radius disconnects. Independent of the foot-based
// recipe above; the two are cross-checked against each other.
double disconnection_radius_oracle(const ParametricCurve& c, Point2 p, int n);

struct Window {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

// Row-major scalar grid over a window; row 0 is the top row (y = y1 side),
// matching image conventions for the PGM writer.
struct Raster {
    Window window;
    int nx = 0, ny = 0;
    std::vector<double> values;

    double& at(int ix, int iy) { return values[static_cast<size_t>(iy) * nx + ix]; }
    double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * nx + ix]; }
    Point2 cell_center(int ix, int iy) const {
        const double dx = window.width() / nx;
        const double dy = window.height() / ny;
        return {window.x0 + (ix + 0.5) * dx, window.y1 - (iy + 0.5) * dy};
    }
};

// k_lct evaluated on each cell center; the positive region approximates Pi(S).
// Cells are independent; rows are evaluated in parallel.
Raster pi_set_raster(const ParametricCurve& c, Window window, int nx, int ny,
                     int n_scan = kDefaultScan);

}  // namespace divider
