#pragma once

#include <vector>

#include "divider/curve.hpp"
#include "divider/geometry.hpp"

namespace divider {

inline constexpr int kDefaultScan = 2048;

// Precomputed uniform sample of a curve; shared by the foot scan, the divider
// tracer and the raster loops so repeated queries never re-evaluate trig.
struct CurveScan {
    const ParametricCurve* curve = nullptr;
    std::vector<double> t;
    std::vector<Point2> pos;
    std::vector<Vec2> d1;

    static CurveScan build(const ParametricCurve& c, int n);
    int size() const { return static_cast<int>(t.size()); }
};

enum class FootKind { LocalMin, LocalMax, Degenerate };

// Stationary point of t -> d(p, S(t)).
struct Foot {
    double t = 0.0;
    Point2 point;
    double distance = 0.0;
    FootKind kind = FootKind::Degenerate;
    // Lowest derivative order of half the squared distance that classified the
    // foot: 2 generically, 3 for odd-order saddles, 4 for vertex-degenerate
    // contacts. 1 marks one-sided classification at an open-curve endpoint,
    // 0 a constant-distance profile (the whole curve is one foot).
    int order = 0;
    // |(S(t) - p) . unit_tangent|, in length units
    double residual = 0.0;
};

struct FeetResult {
    std::vector<Foot> feet;  // sorted by distance ascending
    int warnings = 0;        // candidates dropped after refinement failures
    bool constant_profile = false;
};

// Newton iteration with bisection safeguard on (S(t) - p) . S'(t) = 0 starting
// from t_seed. Throws no_convergence_error / out_of_domain_error.
Foot foot_refine(const ParametricCurve& c, Point2 p, double t_seed);

// All stationary points of the distance profile, located by a sign-change scan
// of the orthogonality residual on an n_scan grid, refined, deduplicated and
// sorted by distance. Open-curve endpoints are appended as one-sided feet.
FeetResult all_feet(const ParametricCurve& c, Point2 p, int n_scan = kDefaultScan);
FeetResult all_feet(const CurveScan& scan, Point2 p);

}  // namespace divider
