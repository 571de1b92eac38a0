#pragma once

#include <vector>

#include "divider/curve.hpp"
#include "divider/feet.hpp"

namespace divider {

enum class NormalSide { LeftNormal, RightNormal };

inline const char* side_name(NormalSide s) {
    return s == NormalSide::LeftNormal ? "left" : "right";
}

// Unit normal on the requested side of the parameterization at t.
Vec2 side_normal(const ParametricCurve& c, double t, NormalSide side);

// Supremum disk touching the curve only at S(t1), grown along the side normal.
// radius = min(r_curv, r_far): r_curv = 1/kappa toward the side (infinite when
// the curve bends away), r_far = first radius at which a second contact
// appears. t2 is the parameter of the limiting contact (t1 itself when the
// local curvature bound binds).
struct ContactDisk {
    double t1 = 0.0;
    NormalSide side = NormalSide::LeftNormal;
    Point2 center;       // meaningless when radius is infinite
    double radius = 0.0; // may be infinity
    double t2 = 0.0;
    bool curvature_limited = false;
};

ContactDisk contact_radius(const ParametricCurve& c, double t1, NormalSide side);
ContactDisk contact_radius(const CurveScan& scan, double t1, NormalSide side,
                           double r_cap);

enum class DividerKind { Regular, Endpoint, ZeroRadius };

inline const char* kind_name(DividerKind k) {
    switch (k) {
        case DividerKind::Regular: return "regular";
        case DividerKind::Endpoint: return "endpoint";
        case DividerKind::ZeroRadius: return "zero";
    }
    return "?";
}

// One computed point of the Divider: the center of a supremum contact disk.
struct DividerPoint {
    Point2 center;
    double radius = 0.0;
    double t1 = 0.0, t2 = 0.0;
    NormalSide side = NormalSide::LeftNormal;
    DividerKind kind = DividerKind::Regular;
    // Normal-line residual at t1, second-foot normality residual at t2, and the
    // equal-distance defect, all normalized to length units.
    double residual_eq8 = 0.0, residual_eq9 = 0.0, residual_eq10 = 0.0;
    int foot_count = 2;  // contacts found at the final radius (junctions > 2)

    double residual_max() const;
};

// Transversal self-intersection of the curve: S(t_a) = S(t_b), t_a != t_b.
struct Crossing {
    double t_a = 0.0, t_b = 0.0;
    Point2 point;
};

std::vector<Crossing> find_self_intersections(const ParametricCurve& c,
                                              int n_scan = 512);

// Polishes a seed to the defining system: the normal-line constraint at t1 is
// enforced exactly by keeping the center on the normal ray, and a safeguarded
// Newton drives the second-foot normality to machine precision with the
// equal-distance relation holding by construction. Certifies both feet as
// distance minima (second-derivative test, falling back to the higher-order
// rule when it degenerates); throws certification_error when a foot turns out
// to be a maximum and no_convergence_error when the iteration stalls.
DividerPoint newton_polish(const ParametricCurve& c, const DividerPoint& seed);

struct TraceConfig {
    int n_grid = 1024;
    int n_scan = kDefaultScan;
    double r_max_multiplier = 10.0;  // search ceiling, times curve diameter
    bool left = true;
    bool right = true;
};

struct DividerTrace {
    std::vector<DividerPoint> points;
    // Indices into points, grouped into polylines split at center jumps
    // exceeding 10x the local spacing.
    std::vector<std::vector<int>> polylines;
    int gaps = 0;      // grid samples with no finite disk
    int warnings = 0;  // samples dropped on polish/certification failure
};

// Sweeps t1 over the grid on the requested sides, polishes every finite
// contact disk, classifies Endpoint (t2 merged with t1) and ZeroRadius
// (self-intersection) points, and seeds one ZeroRadius point per crossing.
DividerTrace divider_trace(const ParametricCurve& c, const TraceConfig& cfg = {});

struct ValidationReport {
    int checked = 0;
    int violations = 0;
    std::vector<int> violating_indices;
};

// Containment check: every point's center must carry positive k_lct, or have a
// positive-k_lct point within 1e-4 * diameter (closure allowance). Centers of
// constant-distance profiles (circular-arc case) are exempt.
ValidationReport divider_validate(const std::vector<DividerPoint>& points,
                                  const ParametricCurve& c);

}  // namespace divider
