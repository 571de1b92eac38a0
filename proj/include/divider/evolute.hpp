#pragma once

#include <vector>

#include "divider/curve.hpp"
#include "divider/feet.hpp"

namespace divider {

enum class CuspKind { MaxCurvature, MinCurvature };

// Cusp of the evolute = osculating-circle center at a curvature extremum.
struct EvoluteCusp {
    double t = 0.0;
    Point2 center;
    double radius = 0.0;  // 1 / |kappa(t)|
    CuspKind kind = CuspKind::MaxCurvature;
};

// Osculating-circle center S(t) + N(t)/kappa(t). Throws zero_curvature_error
// when |kappa| is below 1e-9 / diameter (center at infinity).
Point2 evolute_point(const ParametricCurve& c, double t);

// All roots of kappa'(t), labeled by whether |kappa| is locally maximal or
// minimal. Constant-curvature curves yield an empty list.
std::vector<EvoluteCusp> find_cusps(const ParametricCurve& c, int n_scan = kDefaultScan);

enum class ContactOrder { Second, ThirdOrHigher };

// ThirdOrHigher iff kappa'(t) = 0 within tolerance (vertex).
ContactOrder osculating_contact_order(const ParametricCurve& c, double t);

}  // namespace divider
