#include "divider/evolute.hpp"

#include <algorithm>
#include <cmath>

namespace divider {

Point2 evolute_point(const ParametricCurve& c, double t) {
    const double kappa = signed_curvature(c, t);
    if (std::abs(kappa) < 1e-9 / c.diameter())
        throw zero_curvature_error("evolute point at infinity (kappa ~ 0)");
    const Vec2 n = c.derivative(1, t).normalized().perp();
    return c.position(t) + n / kappa;
}

std::vector<EvoluteCusp> find_cusps(const ParametricCurve& c, int n_scan) {
    if (n_scan < 64) throw std::invalid_argument("n_scan must be at least 64");
    const int n = c.closed() ? n_scan : n_scan + 1;
    std::vector<double> ts(n), kp(n), kv(n);
    double k_lo = std::numeric_limits<double>::infinity(), k_hi = -k_lo;
    for (int i = 0; i < n; ++i) {
        ts[i] = c.t_lo() + c.domain_length() * i / n_scan;
        kp[i] = curvature_derivative(c, ts[i]);
        kv[i] = signed_curvature(c, ts[i]);
        k_lo = std::min(k_lo, kv[i]);
        k_hi = std::max(k_hi, kv[i]);
    }
    // constant curvature (circle, straight line): no vertices
    const double k_scale = std::max(std::abs(k_lo), std::abs(k_hi));
    if (k_hi - k_lo < 1e-9 * std::max(k_scale, 1e-300)) return {};

    std::vector<double> roots;
    const int pairs = c.closed() ? n : n - 1;
    for (int i = 0; i < pairs; ++i) {
        const int j = (i + 1) % n;
        double fa = kp[i], fb = kp[j];
        if (fa == 0.0) {
            roots.push_back(ts[i]);
            continue;
        }
        if ((fa > 0) == (fb > 0)) continue;
        double a = ts[i];
        double b = c.closed() && j == 0 ? c.t_hi() : ts[j];
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = curvature_derivative(c, m);
            if (fm == 0.0) { a = b = m; break; }
            if ((fm > 0) == (fa > 0)) { a = m; fa = fm; } else { b = m; }
        }
        roots.push_back(0.5 * (a + b));
    }

    std::sort(roots.begin(), roots.end());
    const double merge_tol = 1e-6 * c.domain_length();
    std::vector<EvoluteCusp> cusps;
    for (double t : roots) {
        t = c.wrap(t);
        if (!cusps.empty() && c.param_distance(cusps.back().t, t) < merge_tol) continue;
        const double kappa = signed_curvature(c, t);
        if (std::abs(kappa) < 1e-9 / c.diameter()) continue;  // flat vertex, no center
        EvoluteCusp cusp;
        cusp.t = t;
        cusp.center = evolute_point(c, t);
        cusp.radius = 1.0 / std::abs(kappa);
        // label by comparing |kappa| against nearby samples; double roots keep
        // whichever side dominates
        const double h = c.domain_length() / n_scan;
        const double before = std::abs(signed_curvature(c, c.wrap(t - h)));
        const double after = std::abs(signed_curvature(c, c.wrap(t + h)));
        cusp.kind = std::abs(kappa) >= 0.5 * (before + after) ? CuspKind::MaxCurvature
                                                              : CuspKind::MinCurvature;
        cusps.push_back(cusp);
    }
    if (cusps.size() > 1) {
        const EvoluteCusp& first = cusps.front();
        const EvoluteCusp& last = cusps.back();
        if (c.closed() && c.param_distance(first.t, last.t) < merge_tol) cusps.pop_back();
    }
    return cusps;
}

ContactOrder osculating_contact_order(const ParametricCurve& c, double t) {
    // scale from a coarse sweep of |kappa'|
    const int n = 256;
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = c.t_lo() + c.domain_length() * i / n;
        sup = std::max(sup, std::abs(curvature_derivative(c, u)));
    }
    const double tol = 1e-7 * std::max(sup, 1e-300);
    return std::abs(curvature_derivative(c, t)) <= tol ? ContactOrder::ThirdOrHigher
                                                       : ContactOrder::Second;
}

}  // namespace divider
