#include "divider/feet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divider {

namespace {

// g(t) = 1/2 |S(t) - p|^2 and its first three derivatives.
struct Profile {
    const ParametricCurve& c;
    Point2 p;

    double g(double t) const { return 0.5 * (c.position(t) - p).norm2(); }
    double g1(double t) const { return (c.position(t) - p).dot(c.derivative(1, t)); }
    double g2(double t) const {
        const Vec2 d1 = c.derivative(1, t);
        return (c.position(t) - p).dot(c.derivative(2, t)) + d1.norm2();
    }
    double g3(double t) const {
        const Vec2 d1 = c.derivative(1, t);
        const Vec2 d2 = c.derivative(2, t);
        return (c.position(t) - p).dot(c.derivative(3, t)) + 3.0 * d1.dot(d2);
    }
    double g4_fd(double t, double h) const {
        return (g(t - 2 * h) - 4 * g(t - h) + 6 * g(t) - 4 * g(t + h) + g(t + 2 * h)) /
               (h * h * h * h);
    }
};

// Classify a stationary point by the lowest non-vanishing derivative of g.
void classify(const Profile& pr, double t, Foot& foot, double domain_len) {
    const Vec2 d1 = pr.c.derivative(1, t);
    const Vec2 d2 = pr.c.derivative(2, t);
    const double g2 = pr.g2(t);
    const double g2_scale = std::abs((pr.c.position(t) - pr.p).dot(d2)) + d1.norm2();
    if (std::abs(g2) > 1e-7 * g2_scale) {
        foot.kind = g2 > 0 ? FootKind::LocalMin : FootKind::LocalMax;
        foot.order = 2;
        return;
    }
    const double g3 = pr.g3(t);
    const double g3_scale =
        (pr.c.position(t) - pr.p).norm() * pr.c.derivative(3, t).norm() +
        3.0 * d1.norm() * d2.norm() + 1e-300;
    if (std::abs(g3) > 1e-6 * g3_scale) {
        // odd order: neither minimum nor maximum
        foot.kind = FootKind::Degenerate;
        foot.order = 3;
        return;
    }
    const double h = 1e-3 * domain_len;
    const double g4 = pr.g4_fd(t, h);
    const double g4_scale = std::abs(pr.g(t)) / (h * h) + 1e-300;
    if (std::abs(g4) > 1e-5 * g4_scale) {
        foot.kind = g4 > 0 ? FootKind::LocalMin : FootKind::LocalMax;
        foot.order = 4;
        return;
    }
    foot.kind = FootKind::Degenerate;
    foot.order = 0;
}

Foot make_foot(const Profile& pr, double t) {
    Foot f;
    f.t = t;
    f.point = pr.c.position(t);
    f.distance = (f.point - pr.p).norm();
    const double speed = pr.c.derivative(1, t).norm();
    f.residual = speed > 0 ? std::abs(pr.g1(t)) / speed : 0.0;
    classify(pr, t, f, pr.c.domain_length());
    return f;
}

// Safeguarded Newton on g1 inside an optional bracket.
double refine_root(const Profile& pr, double t_seed, bool have_bracket, double lo,
                   double hi, double param_tol) {
    double t = t_seed;
    double a = lo, b = hi;
    double fa = have_bracket ? pr.g1(a) : 0.0;
    for (int it = 0; it < 60; ++it) {
        const double f = pr.g1(t);
        if (f == 0.0) return t;
        if (have_bracket) {
            if ((f > 0) == (fa > 0)) a = t; else b = t;
        }
        const double df = pr.g2(t);
        double step = df != 0.0 ? -f / df : std::numeric_limits<double>::infinity();
        double tn = t + step;
        if (have_bracket && !(tn > a && tn < b)) tn = 0.5 * (a + b);  // bisect
        if (std::abs(tn - t) < param_tol) return tn;
        t = tn;
    }
    const double f_final = std::abs(pr.g1(t));
    const double f_scale = pr.c.diameter() * pr.c.deriv_scale();
    if (f_final > 1e-10 * f_scale)
        throw no_convergence_error("foot refinement did not converge");
    return t;
}

}  // namespace

CurveScan CurveScan::build(const ParametricCurve& c, int n) {
    CurveScan s;
    s.curve = &c;
    const int count = c.closed() ? n : n + 1;
    s.t.resize(count);
    s.pos.resize(count);
    s.d1.resize(count);
    for (int i = 0; i < count; ++i) {
        const double t = c.t_lo() + c.domain_length() * i / n;
        s.t[i] = t;
        s.pos[i] = c.position(t);
        s.d1[i] = c.derivative(1, t);
    }
    return s;
}

Foot foot_refine(const ParametricCurve& c, Point2 p, double t_seed) {
    if (!p.finite()) throw std::invalid_argument("query point not finite");
    Profile pr{c, p};
    const double param_tol = 1e-12 * c.domain_length();
    double t = refine_root(pr, t_seed, false, 0, 0, param_tol);
    t = c.wrap(t);
    if (!c.closed() && (t < c.t_lo() - param_tol || t > c.t_hi() + param_tol))
        throw out_of_domain_error("foot left the parameter domain");
    if (!c.closed()) t = std::clamp(t, c.t_lo(), c.t_hi());
    return make_foot(pr, t);
}

FeetResult all_feet(const ParametricCurve& c, Point2 p, int n_scan) {
    if (n_scan < 64) throw std::invalid_argument("n_scan must be at least 64");
    return all_feet(CurveScan::build(c, n_scan), p);
}

FeetResult all_feet(const CurveScan& scan, Point2 p) {
    const ParametricCurve& c = *scan.curve;
    if (!p.finite()) throw std::invalid_argument("query point not finite");
    Profile pr{c, p};
    FeetResult out;

    const int n = scan.size();
    std::vector<double> dist(n), res(n);
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0, dsum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 delta = scan.pos[i] - p;
        dist[i] = delta.norm();
        res[i] = delta.dot(scan.d1[i]);
        dmin = std::min(dmin, dist[i]);
        dmax = std::max(dmax, dist[i]);
        dsum += dist[i];
    }

    // Constant profile (query at the center of a circular arc): the whole
    // curve is one degenerate foot.
    const double dmean = dsum / n;
    if (dmax - dmin < 1e-9 * std::max(dmean, 1e-300)) {
        Foot f;
        f.t = c.t_lo();
        f.point = c.position(f.t);
        f.distance = dmean;
        f.kind = FootKind::Degenerate;
        f.order = 0;
        f.residual = 0.0;
        out.feet.push_back(f);
        out.constant_profile = true;
        return out;
    }

    const double param_tol = 1e-12 * c.domain_length();
    std::vector<Foot> feet;
    const int pairs = c.closed() ? n : n - 1;
    for (int i = 0; i < pairs; ++i) {
        const int j = (i + 1) % n;
        const double fi = res[i], fj = res[j];
        double t_root = std::numeric_limits<double>::quiet_NaN();
        if (fi == 0.0) {
            t_root = scan.t[i];
        } else if ((fi > 0) != (fj > 0)) {
            double lo = scan.t[i];
            double hi = c.closed() && j == 0 ? c.t_hi() : scan.t[j];
            try {
                const double seed = lo + (hi - lo) * fi / (fi - fj);
                t_root = refine_root(pr, seed, true, lo, hi, param_tol);
            } catch (const no_convergence_error&) {
                ++out.warnings;
                continue;
            }
        } else {
            continue;
        }
        feet.push_back(make_foot(pr, c.wrap(t_root)));
    }

    // Open-curve endpoints join as candidate feet with one-sided classification.
    if (!c.closed()) {
        for (const double te : {c.t_lo(), c.t_hi()}) {
            Foot f;
            f.t = te;
            f.point = c.position(te);
            f.distance = (f.point - p).norm();
            const double slope = pr.g1(te);
            const double into = te == c.t_lo() ? slope : -slope;  // toward interior
            const double slope_scale = f.distance * c.deriv_scale() + 1e-300;
            if (std::abs(slope) < 1e-10 * slope_scale) {
                classify(pr, te, f, c.domain_length());
            } else {
                f.kind = into > 0 ? FootKind::LocalMin : FootKind::LocalMax;
                f.order = 1;
            }
            const double speed = c.derivative(1, te).norm();
            f.residual = speed > 0 ? std::abs(slope) / speed : 0.0;
            feet.push_back(f);
        }
    }

    // merge feet from adjacent brackets, keeping the closer representative
    std::sort(feet.begin(), feet.end(),
              [](const Foot& a, const Foot& b) { return a.t < b.t; });
    const double merge_tol = 1e-6 * c.domain_length();
    std::vector<Foot> merged;
    for (const Foot& f : feet) {
        if (!merged.empty() && c.param_distance(merged.back().t, f.t) < merge_tol) {
            if (f.distance < merged.back().distance) merged.back() = f;
        } else {
            merged.push_back(f);
        }
    }
    if (c.closed() && merged.size() > 1 &&
        c.param_distance(merged.front().t, merged.back().t) < merge_tol) {
        if (merged.back().distance < merged.front().distance)
            merged.front() = merged.back();
        merged.pop_back();
    }

    std::stable_sort(merged.begin(), merged.end(), [](const Foot& a, const Foot& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.t < b.t);
    });
    out.feet = std::move(merged);
    return out;
}

}  // namespace divider
