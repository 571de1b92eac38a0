#include "divider/divider_set.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "divider/evolute.hpp"
#include "divider/lclt.hpp"

namespace divider {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First-contact radius along the normal ray at q1: the disk of radius
// rho(t) tangent at q1 passes through S(t). Extends continuously to
// rho(t1) = 1/kappa_n. Points with the normal projection <= 0 are never
// engulfed (rho = inf).
struct ContactFn {
    const ParametricCurve& c;
    Point2 q1;
    Vec2 n;  // unit normal on the chosen side

    double rho(double t) const {
        const Vec2 delta = c.position(t) - q1;
        const double b = n.dot(delta);
        if (b <= 0.0) return kInf;
        return delta.norm2() / (2.0 * b);
    }
    // rho' = (A'B - AB') / (2B^2)
    double rho1(double t) const {
        const Vec2 delta = c.position(t) - q1;
        const Vec2 d1 = c.derivative(1, t);
        const double a = delta.norm2(), b = n.dot(delta);
        const double a1 = 2.0 * delta.dot(d1), b1 = n.dot(d1);
        return (a1 * b - a * b1) / (2.0 * b * b);
    }
    double rho2(double t) const {
        const Vec2 delta = c.position(t) - q1;
        const Vec2 d1 = c.derivative(1, t);
        const Vec2 d2 = c.derivative(2, t);
        const double a = delta.norm2(), b = n.dot(delta);
        const double a1 = 2.0 * delta.dot(d1), b1 = n.dot(d1);
        const double a2 = 2.0 * (d1.norm2() + delta.dot(d2)), b2 = n.dot(d2);
        const double num = a1 * b - a * b1;
        const double num1 = a2 * b - a * b2;
        return (num1 * b - 2.0 * num * b1) / (2.0 * b * b * b);
    }
};

// Curvature toward the side normal; r_curv = 1/kappa_n when positive.
double side_curvature(const ParametricCurve& c, double t, NormalSide side) {
    const double kappa = signed_curvature(c, t);
    return side == NormalSide::LeftNormal ? kappa : -kappa;
}

struct FarContact {
    double r = kInf;
    double t2 = 0.0;
    bool at_boundary = false;  // minimum on an open-curve domain endpoint
    bool found = false;
};

// Minimize rho over the scan grid away from t1, then polish the bracket with
// a safeguarded Newton on rho'. The exclusion window only hides the
// numerically unstable immediate neighborhood of t1; contacts collapsing
// toward t1 are represented by the curvature bound instead.
FarContact far_contact(const CurveScan& scan, const ContactFn& fn, double t1,
                       double r_cap) {
    const ParametricCurve& c = *scan.curve;
    const int n = scan.size();
    const double window = 1.5 * c.domain_length() / (n - (c.closed() ? 0 : 1));

    FarContact out;
    int best = -1;
    double best_rho = kInf;
    for (int i = 0; i < n; ++i) {
        if (c.param_distance(scan.t[i], t1) <= window) continue;
        const Vec2 delta = scan.pos[i] - fn.q1;
        const double b = fn.n.dot(delta);
        if (b <= 0.0) continue;
        const double rho = delta.norm2() / (2.0 * b);
        if (rho < best_rho) { best_rho = rho; best = i; }
    }
    if (best < 0 || best_rho > 4.0 * r_cap) return out;

    // bracket around the grid argmin (stay inside the domain for open curves)
    double lo = scan.t[best] - c.domain_length() / (n - (c.closed() ? 0 : 1));
    double hi = scan.t[best] + c.domain_length() / (n - (c.closed() ? 0 : 1));
    bool lo_clamped = false, hi_clamped = false;
    if (!c.closed()) {
        if (lo < c.t_lo()) { lo = c.t_lo(); lo_clamped = true; }
        if (hi > c.t_hi()) { hi = c.t_hi(); hi_clamped = true; }
    }

    double fa = fn.rho1(lo), fb = fn.rho1(hi);
    double t2;
    if (fa >= 0.0 && lo_clamped) {
        // profile increasing from the left domain end: boundary contact
        t2 = lo;
        out.at_boundary = true;
    } else if (fb <= 0.0 && hi_clamped) {
        t2 = hi;
        out.at_boundary = true;
    } else if (fa >= 0.0 || fb <= 0.0) {
        // argmin sits against the exclusion window or on a one-sided slope;
        // fall back to a golden-section sweep of the bracket
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lo, b2 = hi;
        double x1 = b2 - gr * (b2 - a), x2 = a + gr * (b2 - a);
        double f1 = fn.rho(x1), f2 = fn.rho(x2);
        for (int it = 0; it < 160 && (b2 - a) > 1e-13 * c.domain_length(); ++it) {
            if (f1 < f2) { b2 = x2; x2 = x1; f2 = f1; x1 = b2 - gr * (b2 - a); f1 = fn.rho(x1); }
            else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b2 - a); f2 = fn.rho(x2); }
        }
        t2 = 0.5 * (a + b2);
    } else {
        // safeguarded Newton on rho' inside the sign-change bracket
        t2 = scan.t[best];
        double a = lo, b2 = hi;
        for (int it = 0; it < 80; ++it) {
            const double f = fn.rho1(t2);
            if (f == 0.0) break;
            if (f > 0) b2 = t2; else a = t2;
            const double df = fn.rho2(t2);
            double tn = df != 0.0 ? t2 - f / df : 0.5 * (a + b2);
            if (!(tn > a && tn < b2)) tn = 0.5 * (a + b2);
            if (std::abs(tn - t2) < 1e-14 * c.domain_length()) { t2 = tn; break; }
            t2 = tn;
        }
    }

    out.r = fn.rho(t2);
    out.t2 = c.wrap(t2);
    out.found = std::isfinite(out.r);
    return out;
}

// Count the contacts realized at the final radius (junctions touch 3+ arcs).
int count_contacts(const CurveScan& scan, const ContactFn& fn, double r,
                   double t1, double window) {
    const ParametricCurve& c = *scan.curve;
    const double tol = std::max(1e-9 * c.diameter(), 1e-12);
    int count = 1;  // q1 itself
    bool in_arc = false;
    for (int i = 0; i < scan.size(); ++i) {
        if (c.param_distance(scan.t[i], t1) <= window) { in_arc = false; continue; }
        const Vec2 delta = scan.pos[i] - fn.q1;
        const double b = fn.n.dot(delta);
        const double rho = b > 0 ? delta.norm2() / (2.0 * b) : kInf;
        const bool touching = rho <= r + tol;
        if (touching && !in_arc) ++count;
        in_arc = touching;
    }
    return count;
}

struct Certification {
    bool is_min = false;
    int order = 0;
};

// Eq-(11)-form second-derivative test of the distance profile from the disk
// center, with the higher-order fallback when it vanishes.
Certification certify_minimum(const ParametricCurve& c, const Point2& center,
                              double t) {
    const Vec2 delta = c.position(t) - center;
    const Vec2 d1 = c.derivative(1, t);
    const Vec2 d2 = c.derivative(2, t);
    const double g2 = delta.dot(d2) + d1.norm2();
    const double g2_scale = std::abs(delta.dot(d2)) + d1.norm2();
    if (std::abs(g2) > 1e-7 * g2_scale) return {g2 > 0, 2};

    const Vec2 d3 = c.derivative(3, t);
    const double g3 = delta.dot(d3) + 3.0 * d1.dot(d2);
    const double g3_scale = delta.norm() * d3.norm() + 3.0 * d1.norm() * d2.norm() + 1e-300;
    if (std::abs(g3) > 1e-6 * g3_scale) return {false, 3};

    auto g = [&](double u) { return 0.5 * (c.position(u) - center).norm2(); };
    const double h = 1e-3 * c.domain_length();
    const double g4 =
        (g(t - 2 * h) - 4 * g(t - h) + 6 * g(t) - 4 * g(t + h) + g(t + 2 * h)) /
        (h * h * h * h);
    const double g4_scale = std::abs(g(t)) / (h * h) + 1e-300;
    if (std::abs(g4) > 1e-5 * g4_scale) return {g4 > 0, 4};
    return {true, 0};  // flat profile (constant-curvature arc)
}

void fill_residuals(const ParametricCurve& c, DividerPoint& p) {
    const Point2 q1 = c.position(p.t1);
    const Point2 q2 = c.position(p.t2);
    const Vec2 u1 = c.derivative(1, p.t1).normalized();
    const Vec2 u2 = c.derivative(1, p.t2).normalized();
    p.residual_eq8 = std::abs((q1 - p.center).dot(u1));
    p.residual_eq9 = std::abs((q2 - p.center).dot(u2));
    p.residual_eq10 = std::abs((q1 - p.center).norm() - (q2 - p.center).norm());
}

void run_parallel(int jobs, const std::function<void(int)>& job) {
    unsigned hw = std::thread::hardware_concurrency();
    const int workers = std::max(1, std::min<int>(jobs, hw ? static_cast<int>(hw) : 2));
    if (workers == 1) {
        for (int i = 0; i < jobs; ++i) job(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) job(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

double DividerPoint::residual_max() const {
    return std::max({residual_eq8, residual_eq9, residual_eq10});
}

Vec2 side_normal(const ParametricCurve& c, double t, NormalSide side) {
    const Vec2 v = c.derivative(1, t);
    if (v.norm() < 1e-9 * c.deriv_scale())
        throw singular_parameterization_error("normal undefined where S' vanishes");
    const Vec2 left = v.normalized().perp();
    return side == NormalSide::LeftNormal ? left : left * -1.0;
}

ContactDisk contact_radius(const ParametricCurve& c, double t1, NormalSide side) {
    return contact_radius(CurveScan::build(c, kDefaultScan), t1, side,
                          10.0 * c.diameter());
}

ContactDisk contact_radius(const CurveScan& scan, double t1, NormalSide side,
                           double r_cap) {
    const ParametricCurve& c = *scan.curve;
    ContactDisk disk;
    disk.t1 = t1;
    disk.side = side;

    const Vec2 n = side_normal(c, t1, side);
    const double kn = side_curvature(c, t1, side);
    const double r_curv = kn > 1e-12 / c.diameter() ? 1.0 / kn : kInf;

    ContactFn fn{c, c.position(t1), n};
    const FarContact far = far_contact(scan, fn, t1, r_cap);
    const double r_far = far.found ? far.r : kInf;

    if (r_curv <= r_far) {
        disk.radius = r_curv;
        disk.t2 = t1;
        disk.curvature_limited = true;
    } else {
        disk.radius = r_far;
        disk.t2 = far.found ? far.t2 : t1;
        disk.curvature_limited = false;
    }
    if (std::isfinite(disk.radius))
        disk.center = fn.q1 + n * disk.radius;
    else
        disk.center = Point2{kInf, kInf};
    return disk;
}

std::vector<Crossing> find_self_intersections(const ParametricCurve& c, int n_scan) {
    const CurveScan scan = CurveScan::build(c, n_scan);
    const int n = scan.size();
    const double step = c.domain_length() / n_scan;
    const double chord = 2.5 * c.deriv_scale() * step;
    const double merge_param = 4.0 * step;

    std::vector<Crossing> found;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (c.param_distance(scan.t[i], scan.t[j]) < merge_param) continue;
            if ((scan.pos[i] - scan.pos[j]).norm() > chord) continue;
            // Newton on S(ta) - S(tb) = 0
            double ta = scan.t[i], tb = scan.t[j];
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                const Vec2 f = c.position(ta) - c.position(tb);
                const Vec2 da = c.derivative(1, ta);
                const Vec2 db = c.derivative(1, tb);
                const double det = da.x * (-db.y) - (-db.x) * da.y;
                if (std::abs(det) < 1e-12 * c.deriv_scale() * c.deriv_scale()) break;
                const double sa = (-f.x * (-db.y) - (-db.x) * (-f.y)) / det;
                const double sb = (da.x * (-f.y) - (-f.x) * da.y) / det;
                ta += sa;
                tb += sb;
                if (f.norm() < 1e-13 * c.diameter() &&
                    std::abs(sa) + std::abs(sb) < 1e-13 * c.domain_length()) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            ta = c.wrap(ta);
            tb = c.wrap(tb);
            if (c.param_distance(ta, tb) < merge_param) continue;
            if (!c.closed() &&
                (ta < c.t_lo() || ta > c.t_hi() || tb < c.t_lo() || tb > c.t_hi()))
                continue;
            if ((c.position(ta) - c.position(tb)).norm() > 1e-9 * c.diameter()) continue;
            if (ta > tb) std::swap(ta, tb);
            Crossing cr{ta, tb, c.position(ta)};
            bool dup = false;
            for (const Crossing& e : found)
                if ((e.point - cr.point).norm() < 1e-6 * c.diameter()) { dup = true; break; }
            if (!dup) found.push_back(cr);
        }
    }
    std::sort(found.begin(), found.end(),
              [](const Crossing& a, const Crossing& b) { return a.t_a < b.t_a; });
    return found;
}

DividerPoint newton_polish(const ParametricCurve& c, const DividerPoint& seed) {
    DividerPoint out = seed;
    const Vec2 n = side_normal(c, seed.t1, seed.side);
    ContactFn fn{c, c.position(seed.t1), n};

    if (seed.kind == DividerKind::ZeroRadius || seed.radius < 1e-12 * c.diameter()) {
        fill_residuals(c, out);
        return out;
    }

    if (c.param_distance(seed.t2, seed.t1) > 1e-9 * c.domain_length()) {
        // descend rho' to machine precision; the equal-distance and
        // normal-line relations then hold by construction of the center
        double t2 = seed.t2;
        double f = fn.rho1(t2);
        for (int it = 0; it < 60; ++it) {
            const double df = fn.rho2(t2);
            if (df == 0.0 || !std::isfinite(df)) break;
            const double tn = t2 - f / df;
            if (!c.closed() && (tn < c.t_lo() || tn > c.t_hi())) break;
            const double fnew = fn.rho1(tn);
            if (std::abs(fnew) >= std::abs(f) &&
                std::abs(tn - t2) < 1e-15 * c.domain_length())
                break;
            t2 = tn;
            f = fnew;
            if (f == 0.0) break;
        }
        const double res_scale = c.diameter() * c.deriv_scale();
        const bool boundary_contact =
            !c.closed() && (c.param_distance(t2, c.t_lo()) < 1e-12 * c.domain_length() ||
                            c.param_distance(t2, c.t_hi()) < 1e-12 * c.domain_length());
        if (!boundary_contact && std::abs(f) * fn.rho(t2) > 1e-11 * res_scale)
            throw no_convergence_error("second-foot polish did not converge");
        out.t2 = c.wrap(t2);
        out.radius = fn.rho(t2);
        out.center = fn.q1 + n * out.radius;
    } else {
        // osculating limit: the disk is the curvature-bound one
        const double kn = side_curvature(c, seed.t1, seed.side);
        if (kn <= 0) throw certification_error("osculating seed on a side the curve bends away from");
        out.radius = 1.0 / kn;
        out.center = fn.q1 + n * out.radius;
        out.t2 = seed.t1;
    }

    fill_residuals(c, out);

    const Certification c1 = certify_minimum(c, out.center, out.t1);
    const Certification c2 = certify_minimum(c, out.center, out.t2);
    if (!c1.is_min || !c2.is_min)
        throw certification_error("a contact foot is not a distance minimum");
    return out;
}

DividerTrace divider_trace(const ParametricCurve& c, const TraceConfig& cfg) {
    if (cfg.n_grid < 128) throw std::invalid_argument("n_grid must be at least 128");
    DividerTrace trace;
    const double r_max = cfg.r_max_multiplier * c.diameter();
    const double zero_tol = 1e-6 * c.diameter();
    const double merge_tol = 1e-6 * c.domain_length();

    // Constant-curvature closed curve: the center is the whole divider.
    bool const_curv = true;
    {
        double k0 = signed_curvature(c, c.t_lo());
        for (int i = 1; i < 64 && const_curv; ++i) {
            const double t = c.t_lo() + c.domain_length() * i / 64.0;
            if (std::abs(signed_curvature(c, t) - k0) > 1e-9 * std::max(std::abs(k0), 1e-300))
                const_curv = false;
        }
        if (const_curv && c.closed() && std::abs(k0) > 1e-9 / c.diameter()) {
            DividerPoint p;
            p.t1 = c.t_lo();
            p.t2 = c.wrap(c.t_lo() + 0.5 * c.domain_length());
            p.side = k0 > 0 ? NormalSide::LeftNormal : NormalSide::RightNormal;
            p.radius = 1.0 / std::abs(k0);
            p.center = c.position(p.t1) + side_normal(c, p.t1, p.side) * p.radius;
            p.kind = DividerKind::Regular;
            p.foot_count = 0;  // every curve point touches
            fill_residuals(c, p);
            trace.points.push_back(p);
            trace.polylines.push_back({0});
            return trace;
        }
    }

    const CurveScan scan = CurveScan::build(c, cfg.n_scan);
    std::vector<NormalSide> sides;
    if (cfg.left) sides.push_back(NormalSide::LeftNormal);
    if (cfg.right) sides.push_back(NormalSide::RightNormal);

    const int grid_count = c.closed() ? cfg.n_grid : cfg.n_grid + 1;
    const double window = 1.5 * c.domain_length() / cfg.n_scan;

    struct Slot {
        bool have = false;
        bool gap = false;
        bool warn = false;
        DividerPoint point;
    };

    for (const NormalSide side : sides) {
        std::vector<Slot> slots(grid_count);
        run_parallel(grid_count, [&](int j) {
            Slot& slot = slots[j];
            const double t1 = c.t_lo() + c.domain_length() * j / cfg.n_grid;
            try {
                const ContactDisk disk = contact_radius(scan, t1, side, r_max);
                if (!std::isfinite(disk.radius) || disk.radius > r_max) {
                    slot.gap = true;
                    return;
                }
                DividerPoint seed;
                seed.center = disk.center;
                seed.radius = disk.radius;
                seed.t1 = t1;
                seed.t2 = disk.t2;
                seed.side = side;
                seed.kind = DividerKind::Regular;
                DividerPoint polished = newton_polish(c, seed);
                if (polished.radius > r_max) {
                    slot.gap = true;
                    return;
                }
                if (polished.radius < zero_tol)
                    polished.kind = DividerKind::ZeroRadius;
                else if (c.param_distance(polished.t1, polished.t2) < merge_tol)
                    polished.kind = DividerKind::Endpoint;
                if (polished.kind == DividerKind::Endpoint) {
                    // pin the osculating data exactly
                    polished.t2 = polished.t1;
                    const double kn = side_curvature(c, t1, side);
                    polished.radius = 1.0 / kn;
                    polished.center = evolute_point(c, t1);
                }
                polished.foot_count =
                    count_contacts(scan, ContactFn{c, c.position(t1), side_normal(c, t1, side)},
                                   polished.radius, t1, window);
                slot.have = true;
                slot.point = polished;
            } catch (const certification_error&) {
                slot.warn = true;
            } catch (const no_convergence_error&) {
                slot.warn = true;
            } catch (const singular_parameterization_error&) {
                slot.warn = true;
            }
        });

        // deterministic merge in t1 order, grouping polylines as we go
        std::vector<int> current;
        std::vector<double> recent_gaps;
        auto flush = [&]() {
            if (current.size() >= 2) trace.polylines.push_back(current);
            current.clear();
            recent_gaps.clear();
        };
        for (int j = 0; j < grid_count; ++j) {
            const Slot& slot = slots[j];
            if (slot.gap) ++trace.gaps;
            if (slot.warn) ++trace.warnings;
            if (!slot.have) {
                flush();
                continue;
            }
            // skip duplicate centers from adjacent samples (circle-like arcs)
            if (!current.empty()) {
                const DividerPoint& prev = trace.points[current.back()];
                const double jump = (slot.point.center - prev.center).norm();
                if (jump < 1e-12 * c.diameter() && slot.point.kind == prev.kind) {
                    continue;
                }
                double local = 0.0;
                for (double g : recent_gaps) local += g;
                if (!recent_gaps.empty()) local /= recent_gaps.size();
                if (!recent_gaps.empty() && jump > 10.0 * std::max(local, 1e-12 * c.diameter()))
                    flush();
                else {
                    recent_gaps.push_back(jump);
                    if (recent_gaps.size() > 8) recent_gaps.erase(recent_gaps.begin());
                }
            }
            trace.points.push_back(slot.point);
            current.push_back(static_cast<int>(trace.points.size()) - 1);
        }
        flush();
    }

    // one ZeroRadius point per transversal self-intersection
    for (const Crossing& cr : find_self_intersections(c)) {
        DividerPoint p;
        p.center = cr.point;
        p.radius = 0.0;
        p.t1 = cr.t_a;
        p.t2 = cr.t_b;
        p.side = NormalSide::LeftNormal;
        p.kind = DividerKind::ZeroRadius;
        fill_residuals(c, p);
        p.foot_count = 2;
        trace.points.push_back(p);
    }
    return trace;
}

ValidationReport divider_validate(const std::vector<DividerPoint>& points,
                                  const ParametricCurve& c) {
    ValidationReport report;
    const CurveScan scan = CurveScan::build(c, kDefaultScan);
    const double allowance = 1e-4 * c.diameter();

    for (size_t i = 0; i < points.size(); ++i) {
        const DividerPoint& p = points[i];
        ++report.checked;
        if (lclt_curvature(scan, p.center).k_lct > 0) continue;

        // centers of constant-distance profiles (circular-arc case) sit outside
        // Pi(S) by construction and are exempt from the containment theorem
        if (all_feet(scan, p.center).constant_profile) continue;

        // closure allowance: probe a ring around the center
        bool ok = false;
        for (int k = 0; k < 8 && !ok; ++k) {
            const double ang = 2.0 * 3.14159265358979323846 * k / 8.0;
            const Point2 probe = p.center + Point2{std::cos(ang), std::sin(ang)} * allowance;
            ok = lclt_curvature(scan, probe).k_lct > 0;
        }
        if (!ok) {
            ++report.violations;
            report.violating_indices.push_back(static_cast<int>(i));
        }
    }
    return report;
}

}  // namespace divider
