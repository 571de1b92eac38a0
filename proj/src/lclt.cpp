#include "divider/lclt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

namespace divider {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest stationary value strictly inside the increasing-t arc from one foot
// to another; this is the height of the barrier separating their sublevel
// components. Returns -inf when the arc holds no stationary point.
double arc_barrier(const ParametricCurve& c, const std::vector<Foot>& feet,
                   double from, double to) {
    const double len = c.domain_length();
    const double tol = 1e-9 * len;
    double barrier = -kInf;
    for (const Foot& f : feet) {
        if (c.param_distance(f.t, from) < tol || c.param_distance(f.t, to) < tol)
            continue;
        bool inside;
        if (c.closed()) {
            const double span = std::fmod(to - from + 2 * len, len);
            const double offset = std::fmod(f.t - from + 2 * len, len);
            inside = offset > 0 && offset < span;
        } else {
            inside = f.t > std::min(from, to) && f.t < std::max(from, to);
        }
        if (inside) barrier = std::max(barrier, f.distance);
    }
    return barrier;
}

// Minimize the raw distance profile in [a, b] by golden section; keeps the
// oracle independent of the Newton-based foot machinery.
double golden_min(const ParametricCurve& c, Point2 p, double a, double b) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = (c.position(x1) - p).norm(), f2 = (c.position(x2) - p).norm();
    for (int it = 0; it < 200 && (b - a) > 1e-14 * c.domain_length(); ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = (c.position(x1) - p).norm();
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = (c.position(x2) - p).norm();
        }
    }
    return std::min(f1, f2);
}

void run_rows_parallel(int ny, const std::function<void(int)>& row_job) {
    unsigned hw = std::thread::hardware_concurrency();
    const int workers = std::max(1, std::min<int>(ny, hw ? static_cast<int>(hw) : 2));
    if (workers == 1) {
        for (int iy = 0; iy < ny; ++iy) row_job(iy);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int iy = next.fetch_add(1); iy < ny; iy = next.fetch_add(1)) row_job(iy);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

LcltResult lclt_curvature(const ParametricCurve& c, Point2 p) {
    return lclt_curvature(CurveScan::build(c, kDefaultScan), p);
}

LcltResult lclt_curvature(const CurveScan& scan, Point2 p) {
    const ParametricCurve& c = *scan.curve;
    LcltResult out;
    out.k_lct = 0.0;
    out.r_lct = kInf;

    FeetResult fr = all_feet(scan, p);
    if (fr.constant_profile) return out;  // circle seen from its center

    for (const Foot& f : fr.feet)
        if (f.kind == FootKind::LocalMin) out.feet_used.push_back(f);
    if (out.feet_used.size() < 2) return out;

    const double r2 = out.feet_used[1].distance;

    // Disconnection guard: the two lowest minima must be separated by barriers
    // strictly above r2 on every connecting arc, otherwise no ball of radius
    // r2 meets the curve in a disconnected set. Barrier and minimum values are
    // refined critical values, so the strictness margin only needs to clear
    // round-off.
    const double eps = 1e-12 * c.diameter();
    const double t1 = out.feet_used[0].t;
    const double t2 = out.feet_used[1].t;
    bool separated = arc_barrier(c, fr.feet, t1, t2) > r2 + eps;
    if (separated && c.closed())
        separated = arc_barrier(c, fr.feet, t2, t1) > r2 + eps;
    if (!separated) return out;

    out.r_lct = r2;
    out.k_lct = 1.0 / r2;
    out.member_of_pi = true;
    return out;
}

double disconnection_radius_oracle(const ParametricCurve& c, Point2 p, int n) {
    if (n < 1000) throw std::invalid_argument("oracle needs n >= 1000");
    const bool closed = c.closed();
    const int count = closed ? n : n + 1;
    std::vector<double> d(count);
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) {
        ts[i] = c.t_lo() + c.domain_length() * i / n;
        d[i] = (c.position(ts[i]) - p).norm();
    }

    // activate samples in distance order; a new component born while another
    // is already alive marks the smallest disconnecting radius
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<char> active(count, 0);
    int comps = 0;
    int birth_idx = -1;
    for (const int i : order) {
        const int prev = i == 0 ? (closed ? count - 1 : -1) : i - 1;
        const int next = i == count - 1 ? (closed ? 0 : -1) : i + 1;
        const bool lp = prev >= 0 && active[prev];
        const bool lnext = next >= 0 && active[next];
        if (lp && lnext) --comps;
        else if (!lp && !lnext) ++comps;
        active[i] = 1;
        if (comps >= 2) { birth_idx = i; break; }
    }
    if (birth_idx < 0) return kInf;

    // refine the birth value: it is a local minimum of the profile inside the
    // bracket around the birth sample
    const double step = c.domain_length() / n;
    double a = ts[birth_idx] - step, b = ts[birth_idx] + step;
    if (!closed) {
        a = std::max(a, c.t_lo());
        b = std::min(b, c.t_hi());
    }
    return golden_min(c, p, a, b);
}

Raster pi_set_raster(const ParametricCurve& c, Window window, int nx, int ny,
                     int n_scan) {
    if (nx < 16 || ny < 16) throw std::invalid_argument("resolution must be >= 16x16");
    if (!(window.width() > 0 && window.height() > 0))
        throw std::invalid_argument("empty raster window");
    Raster r;
    r.window = window;
    r.nx = nx;
    r.ny = ny;
    r.values.assign(static_cast<size_t>(nx) * ny, 0.0);
    const CurveScan scan = CurveScan::build(c, n_scan);
    run_rows_parallel(ny, [&](int iy) {
        for (int ix = 0; ix < nx; ++ix)
            r.at(ix, iy) = lclt_curvature(scan, r.cell_center(ix, iy)).k_lct;
    });
    return r;
}

}  // namespace divider
