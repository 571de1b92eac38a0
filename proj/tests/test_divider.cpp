#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "divider/divider_set.hpp"
#include "divider/evolute.hpp"
#include "divider/lclt.hpp"

using namespace divider;

namespace {

const double kPi = std::acos(-1.0);

// Brute-force supremum radius: shrink over a dense sample of first-contact
// radii along the normal ray. Independent of the library's scan/refine path.
double brute_contact_radius(const ParametricCurve& c, double t1, NormalSide side,
                            int n = 400000) {
    const Point2 q1 = c.position(t1);
    const Vec2 nrm = side_normal(c, t1, side);
    const double kappa = signed_curvature(c, t1);
    const double kn = side == NormalSide::LeftNormal ? kappa : -kappa;
    double best = kn > 0 ? 1.0 / kn : std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = c.t_lo() + c.domain_length() * i / n;
        if (c.param_distance(t, t1) < 1e-4 * c.domain_length()) continue;
        const Vec2 d = c.position(t) - q1;
        const double b = nrm.dot(d);
        if (b <= 0) continue;
        best = std::min(best, d.norm2() / (2 * b));
    }
    return best;
}

}  // namespace

TEST_CASE("contact disks of the unit circle") {
    const auto circ = ParametricCurve::circle(1.0);
    for (double t1 : {0.0, 0.7, 2.9}) {
        const ContactDisk inward = contact_radius(circ, t1, NormalSide::LeftNormal);
        CHECK(inward.radius == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(inward.center.x == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(inward.center.y == doctest::Approx(0.0).epsilon(1e-9));
        const ContactDisk outward = contact_radius(circ, t1, NormalSide::RightNormal);
        CHECK(std::isinf(outward.radius));
    }
}

TEST_CASE("ellipse minor-vertex contact disk is the inscribed unit disk") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const ContactDisk d = contact_radius(ell, kPi / 2, NormalSide::LeftNormal);
    CHECK(d.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.center.x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.center.y == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(!d.curvature_limited);
    // brute-force r-scan confirms the supremum
    CHECK(brute_contact_radius(ell, kPi / 2, NormalSide::LeftNormal) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ellipse major-vertex disk is curvature-limited (osculating)") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const ContactDisk d = contact_radius(ell, 0.0, NormalSide::LeftNormal);
    CHECK(d.curvature_limited);
    CHECK(d.radius == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.center.x == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("supremum property of contact disks") {
    std::mt19937 rng(17);
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, 2 * kPi);
    std::uniform_real_distribution<double> us(0.0, 1.0);
    for (int it = 0; it < 12; ++it) {
        const double t1 = ut(rng);
        const ContactDisk d = contact_radius(ell, t1, NormalSide::LeftNormal);
        REQUIRE(std::isfinite(d.radius));
        // no curve sample outside the immediate tangency window enters the disk
        for (int k = 0; k < 500; ++k) {
            const double t = ut(rng);
            if (ell.param_distance(t, t1) < 0.02 * ell.domain_length()) continue;
            CHECK((ell.position(t) - d.center).norm() >= d.radius - 1e-9);
        }
        // 1% larger disks stop being single-contact
        const Vec2 nrm = side_normal(ell, t1, NormalSide::LeftNormal);
        const double r_big = d.radius * 1.01;
        const Point2 c_big = ell.position(t1) + nrm * r_big;
        bool second_contact = false;
        for (int k = 0; k < 4000 && !second_contact; ++k) {
            const double t = ell.t_lo() + ell.domain_length() * k / 4000;
            if (ell.param_distance(t, t1) < 1e-3 * ell.domain_length()) continue;
            if ((ell.position(t) - c_big).norm() < r_big) second_contact = true;
        }
        CHECK(second_contact);
    }
}

TEST_CASE("contact radius matches the brute-force scan across the ellipse") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    for (double t1 : {0.25, 0.9, 1.3, 2.2, 4.0, 5.9}) {
        const ContactDisk d = contact_radius(ell, t1, NormalSide::LeftNormal);
        const double brute = brute_contact_radius(ell, t1, NormalSide::LeftNormal);
        CHECK(d.radius == doctest::Approx(brute).epsilon(1e-5));
    }
}

TEST_CASE("slightly shrunk contact disks touch nothing outside the tangency") {
    const auto hypo = ParametricCurve::hypotrochoid(5, 1, 2);
    for (double t1 : {0.3, 1.0, 2.5, 4.8}) {
        for (const NormalSide side : {NormalSide::LeftNormal, NormalSide::RightNormal}) {
            const ContactDisk d = contact_radius(hypo, t1, side);
            if (!std::isfinite(d.radius) || d.radius < 1e-6) continue;
            const double r_small = 0.99 * d.radius;
            const Point2 c_small = hypo.position(t1) + side_normal(hypo, t1, side) * r_small;
            for (int k = 0; k < 3000; ++k) {
                const double t = hypo.t_lo() + hypo.domain_length() * k / 3000;
                if (hypo.param_distance(t, t1) < 0.02 * hypo.domain_length()) continue;
                CHECK((hypo.position(t) - c_small).norm() >= r_small - 1e-9);
            }
        }
    }
}

TEST_CASE("newton_polish drives residuals to machine precision") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const ContactDisk d = contact_radius(ell, 0.3, NormalSide::LeftNormal);
    DividerPoint seed;
    seed.center = d.center;
    seed.radius = d.radius;
    seed.t1 = d.t1;
    seed.t2 = d.t2;
    seed.side = d.side;
    const DividerPoint p = newton_polish(ell, seed);
    CHECK(p.residual_eq8 < 1e-12 * ell.diameter());
    CHECK(p.residual_eq9 < 1e-12 * ell.diameter());
    CHECK(p.residual_eq10 < 1e-12 * ell.diameter());
    // equal distances directly
    const double d1 = (ell.position(p.t1) - p.center).norm();
    const double d2 = (ell.position(p.t2) - p.center).norm();
    CHECK(std::abs(d1 - d2) < 1e-12 * ell.diameter());
    // the mirror foot
    CHECK(p.t2 == doctest::Approx(2 * kPi - 0.3).epsilon(1e-9));
    CHECK(p.center.y == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("circle seeds come back exactly centered") {
    const auto circ = ParametricCurve::circle(1.0);
    const ContactDisk d = contact_radius(circ, 1.0, NormalSide::LeftNormal);
    DividerPoint seed;
    seed.center = d.center;
    seed.radius = d.radius;
    seed.t1 = d.t1;
    seed.t2 = d.t2;
    seed.side = d.side;
    const DividerPoint p = newton_polish(circ, seed);
    CHECK(p.center.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.center.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.residual_max() < 1e-12);
}

TEST_CASE("hypotrochoid self-intersections: five crossings on the tip rays") {
    const auto hypo = ParametricCurve::hypotrochoid(5, 1, 2);
    const auto crossings = find_self_intersections(hypo);
    REQUIRE(crossings.size() == 5);
    for (const Crossing& cr : crossings) {
        CHECK((hypo.position(cr.t_a) - hypo.position(cr.t_b)).norm() < 1e-8);
        // each crossing sits on a ray at a multiple of 72 degrees
        const double ang = std::atan2(cr.point.y, cr.point.x) * 180.0 / kPi;
        const double mod = std::fmod(std::abs(ang) + 36.0, 72.0) - 36.0;
        CHECK(std::abs(mod) < 1e-6);
        CHECK(cr.point.norm() == doctest::Approx(2.816379).epsilon(1e-4));
    }
}

TEST_CASE("simple closed presets have no self-intersections") {
    CHECK(find_self_intersections(ParametricCurve::ellipse(2, 1)).empty());
    CHECK(find_self_intersections(ParametricCurve::circle(1)).empty());
}

TEST_CASE("ellipse trace: the divider is the major-axis segment") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    TraceConfig cfg;
    cfg.n_grid = 512;
    const DividerTrace trace = divider_trace(ell, cfg);
    REQUIRE(!trace.points.empty());
    CHECK(trace.warnings == 0);

    int endpoints = 0;
    for (const DividerPoint& p : trace.points) {
        CHECK(std::abs(p.center.y) < 1e-6);
        CHECK(std::abs(p.center.x) <= 1.5 + 1e-9);
        if (p.kind == DividerKind::Endpoint) {
            ++endpoints;
            CHECK(std::abs(std::abs(p.center.x) - 1.5) < 1e-4);
            CHECK(p.radius == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(p.t2 == p.t1);
        }
    }
    CHECK(endpoints == 2);  // one per major vertex
}

TEST_CASE("parabola trace: vertical ray from the vertex osculating center") {
    const auto par = ParametricCurve::parabola(0.25);
    TraceConfig cfg;
    cfg.n_grid = 512;
    const DividerTrace trace = divider_trace(par, cfg);
    REQUIRE(!trace.points.empty());
    double min_y = 1e300;
    for (const DividerPoint& p : trace.points) {
        CHECK(std::abs(p.center.x) < 1e-6);
        min_y = std::min(min_y, p.center.y);
    }
    CHECK(min_y == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("segment trace is empty") {
    const auto seg = ParametricCurve::segment({-1, 0}, {1, 0});
    const DividerTrace trace = divider_trace(seg, {.n_grid = 256});
    CHECK(trace.points.empty());
}

TEST_CASE("circle trace collapses to the single center point") {
    const auto circ = ParametricCurve::circle(1.0);
    const DividerTrace trace = divider_trace(circ, {.n_grid = 256});
    REQUIRE(trace.points.size() == 1);
    CHECK(trace.points[0].center.x == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(trace.points[0].center.y == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(trace.points[0].radius == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("divider sets inherit reflection symmetry") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const DividerTrace trace = divider_trace(ell, {.n_grid = 256});
    for (const DividerPoint& p : trace.points) {
        // mirrored center must be realized by some traced point
        double best = 1e300;
        for (const DividerPoint& q : trace.points)
            best = std::min(best, (q.center - Point2{-p.center.x, p.center.y}).norm());
        CHECK(best < 1e-9 * ell.diameter());
    }
}

TEST_CASE("hypotrochoid trace records crossings, junction and lobe endpoints") {
    const auto hypo = ParametricCurve::hypotrochoid(5, 1, 2);
    TraceConfig cfg;
    cfg.n_grid = 640;  // divisible by 5
    const DividerTrace trace = divider_trace(hypo, cfg);

    int zero_radius = 0, endpoint = 0, junction_pts = 0;
    for (const DividerPoint& p : trace.points) {
        if (p.kind == DividerKind::ZeroRadius) ++zero_radius;
        if (p.kind == DividerKind::Endpoint) ++endpoint;
        if (p.center.norm() < 1e-6 * hypo.diameter()) ++junction_pts;
    }
    CHECK(zero_radius == 5);
    CHECK(endpoint == 5);   // one per outer-lobe tip cusp
    CHECK(junction_pts >= 1);  // central junction reached from the waists

    // the max-curvature-radius vertices are far-contact limited: their evolute
    // cusps never appear as Endpoint-kind points
    const double waist_t = kPi / 5;
    const double kn = -signed_curvature(hypo, waist_t);  // outward side
    const ContactDisk waist = contact_radius(hypo, waist_t, NormalSide::RightNormal);
    CHECK(kn > 0);
    CHECK(!waist.curvature_limited);
    CHECK(waist.radius < 1.0 / kn);
    for (const DividerPoint& p : trace.points) {
        if (p.kind != DividerKind::Endpoint) continue;
        const Point2 waist_cusp = evolute_point(hypo, waist_t);
        CHECK((p.center - waist_cusp).norm() > 1e-3 * hypo.diameter());
    }
}

TEST_CASE("equal-distance certificate holds for every emitted point") {
    for (const auto& c : {ParametricCurve::ellipse(2, 1), ParametricCurve::parabola(0.25),
                          ParametricCurve::hypotrochoid(5, 1, 2)}) {
        const DividerTrace trace = divider_trace(c, {.n_grid = 256});
        for (const DividerPoint& p : trace.points) {
            if (p.kind == DividerKind::ZeroRadius) continue;
            const double d1 = (c.position(p.t1) - p.center).norm();
            const double d2 = (c.position(p.t2) - p.center).norm();
            CHECK(std::abs(d1 - d2) < 1e-10 * c.diameter());
            if (p.kind == DividerKind::Regular)
                CHECK(p.residual_max() < 1e-10 * c.diameter());
        }
    }
}

TEST_CASE("divider_validate: containment in the closure of Pi(S)") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const DividerTrace et = divider_trace(ell, {.n_grid = 256});
    CHECK(divider_validate(et.points, ell).violations == 0);

    const auto par = ParametricCurve::parabola(0.25);
    const DividerTrace pt = divider_trace(par, {.n_grid = 256});
    CHECK(divider_validate(pt.points, par).violations == 0);

    // the ellipse endpoint cusp passes only through the closure allowance
    const CurveScan scan = CurveScan::build(ell, kDefaultScan);
    CHECK(lclt_curvature(scan, {1.5, 0.0}).k_lct == 0.0);
    CHECK(lclt_curvature(scan, {1.5 - 1e-4 * ell.diameter(), 0.0}).k_lct > 0.0);
}

TEST_CASE("maximal-disk equivalence: divider centers sit on the interior ridge") {
    // Grid oracle: brute-force interior distance field of the ellipse; the
    // crest refined along each column must contain every inward divider center.
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const DividerTrace trace = divider_trace(ell, {.n_grid = 512, .right = false});

    // feet-split predicate via a dense profile scan at y = 0
    auto two_feet_at = [&](double x) {
        int minima = 0;
        const int n = 4096;
        double prev2 = 1e300, prev = 1e300;
        for (int i = 0; i <= n + 1; ++i) {
            const double t = ell.t_lo() + ell.domain_length() * ((i % n) + 0.0) / n;
            const double d = (ell.position(t) - Point2{x, 0}).norm();
            if (i >= 2 && prev < prev2 && prev < d) ++minima;
            prev2 = prev;
            prev = d;
        }
        return minima >= 2;
    };
    // bisect the ridge endpoint from the oracle side
    double lo = 1.2, hi = 1.8;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (two_feet_at(mid) ? lo : hi) = mid;
    }
    const double ridge_end = 0.5 * (lo + hi);
    CHECK(ridge_end == doctest::Approx(1.5).epsilon(1e-6));

    for (const DividerPoint& p : trace.points) {
        CHECK(std::abs(p.center.y) < 1e-6);  // on the ridge line
        CHECK(std::abs(p.center.x) < ridge_end + 1e-6);
    }
}

TEST_CASE("trace rejects tiny grids") {
    const auto circ = ParametricCurve::circle(1.0);
    CHECK_THROWS_AS(divider_trace(circ, {.n_grid = 64}), std::invalid_argument);
}
