#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "divider/evolute.hpp"

using namespace divider;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("evolute of reference shapes") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    // analytic ellipse evolute ((a^2-b^2)/a cos^3, -(a^2-b^2)/b sin^3)
    const Point2 e0 = evolute_point(ell, 0.0);
    CHECK(e0.x == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(e0.y == doctest::Approx(0.0).epsilon(1e-12));
    const Point2 e1 = evolute_point(ell, kPi / 3);
    CHECK(e1.x == doctest::Approx(1.5 * std::pow(std::cos(kPi / 3), 3)).epsilon(1e-10));
    CHECK(e1.y == doctest::Approx(-3.0 * std::pow(std::sin(kPi / 3), 3)).epsilon(1e-10));

    const auto circ = ParametricCurve::circle(2.0);
    for (double t : {0.0, 1.0, 3.0}) {
        const Point2 e = evolute_point(circ, t);
        CHECK(e.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(e.y == doctest::Approx(0.0).epsilon(1e-12));
    }

    const auto par = ParametricCurve::parabola(0.25);
    const Point2 ev = evolute_point(par, 0.0);
    CHECK(ev.x == doctest::Approx(0.0));
    CHECK(ev.y == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero curvature has no evolute point") {
    const auto seg = ParametricCurve::segment({-1, 0}, {1, 0});
    CHECK_THROWS_AS(evolute_point(seg, 0.5), zero_curvature_error);
}

TEST_CASE("ellipse cusps: four vertices alternating max/min") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    auto cusps = find_cusps(ell);
    REQUIRE(cusps.size() == 4);
    std::sort(cusps.begin(), cusps.end(),
              [](const EvoluteCusp& a, const EvoluteCusp& b) { return a.t < b.t; });
    const double expected_t[] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    const Point2 expected_c[] = {{1.5, 0}, {0, -3}, {-1.5, 0}, {0, 3}};
    const CuspKind expected_k[] = {CuspKind::MaxCurvature, CuspKind::MinCurvature,
                                   CuspKind::MaxCurvature, CuspKind::MinCurvature};
    for (int i = 0; i < 4; ++i) {
        CHECK(cusps[i].t == doctest::Approx(expected_t[i]).epsilon(1e-8));
        CHECK(cusps[i].center.x == doctest::Approx(expected_c[i].x).epsilon(1e-7));
        CHECK(cusps[i].center.y == doctest::Approx(expected_c[i].y).epsilon(1e-7));
        CHECK(cusps[i].kind == expected_k[i]);
        CHECK(cusps[i].radius ==
              doctest::Approx(1.0 / std::abs(signed_curvature(ell, cusps[i].t))));
        // vertex condition
        CHECK(std::abs(curvature_derivative(ell, cusps[i].t)) < 1e-7);
    }
    // alternation around the parameter circle
    for (int i = 0; i < 4; ++i) CHECK(cusps[i].kind != cusps[(i + 1) % 4].kind);
}

TEST_CASE("circle has no cusps, parabola exactly one") {
    CHECK(find_cusps(ParametricCurve::circle(1.0)).empty());

    const auto par = ParametricCurve::parabola(0.25);
    const auto cusps = find_cusps(par);
    REQUIRE(cusps.size() == 1);
    CHECK(cusps[0].t == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(cusps[0].center.x == doctest::Approx(0.0));
    CHECK(cusps[0].center.y == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cusps[0].kind == CuspKind::MaxCurvature);
}

TEST_CASE("hypotrochoid has ten vertices, five of each kind") {
    const auto hypo = ParametricCurve::hypotrochoid(5, 1, 2);
    const auto cusps = find_cusps(hypo);
    REQUIRE(cusps.size() == 10);
    int maxes = 0, mins = 0;
    for (const auto& c : cusps) (c.kind == CuspKind::MaxCurvature ? maxes : mins)++;
    CHECK(maxes == 5);
    CHECK(mins == 5);
}

TEST_CASE("evolute tangent is parallel to the curve normal away from vertices") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    for (double t : {0.3, 0.9, 2.0, 4.0, 5.5}) {
        if (std::abs(curvature_derivative(ell, t)) < 1e-3) continue;
        const double h = 1e-6;
        const Vec2 ev_tan = (evolute_point(ell, t + h) - evolute_point(ell, t - h)) / (2 * h);
        const Vec2 normal = ell.derivative(1, t).normalized().perp();
        CHECK(std::abs(ev_tan.normalized().cross(normal)) < 1e-6);
    }
}

TEST_CASE("curve sits outside max-curvature osculating circles, inside min ones") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    for (const EvoluteCusp& cusp : find_cusps(ell)) {
        for (double dt : {-0.2, -0.1, 0.05, 0.15}) {
            const double d = (ell.position(cusp.t + dt) - cusp.center).norm();
            if (cusp.kind == CuspKind::MaxCurvature)
                CHECK(d >= cusp.radius - 1e-9);
            else
                CHECK(d <= cusp.radius + 1e-9);
        }
    }
}

TEST_CASE("osculating contact order distinguishes vertices") {
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    CHECK(osculating_contact_order(ell, 0.0) == ContactOrder::ThirdOrHigher);
    CHECK(osculating_contact_order(ell, kPi / 2) == ContactOrder::ThirdOrHigher);
    CHECK(osculating_contact_order(ell, kPi / 4) == ContactOrder::Second);

    const auto circ = ParametricCurve::circle(1.0);
    CHECK(osculating_contact_order(circ, 1.234) == ContactOrder::ThirdOrHigher);
}
