#include "divider/curve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace divider {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Catmull-Rom segment through p1..p2 with neighbors p0, p3, u in [0,1].
Point2 catmull_rom(const Point2& p0, const Point2& p1, const Point2& p2,
                   const Point2& p3, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return p1 * (2.0) * 0.5 +
           (p2 - p0) * (0.5 * u) +
           (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * (0.5 * u2) +
           (p3 - p0 + (p1 - p2) * 3.0) * (0.5 * u3);
}

}  // namespace

Vec2 ParametricCurve::derivative(int order, double t) const {
    switch (order) {
        case 1: return d1_(t);
        case 2: return d2_(t);
        case 3: return d3_(t);
        default: throw std::invalid_argument("derivative order must be 1, 2 or 3");
    }
}

double ParametricCurve::wrap(double t) const {
    if (!closed_) return t;
    const double len = domain_length();
    double u = std::fmod(t - t_lo_, len);
    if (u < 0) u += len;
    return t_lo_ + u;
}

double ParametricCurve::param_distance(double t1, double t2) const {
    double d = std::abs(t1 - t2);
    if (closed_) {
        const double len = domain_length();
        d = std::fmod(d, len);
        d = std::min(d, len - d);
    }
    return d;
}

void ParametricCurve::finish_setup() {
    const int n = 512;
    std::vector<Point2> samples(n);
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = t_lo_ + domain_length() * i / (n - 1);
        samples[i] = pos_(t);
        if (!samples[i].finite())
            throw std::invalid_argument("curve position not finite on the domain");
        vmax = std::max(vmax, d1_(t).norm());
    }
    double dia = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dia = std::max(dia, (samples[i] - samples[j]).norm());
    diameter_ = std::max(dia, 1e-300);
    deriv_scale_ = std::max(vmax, 1e-300);

    // sampled continuity of position and first derivative
    for (int i = 0; i + 1 < n; ++i) {
        const double step = domain_length() / (n - 1);
        if ((samples[i + 1] - samples[i]).norm() > 4.0 * deriv_scale_ * step + 1e-12)
            throw std::invalid_argument("curve position looks discontinuous");
    }
    if (closed_) {
        if ((pos_(t_lo_) - pos_(t_hi_)).norm() > 1e-9 * diameter_)
            throw std::invalid_argument("closed curve does not return to its start");
    }
}

ParametricCurve ParametricCurve::from_functions(PosFn pos, DerivFn d1, DerivFn d2,
                                                DerivFn d3, double t_lo, double t_hi,
                                                bool closed, std::string name) {
    if (!(t_hi > t_lo)) throw std::invalid_argument("empty parameter domain");
    ParametricCurve c;
    c.pos_ = std::move(pos);
    c.d1_ = std::move(d1);
    c.d2_ = std::move(d2);
    c.d3_ = std::move(d3);
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    c.closed_ = closed;
    c.name_ = std::move(name);
    c.finish_setup();
    return c;
}

ParametricCurve ParametricCurve::circle(double radius) {
    if (!(radius > 0)) throw std::invalid_argument("circle radius must be positive");
    const double r = radius;
    return from_functions(
        [r](double t) { return Point2{r * std::cos(t), r * std::sin(t)}; },
        [r](double t) { return Vec2{-r * std::sin(t), r * std::cos(t)}; },
        [r](double t) { return Vec2{-r * std::cos(t), -r * std::sin(t)}; },
        [r](double t) { return Vec2{r * std::sin(t), -r * std::cos(t)}; },
        0.0, 2.0 * kPi, true, "circle");
}

ParametricCurve ParametricCurve::segment(Point2 a, Point2 b) {
    if ((b - a).norm() <= 0) throw std::invalid_argument("degenerate segment");
    const Vec2 dir = b - a;
    return from_functions(
        [a, dir](double t) { return a + dir * t; },
        [dir](double) { return dir; },
        [](double) { return Vec2{0, 0}; },
        [](double) { return Vec2{0, 0}; },
        0.0, 1.0, false, "segment");
}

ParametricCurve ParametricCurve::ellipse(double a, double b) {
    if (!(a >= b && b > 0)) throw std::invalid_argument("ellipse needs a >= b > 0");
    return from_functions(
        [a, b](double t) { return Point2{a * std::cos(t), b * std::sin(t)}; },
        [a, b](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; },
        [a, b](double t) { return Vec2{-a * std::cos(t), -b * std::sin(t)}; },
        [a, b](double t) { return Vec2{a * std::sin(t), -b * std::cos(t)}; },
        0.0, 2.0 * kPi, true, "ellipse");
}

ParametricCurve ParametricCurve::parabola(double focal) {
    if (!(focal > 0)) throw std::invalid_argument("focal distance must be positive");
    const double k = 1.0 / (4.0 * focal);
    return from_functions(
        [k](double t) { return Point2{t, k * t * t}; },
        [k](double t) { return Vec2{1.0, 2.0 * k * t}; },
        [k](double) { return Vec2{0.0, 2.0 * k}; },
        [](double) { return Vec2{0.0, 0.0}; },
        -4.0, 4.0, false, "parabola");
}

ParametricCurve ParametricCurve::hypotrochoid(double big_radius, double small_radius,
                                              double pen_offset) {
    if (!(big_radius > small_radius && small_radius > 0))
        throw std::invalid_argument("hypotrochoid needs R > r > 0");
    if (!(pen_offset > 0)) throw std::invalid_argument("pen offset must be positive");
    const double m = (big_radius - small_radius) / small_radius;  // rolling frequency
    const double a = big_radius - small_radius;
    const double d = pen_offset;
    return from_functions(
        [a, d, m](double t) {
            return Point2{a * std::cos(t) + d * std::cos(m * t),
                          a * std::sin(t) - d * std::sin(m * t)};
        },
        [a, d, m](double t) {
            return Vec2{-a * std::sin(t) - d * m * std::sin(m * t),
                        a * std::cos(t) - d * m * std::cos(m * t)};
        },
        [a, d, m](double t) {
            return Vec2{-a * std::cos(t) - d * m * m * std::cos(m * t),
                        -a * std::sin(t) + d * m * m * std::sin(m * t)};
        },
        [a, d, m](double t) {
            return Vec2{a * std::sin(t) + d * m * m * m * std::sin(m * t),
                        -a * std::cos(t) + d * m * m * m * std::cos(m * t)};
        },
        0.0, 2.0 * kPi, true, "hypotrochoid");
}

ParametricCurve ParametricCurve::from_samples(const std::vector<Point2>& points,
                                              bool closed) {
    const int n = static_cast<int>(points.size());
    if (n < (closed ? 3 : 2)) throw std::invalid_argument("too few sample points");
    auto pts = points;
    const int segs = closed ? n : n - 1;

    auto eval = [pts, closed, n, segs](double t) {
        double u = t;
        if (closed) {
            u = std::fmod(u, static_cast<double>(segs));
            if (u < 0) u += segs;
        } else {
            u = std::clamp(u, 0.0, static_cast<double>(segs));
        }
        int i = std::min(static_cast<int>(std::floor(u)), segs - 1);
        const double frac = u - i;
        auto at = [&](int j) {
            if (closed) return pts[((j % n) + n) % n];
            return pts[std::clamp(j, 0, n - 1)];
        };
        return catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), frac);
    };

    // derivative evaluators fall back to central differences of the interpolant
    const double len = static_cast<double>(segs);
    const double h = 1e-5 * len;
    auto d1 = [eval, h](double t) {
        const Point2 m2 = eval(t - 2 * h), m1 = eval(t - h), p1 = eval(t + h),
                     p2 = eval(t + 2 * h);
        return (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    };
    auto d2 = [eval, h](double t) {
        const Point2 m2 = eval(t - 2 * h), m1 = eval(t - h), c = eval(t),
                     p1 = eval(t + h), p2 = eval(t + 2 * h);
        return ((m2 + p2) * -1.0 + (m1 + p1) * 16.0 - c * 30.0) / (12.0 * h * h);
    };
    auto d3 = [eval, h](double t) {
        const Point2 m2 = eval(t - 2 * h), m1 = eval(t - h), p1 = eval(t + h),
                     p2 = eval(t + 2 * h);
        return (p2 - m2 + (m1 - p1) * 2.0) / (2.0 * h * h * h);
    };
    return from_functions(eval, d1, d2, d3, 0.0, len, closed, "sampled");
}

double signed_curvature(const ParametricCurve& c, double t) {
    const Vec2 v = c.derivative(1, t);
    const Vec2 a = c.derivative(2, t);
    const double speed = v.norm();
    if (speed < 1e-9 * c.deriv_scale())
        throw singular_parameterization_error("curve derivative vanishes at t=" +
                                              std::to_string(t));
    return v.cross(a) / (speed * speed * speed);
}

double curvature_derivative(const ParametricCurve& c, double t) {
    const Vec2 v = c.derivative(1, t);
    const Vec2 a = c.derivative(2, t);
    const Vec2 j = c.derivative(3, t);
    const double speed = v.norm();
    if (speed < 1e-9 * c.deriv_scale())
        throw singular_parameterization_error("curve derivative vanishes at t=" +
                                              std::to_string(t));
    const double cr = v.cross(a);
    const double cr_dot = v.cross(j);
    const double speed_dot = v.dot(a) / speed;
    // d/dt [cr / speed^3]
    return (cr_dot - 3.0 * cr * speed_dot / speed) / (speed * speed * speed);
}

}  // namespace divider
