#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divider/geometry.hpp"

namespace divider {

// Regular parametric plane curve S(t) on [t_lo, t_hi] with derivative
// evaluators up to order 3. Closed curves wrap the parameter (S^1 topology).
//
// Presets carry analytic derivatives; curves built from sampled points use a
// Catmull-Rom interpolant with finite-difference derivatives.
class ParametricCurve {
public:
    using PosFn = std::function<Point2(double)>;
    using DerivFn = std::function<Vec2(double)>;

    static ParametricCurve circle(double radius);
    static ParametricCurve segment(Point2 a, Point2 b);
    static ParametricCurve ellipse(double a, double b);
    // y = x^2 / (4 focal), x in [-4, 4]
    static ParametricCurve parabola(double focal);
    // (R-r) e^{it} + d e^{-i (R-r)/r t}; self-intersecting for d > r
    static ParametricCurve hypotrochoid(double big_radius, double small_radius,
                                        double pen_offset);
    static ParametricCurve from_samples(const std::vector<Point2>& points, bool closed);
    static ParametricCurve from_functions(PosFn pos, DerivFn d1, DerivFn d2, DerivFn d3,
                                          double t_lo, double t_hi, bool closed,
                                          std::string name);

    Point2 position(double t) const { return pos_(t); }
    // order in {1, 2, 3}
    Vec2 derivative(int order, double t) const;

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double domain_length() const { return t_hi_ - t_lo_; }
    bool closed() const { return closed_; }
    const std::string& preset_name() const { return name_; }

    // Max pairwise extent of a coarse sample; the scale all tolerances hang off.
    double diameter() const { return diameter_; }
    // sup |S'| over a coarse sample
    double deriv_scale() const { return deriv_scale_; }

    // Parameter normalized into the domain (wrapping when closed).
    double wrap(double t) const;
    // |t1 - t2| respecting wrap-around for closed curves.
    double param_distance(double t1, double t2) const;

private:
    ParametricCurve() = default;
    void finish_setup();  // caches scales, checks regularity/continuity/closure

    PosFn pos_;
    DerivFn d1_, d2_, d3_;
    double t_lo_ = 0.0, t_hi_ = 1.0;
    bool closed_ = false;
    std::string name_;
    double diameter_ = 1.0;
    double deriv_scale_ = 1.0;
};

// Signed curvature, positive when the curve bends toward the left normal of
// the parameterization. Throws singular_parameterization_error when |S'|
// vanishes at t.
double signed_curvature(const ParametricCurve& c, double t);

// d(kappa)/dt, from the order-3 derivative.
double curvature_derivative(const ParametricCurve& c, double t);

}  // namespace divider
