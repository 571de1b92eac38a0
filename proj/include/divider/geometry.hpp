#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace divider {

// Plane point / vector. Coordinates must stay finite.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double x_, double y_) : x(x_), y(y_) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }
    Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
    Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Point2& o) const { return x * o.x + y * o.y; }
    double cross(const Point2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    Point2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
    // rotation by +90 degrees (left normal of a tangent)
    Point2 perp() const { return {-y, x}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Vec2 = Point2;

inline Point2 operator*(double s, const Point2& p) { return p * s; }

// The three plane metrics the construction is defined over.
enum class MetricKind { Euclidean, MaxCoordinate, Addition };

inline const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::Euclidean: return "euclid";
        case MetricKind::MaxCoordinate: return "maxcoord";
        case MetricKind::Addition: return "add";
    }
    return "?";
}

inline double metric_distance(const Point2& a, const Point2& b, MetricKind m) {
    const double dx = std::abs(a.x - b.x);
    const double dy = std::abs(a.y - b.y);
    switch (m) {
        case MetricKind::Euclidean: return std::hypot(dx, dy);
        case MetricKind::MaxCoordinate: return std::max(dx, dy);
        case MetricKind::Addition: return dx + dy;
    }
    return 0.0;
}

// Error types for the distinct failure modes of the numeric kernels.

struct singular_parameterization_error : std::runtime_error {
    explicit singular_parameterization_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct no_convergence_error : std::runtime_error {
    explicit no_convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct out_of_domain_error : std::runtime_error {
    explicit out_of_domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct zero_curvature_error : std::runtime_error {
    explicit zero_curvature_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct empty_foreground_error : std::runtime_error {
    explicit empty_foreground_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace divider
