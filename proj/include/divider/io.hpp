#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "divider/divider_set.hpp"
#include "divider/evolute.hpp"
#include "divider/lattice.hpp"
#include "divider/lclt.hpp"

namespace divider::io {

// FNV-1a over the canonical key=value dump; stamped into CSV headers so
// outputs are traceable to the configuration that produced them.
std::uint64_t fnv1a64(const std::string& s);
std::string config_hash(const std::map<std::string, std::string>& kv);

// Shortest round-trippable decimal form; keeps outputs byte-stable.
std::string format_double(double v);

void write_divider_csv(const std::string& path, const std::vector<DividerPoint>& pts,
                       const std::string& cfg_hash);
void write_cusps_csv(const std::string& path, const std::vector<EvoluteCusp>& cusps,
                     const std::string& cfg_hash);
void write_raster_csv(const std::string& path, const Raster& r, const std::string& cfg_hash);
// Grayscale PGM (P2), values scaled to maxval 255; the scale goes into a
// comment line so the field is recoverable.
void write_raster_pgm(const std::string& path, const Raster& r);

// Plain PBM (P1), one token per cell, row-major, LF line endings.
void write_pbm(const std::string& path, const lattice::Bitmap& mask);
lattice::Bitmap read_pbm_or_pgm(const std::string& path);  // foreground = nonzero
void write_lattice_csv(const std::string& path, const lattice::Bitmap& b,
                       const lattice::DistanceField& field, const std::string& cfg_hash);

// Minimal SVG writer for the figure outputs: world window mapped to pixel
// viewport with y flipped.
class SvgWriter {
public:
    SvgWriter(Window window, int pixel_width);

    void add_polyline(const std::vector<Point2>& pts, const std::string& color,
                      double stroke_width = 1.0);
    void add_circle(Point2 center, double world_radius, const std::string& color,
                    bool filled = false);
    void add_marker(Point2 center, const std::string& color);  // fixed-size dot
    void add_raster_underlay(const Raster& r);                 // positive cells, light gray
    void save(const std::string& path) const;

    int pixel_height() const { return px_h_; }

private:
    Point2 to_px(const Point2& world) const;
    double scale_;
    Window win_;
    int px_w_, px_h_;
    std::vector<std::string> body_;
};

std::vector<Point2> sample_polyline(const ParametricCurve& c, int n);

}  // namespace divider::io
