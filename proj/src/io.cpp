#include "divider/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace divider::io {

namespace {

void require_open(const std::ofstream& f, const std::string& path) {
    if (!f.is_open()) throw std::runtime_error("cannot open for writing: " + path);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const std::map<std::string, std::string>& kv) {
    std::string canon;
    for (const auto& [k, v] : kv) {
        canon += k;
        canon += '=';
        canon += v;
        canon += '\n';
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // shortest round-trip form
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        double back = 0;
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

void write_divider_csv(const std::string& path, const std::vector<DividerPoint>& pts,
                       const std::string& cfg_hash) {
    std::ofstream f(path);
    require_open(f, path);
    f << "# config=" << cfg_hash << "\n";
    f << "t1,side,x10,x20,radius,t2,kind,residual_max\n";
    for (const DividerPoint& p : pts) {
        f << format_double(p.t1) << ',' << side_name(p.side) << ','
          << format_double(p.center.x) << ',' << format_double(p.center.y) << ','
          << format_double(p.radius) << ',' << format_double(p.t2) << ','
          << kind_name(p.kind) << ',' << format_double(p.residual_max()) << "\n";
    }
}

void write_cusps_csv(const std::string& path, const std::vector<EvoluteCusp>& cusps,
                     const std::string& cfg_hash) {
    std::ofstream f(path);
    require_open(f, path);
    f << "# config=" << cfg_hash << "\n";
    f << "t,x,y,radius,kind\n";
    for (const EvoluteCusp& c : cusps) {
        f << format_double(c.t) << ',' << format_double(c.center.x) << ','
          << format_double(c.center.y) << ',' << format_double(c.radius) << ','
          << (c.kind == CuspKind::MaxCurvature ? "max" : "min") << "\n";
    }
}

void write_raster_csv(const std::string& path, const Raster& r, const std::string& cfg_hash) {
    std::ofstream f(path);
    require_open(f, path);
    f << "# config=" << cfg_hash << " window=" << format_double(r.window.x0) << ','
      << format_double(r.window.y0) << ',' << format_double(r.window.x1) << ','
      << format_double(r.window.y1) << " res=" << r.nx << 'x' << r.ny << "\n";
    f << "row,col,k_lct\n";
    for (int iy = 0; iy < r.ny; ++iy)
        for (int ix = 0; ix < r.nx; ++ix)
            f << iy << ',' << ix << ',' << format_double(r.at(ix, iy)) << "\n";
}

void write_raster_pgm(const std::string& path, const Raster& r) {
    double vmax = 0.0;
    for (double v : r.values)
        if (std::isfinite(v)) vmax = std::max(vmax, v);
    std::ofstream f(path);
    require_open(f, path);
    f << "P2\n";
    f << "# k_lct scale: 255 = " << format_double(vmax) << "\n";
    f << r.nx << ' ' << r.ny << "\n255\n";
    for (int iy = 0; iy < r.ny; ++iy) {
        for (int ix = 0; ix < r.nx; ++ix) {
            double v = r.at(ix, iy);
            if (!std::isfinite(v)) v = vmax;
            const int g = vmax > 0 ? static_cast<int>(std::lround(255.0 * v / vmax)) : 0;
            f << std::clamp(g, 0, 255) << (ix + 1 == r.nx ? "" : " ");
        }
        f << "\n";
    }
}

void write_pbm(const std::string& path, const lattice::Bitmap& mask) {
    std::ofstream f(path);
    require_open(f, path);
    f << "P1\n" << mask.width() << ' ' << mask.height() << "\n";
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x)
            f << (mask.foreground(x, y) ? '1' : '0') << (x + 1 == mask.width() ? "" : " ");
        f << "\n";
    }
}

lattice::Bitmap read_pbm_or_pgm(const std::string& path) {
    std::ifstream f(path);
    if (!f.is_open()) throw std::runtime_error("cannot open: " + path);
    std::string token;
    auto next = [&]() -> std::string {
        while (f >> token) {
            if (token[0] == '#') {
                std::string rest;
                std::getline(f, rest);
                continue;
            }
            return token;
        }
        throw std::runtime_error("truncated PNM file: " + path);
    };
    const std::string magic = next();
    if (magic != "P1" && magic != "P2")
        throw std::runtime_error("unsupported PNM magic (want plain P1/P2): " + magic);
    const int w = std::stoi(next());
    const int h = std::stoi(next());
    int maxval = 1;
    if (magic == "P2") maxval = std::stoi(next());
    (void)maxval;
    lattice::Bitmap b(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int v = std::stoi(next());
            b.set(x, y, v != 0);
        }
    return b;
}

void write_lattice_csv(const std::string& path, const lattice::Bitmap& b,
                       const lattice::DistanceField& field, const std::string& cfg_hash) {
    std::ofstream f(path);
    require_open(f, path);
    f << "# config=" << cfg_hash << "\n";
    f << "x,y,distance,feet_count\n";
    for (int y = 0; y < b.height(); ++y)
        for (int x = 0; x < b.width(); ++x) {
            if (!b.foreground(x, y)) continue;
            f << x << ',' << y << ',' << format_double(field.dist_at(x, y)) << ','
              << field.feet_at(x, y).size() << "\n";
        }
}

SvgWriter::SvgWriter(Window window, int pixel_width) : win_(window), px_w_(pixel_width) {
    scale_ = px_w_ / window.width();
    px_h_ = static_cast<int>(std::lround(window.height() * scale_));
}

Point2 SvgWriter::to_px(const Point2& world) const {
    return {(world.x - win_.x0) * scale_, (win_.y1 - world.y) * scale_};
}

void SvgWriter::add_polyline(const std::vector<Point2>& pts, const std::string& color,
                             double stroke_width) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << stroke_width << "\" points=\"";
    for (const Point2& p : pts) {
        const Point2 q = to_px(p);
        os << format_double(q.x) << ',' << format_double(q.y) << ' ';
    }
    os << "\"/>";
    body_.push_back(os.str());
}

void SvgWriter::add_circle(Point2 center, double world_radius, const std::string& color,
                           bool filled) {
    const Point2 q = to_px(center);
    std::ostringstream os;
    os << "<circle cx=\"" << format_double(q.x) << "\" cy=\"" << format_double(q.y)
       << "\" r=\"" << format_double(world_radius * scale_) << "\" stroke=\"" << color
       << "\" fill=\"" << (filled ? color : std::string("none")) << "\"/>";
    body_.push_back(os.str());
}

void SvgWriter::add_marker(Point2 center, const std::string& color) {
    const Point2 q = to_px(center);
    std::ostringstream os;
    os << "<circle cx=\"" << format_double(q.x) << "\" cy=\"" << format_double(q.y)
       << "\" r=\"2.5\" fill=\"" << color << "\"/>";
    body_.push_back(os.str());
}

void SvgWriter::add_raster_underlay(const Raster& r) {
    const double cw = r.window.width() / r.nx * scale_;
    const double ch = r.window.height() / r.ny * scale_;
    std::ostringstream os;
    os << "<g fill=\"#dddddd\">";
    for (int iy = 0; iy < r.ny; ++iy)
        for (int ix = 0; ix < r.nx; ++ix) {
            if (!(r.at(ix, iy) > 0)) continue;
            const Point2 c = r.cell_center(ix, iy);
            const Point2 q = to_px(c);
            os << "<rect x=\"" << format_double(q.x - 0.5 * cw) << "\" y=\""
               << format_double(q.y - 0.5 * ch) << "\" width=\"" << format_double(cw)
               << "\" height=\"" << format_double(ch) << "\"/>";
        }
    os << "</g>";
    body_.push_back(os.str());
}

void SvgWriter::save(const std::string& path) const {
    std::ofstream f(path);
    require_open(f, path);
    f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_w_ << "\" height=\""
      << px_h_ << "\" viewBox=\"0 0 " << px_w_ << ' ' << px_h_ << "\">\n";
    for (const std::string& el : body_) f << el << "\n";
    f << "</svg>\n";
}

std::vector<Point2> sample_polyline(const ParametricCurve& c, int n) {
    std::vector<Point2> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i)
        pts.push_back(c.position(c.t_lo() + c.domain_length() * i / n));
    return pts;
}

}  // namespace divider::io
