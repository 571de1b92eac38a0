// Command-line front end: traces Divider sets, rasterizes the Pi(S) field,
// reports evolute cusps and runs the discrete-lattice transform on bitmaps.
//
// Exit codes: 0 success, 1 usage/input error, 2 validation failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "divider/divider_set.hpp"
#include "divider/evolute.hpp"
#include "divider/io.hpp"
#include "divider/lattice.hpp"
#include "divider/lclt.hpp"

namespace {

using namespace divider;

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

// --preset name:params, e.g. ellipse:2,1 or segment:-1,0,1,0
ParametricCurve parse_preset(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::vector<double> a =
        colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
    if (name == "circle") {
        if (a.size() != 1) throw std::invalid_argument("circle:R");
        return ParametricCurve::circle(a[0]);
    }
    if (name == "segment") {
        if (a.size() != 4) throw std::invalid_argument("segment:x0,y0,x1,y1");
        return ParametricCurve::segment({a[0], a[1]}, {a[2], a[3]});
    }
    if (name == "ellipse") {
        if (a.size() != 2) throw std::invalid_argument("ellipse:a,b");
        return ParametricCurve::ellipse(a[0], a[1]);
    }
    if (name == "parabola") {
        if (a.size() != 1) throw std::invalid_argument("parabola:f");
        return ParametricCurve::parabola(a[0]);
    }
    if (name == "hypotrochoid") {
        if (a.size() != 3) throw std::invalid_argument("hypotrochoid:R,r,d");
        return ParametricCurve::hypotrochoid(a[0], a[1], a[2]);
    }
    throw std::invalid_argument("unknown preset: " + name);
}

// ordered x,y pairs, one per line; '#' comments allowed
ParametricCurve load_points_curve(const std::string& path, bool closed) {
    std::ifstream f(path);
    if (!f.is_open()) throw std::invalid_argument("cannot open points file: " + path);
    std::vector<Point2> pts;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::stringstream ss(line);
        double x, y;
        if (ss >> x >> y) pts.push_back({x, y});
    }
    return ParametricCurve::from_samples(pts, closed);
}

struct CommonOpts {
    std::string preset;
    std::string points_file;
    bool closed = false;
    std::string metric = "euclid";
    int n_scan = kDefaultScan;
    int n_grid = 1024;
    double rmax = 10.0;
    std::vector<double> window;
    std::string res = "256x256";
    std::string out_dir = ".";
    std::string side = "both";
    bool thin = false;
    bool pi_underlay = false;
};

MetricKind parse_metric(const std::string& m) {
    if (m == "euclid") return MetricKind::Euclidean;
    if (m == "maxcoord") return MetricKind::MaxCoordinate;
    if (m == "add") return MetricKind::Addition;
    throw std::invalid_argument("metric must be euclid, maxcoord or add");
}

std::pair<int, int> parse_res(const std::string& r) {
    const auto x = r.find('x');
    if (x == std::string::npos) throw std::invalid_argument("resolution must be WxH");
    return {std::stoi(r.substr(0, x)), std::stoi(r.substr(x + 1))};
}

ParametricCurve make_curve(const CommonOpts& o) {
    if (!o.preset.empty()) return parse_preset(o.preset);
    if (!o.points_file.empty()) return load_points_curve(o.points_file, o.closed);
    throw std::invalid_argument("either --preset or --points is required");
}

Window default_window(const ParametricCurve& c) {
    // curve bounding box with a half-diameter margin
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (int i = 0; i <= 512; ++i) {
        const Point2 p = c.position(c.t_lo() + c.domain_length() * i / 512);
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double m = 0.25 * c.diameter();
    return {x0 - m, y0 - m, x1 + m, y1 + m};
}

Window window_from(const CommonOpts& o, const ParametricCurve& c) {
    if (o.window.empty()) return default_window(c);
    if (o.window.size() != 4) throw std::invalid_argument("--window needs x0,y0,x1,y1");
    return {o.window[0], o.window[1], o.window[2], o.window[3]};
}

std::string hash_of(const CommonOpts& o, const std::string& cmd) {
    std::map<std::string, std::string> kv;
    kv["cmd"] = cmd;
    kv["preset"] = o.preset;
    kv["points"] = o.points_file;
    kv["closed"] = o.closed ? "1" : "0";
    kv["metric"] = o.metric;
    kv["n_scan"] = std::to_string(o.n_scan);
    kv["n_grid"] = std::to_string(o.n_grid);
    kv["rmax"] = io::format_double(o.rmax);
    kv["res"] = o.res;
    kv["side"] = o.side;
    kv["thin"] = o.thin ? "1" : "0";
    std::string w;
    for (double v : o.window) w += io::format_double(v) + ";";
    kv["window"] = w;
    return io::config_hash(kv);
}

std::filesystem::path out_path(const CommonOpts& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return std::filesystem::path(o.out_dir) / name;
}

TraceConfig trace_config(const CommonOpts& o) {
    TraceConfig cfg;
    cfg.n_grid = o.n_grid;
    cfg.n_scan = o.n_scan;
    cfg.r_max_multiplier = o.rmax;
    cfg.left = o.side == "both" || o.side == "left";
    cfg.right = o.side == "both" || o.side == "right";
    if (!cfg.left && !cfg.right) throw std::invalid_argument("--side must be left, right or both");
    return cfg;
}

void render_figure(const CommonOpts& o, const ParametricCurve& c,
                   const DividerTrace& trace, const std::string& file) {
    const Window win = window_from(o, c);
    io::SvgWriter svg(win, 800);
    if (o.pi_underlay) {
        svg.add_raster_underlay(pi_set_raster(c, win, 96, 96, std::min(o.n_scan, 1024)));
    }
    // evolute in blue, skipping near-zero-curvature stretches
    std::vector<Point2> ev;
    for (int i = 0; i <= 1024; ++i) {
        const double t = c.t_lo() + c.domain_length() * i / 1024;
        try {
            ev.push_back(evolute_point(c, t));
        } catch (const zero_curvature_error&) {
            if (ev.size() >= 2) svg.add_polyline(ev, "blue");
            ev.clear();
        } catch (const singular_parameterization_error&) {
        }
    }
    if (ev.size() >= 2) svg.add_polyline(ev, "blue");
    svg.add_polyline(io::sample_polyline(c, 1024), "black", 1.5);
    for (const auto& poly : trace.polylines) {
        std::vector<Point2> pts;
        pts.reserve(poly.size());
        for (int idx : poly) pts.push_back(trace.points[idx].center);
        svg.add_polyline(pts, "red", 1.5);
    }
    for (const DividerPoint& p : trace.points)
        if (p.kind != DividerKind::Regular) svg.add_marker(p.center, "red");
    svg.save(file);
}

int cmd_divider(const CommonOpts& o, bool emit_files) {
    const ParametricCurve c = make_curve(o);
    const DividerTrace trace = divider_trace(c, trace_config(o));
    const ValidationReport report = divider_validate(trace.points, c);
    if (emit_files) {
        io::write_divider_csv(out_path(o, "divider.csv").string(), trace.points,
                              hash_of(o, "divider"));
        render_figure(o, c, trace, out_path(o, "divider.svg").string());
    }
    std::cout << "points=" << trace.points.size() << " polylines=" << trace.polylines.size()
              << " gaps=" << trace.gaps << " warnings=" << trace.warnings
              << " violations=" << report.violations << "\n";
    return report.violations == 0 ? 0 : 2;
}

int cmd_lclt_field(const CommonOpts& o) {
    const ParametricCurve c = make_curve(o);
    const auto [nx, ny] = parse_res(o.res);
    const Raster r = pi_set_raster(c, window_from(o, c), nx, ny, o.n_scan);
    io::write_raster_csv(out_path(o, "lclt.csv").string(), r, hash_of(o, "lclt-field"));
    io::write_raster_pgm(out_path(o, "lclt.pgm").string(), r);
    int positive = 0;
    for (double v : r.values)
        if (v > 0) ++positive;
    std::cout << "cells=" << r.values.size() << " positive=" << positive << "\n";
    return 0;
}

int cmd_evolute(const CommonOpts& o) {
    const ParametricCurve c = make_curve(o);
    const auto cusps = find_cusps(c, o.n_scan);
    io::write_cusps_csv(out_path(o, "cusps.csv").string(), cusps, hash_of(o, "evolute"));

    const Window win = window_from(o, c);
    io::SvgWriter svg(win, 800);
    std::vector<Point2> ev;
    for (int i = 0; i <= 1024; ++i) {
        const double t = c.t_lo() + c.domain_length() * i / 1024;
        try {
            ev.push_back(evolute_point(c, t));
        } catch (const std::runtime_error&) {
            if (ev.size() >= 2) svg.add_polyline(ev, "blue");
            ev.clear();
        }
    }
    if (ev.size() >= 2) svg.add_polyline(ev, "blue");
    svg.add_polyline(io::sample_polyline(c, 1024), "black", 1.5);
    for (const EvoluteCusp& cusp : cusps) svg.add_marker(cusp.center, "blue");
    svg.save(out_path(o, "evolute.svg").string());
    std::cout << "cusps=" << cusps.size() << "\n";
    return 0;
}

int cmd_lattice(const CommonOpts& o, const std::string& input) {
    const lattice::Bitmap bmp = io::read_pbm_or_pgm(input);
    const MetricKind metric = parse_metric(o.metric);
    const lattice::DistanceField field = lattice::distance_transform(bmp, metric);
    lattice::Bitmap mask = lattice::discrete_divider(bmp, metric);
    if (o.thin) mask = lattice::thin_once(mask);
    io::write_pbm(out_path(o, "divider.pbm").string(), mask);
    io::write_lattice_csv(out_path(o, "lattice.csv").string(), bmp, field,
                          hash_of(o, "lattice"));
    std::cout << "foreground=" << bmp.foreground_count()
              << " divider_cells=" << mask.foreground_count() << "\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool curve_opts = true) {
    const auto last = CLI::MultiOptionPolicy::TakeLast;
    cmd->add_option("--config", "flat key=value config file, overridden by flags")
        ->multi_option_policy(last);
    if (curve_opts) {
        cmd->add_option("--preset", o.preset, "curve preset name:params")
            ->multi_option_policy(last);
        cmd->add_option("--points", o.points_file, "sampled curve file (x,y per line)")
            ->multi_option_policy(last);
        cmd->add_flag("--closed", o.closed, "treat sampled points as a closed curve");
        cmd->add_option("--n-scan", o.n_scan, "profile scan density")
            ->check(CLI::Range(64, 1 << 20))
            ->multi_option_policy(last);
        cmd->add_option("--n-grid", o.n_grid, "trace grid density")
            ->check(CLI::Range(128, 1 << 20))
            ->multi_option_policy(last);
        cmd->add_option("--rmax", o.rmax, "radius ceiling, times curve diameter")
            ->multi_option_policy(last);
        cmd->add_option("--window", o.window, "x0,y0,x1,y1")
            ->delimiter(',')
            ->expected(0, 4)
            ->multi_option_policy(last);
        cmd->add_option("--res", o.res, "raster resolution WxH")->multi_option_policy(last);
        cmd->add_option("--side", o.side, "left, right or both")->multi_option_policy(last);
    }
    cmd->add_option("--metric", o.metric, "euclid, maxcoord or add")
        ->multi_option_policy(last);
    cmd->add_option("--out", o.out_dir, "output directory")->multi_option_policy(last);
}

// Flat key=value config support: values are spliced in as options right after
// the subcommand token, so later command-line flags win (TakeLast policy).
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.empty()) return args;

    std::ifstream f(path);
    if (!f.is_open()) throw std::invalid_argument("cannot open config file: " + path);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(f, line)) {
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (line.empty() || line[0] == '#') continue;
        injected.push_back("--" + line);  // key=value or bare flag name
    }
    std::vector<std::string> out;
    out.push_back(args[0]);  // the subcommand
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divider-set computations for plane curves and bitmaps"};
    app.require_subcommand(1);

    CommonOpts od, ol, oe, ot, ov;
    std::string lattice_input;

    CLI::App* divider_cmd = app.add_subcommand("divider", "trace the Divider of a curve");
    add_common(divider_cmd, od);
    divider_cmd->add_flag("--pi-underlay", od.pi_underlay, "draw the Pi(S) region under the figure");

    CLI::App* lclt_cmd = app.add_subcommand("lclt-field", "rasterize the k_lct field");
    add_common(lclt_cmd, ol);

    CLI::App* evolute_cmd = app.add_subcommand("evolute", "evolute cusps and figure");
    add_common(evolute_cmd, oe);

    CLI::App* lattice_cmd = app.add_subcommand("lattice", "discrete divider of a bitmap");
    lattice_cmd->add_option("input", lattice_input, "plain PBM/PGM bitmap")->required();
    add_common(lattice_cmd, ot, false);
    lattice_cmd->add_flag("--thin", ot.thin, "apply one thinning pass");

    CLI::App* validate_cmd = app.add_subcommand("validate", "trace and check Pi(S) containment");
    add_common(validate_cmd, ov);

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes args back to front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (divider_cmd->parsed()) return cmd_divider(od, true);
        if (lclt_cmd->parsed()) return cmd_lclt_field(ol);
        if (evolute_cmd->parsed()) return cmd_evolute(oe);
        if (lattice_cmd->parsed()) return cmd_lattice(ot, lattice_input);
        if (validate_cmd->parsed()) return cmd_divider(ov, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
