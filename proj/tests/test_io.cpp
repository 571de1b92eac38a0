#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "divider/io.hpp"

using namespace divider;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("divider_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config hash is stable and order-independent") {
    const std::string h1 = io::config_hash({{"a", "1"}, {"b", "2"}});
    const std::string h2 = io::config_hash({{"b", "2"}, {"a", "1"}});
    CHECK(h1 == h2);
    CHECK(h1.size() == 16);
    CHECK(h1 != io::config_hash({{"a", "1"}, {"b", "3"}}));
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.5, -3.25, 0.1, 1.0 / 3.0, 2.816379e-7, 1e17}) {
        double back = 0;
        std::sscanf(io::format_double(v).c_str(), "%lf", &back);
        CHECK(back == v);
    }
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("divider csv carries the header and config hash") {
    TempDir tmp;
    DividerPoint p;
    p.center = {1.5, 0.0};
    p.radius = 0.5;
    p.t1 = 0.25;
    p.t2 = 6.0;
    p.kind = DividerKind::Regular;
    const auto path = tmp.path / "d.csv";
    io::write_divider_csv(path.string(), {p}, "deadbeef00000000");
    const std::string text = slurp(path);
    CHECK(text.find("# config=deadbeef00000000") == 0);
    CHECK(text.find("t1,side,x10,x20,radius,t2,kind,residual_max") != std::string::npos);
    CHECK(text.find("0.25,left,1.5,0,0.5,6,regular,0") != std::string::npos);
}

TEST_CASE("pbm writer is bit-exact and round-trips through the reader") {
    TempDir tmp;
    lattice::Bitmap m(3, 2);
    m.set(0, 0, true);
    m.set(2, 1, true);
    const auto path = tmp.path / "m.pbm";
    io::write_pbm(path.string(), m);
    CHECK(slurp(path) == "P1\n3 2\n1 0 0\n0 0 1\n");
    const lattice::Bitmap back = io::read_pbm_or_pgm(path.string());
    REQUIRE(back.width() == 3);
    REQUIRE(back.height() == 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x) CHECK(back.foreground(x, y) == m.foreground(x, y));
}

TEST_CASE("pgm reader accepts plain P2 with comments") {
    TempDir tmp;
    const auto path = tmp.path / "g.pgm";
    {
        std::ofstream f(path);
        f << "P2\n# a comment\n2 2\n255\n0 7\n255 0\n";
    }
    const lattice::Bitmap b = io::read_pbm_or_pgm(path.string());
    CHECK(!b.foreground(0, 0));
    CHECK(b.foreground(1, 0));
    CHECK(b.foreground(0, 1));
    CHECK(!b.foreground(1, 1));
}

TEST_CASE("raster pgm records the scale and clamps to 255") {
    TempDir tmp;
    Raster r;
    r.window = {0, 0, 2, 1};
    r.nx = 2;
    r.ny = 1;
    r.values = {0.0, 2.0};
    const auto path = tmp.path / "r.pgm";
    io::write_raster_pgm(path.string(), r);
    const std::string text = slurp(path);
    CHECK(text.find("P2\n") == 0);
    CHECK(text.find("# k_lct scale: 255 = 2") != std::string::npos);
    CHECK(text.find("0 255") != std::string::npos);
}

TEST_CASE("identical inputs produce byte-identical outputs") {
    TempDir tmp;
    const auto ell = ParametricCurve::ellipse(2.0, 1.0);
    const DividerTrace t1 = divider_trace(ell, {.n_grid = 128});
    const DividerTrace t2 = divider_trace(ell, {.n_grid = 128});
    const auto p1 = tmp.path / "a.csv";
    const auto p2 = tmp.path / "b.csv";
    io::write_divider_csv(p1.string(), t1.points, "h");
    io::write_divider_csv(p2.string(), t2.points, "h");
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("svg dimensions derive from the window") {
    TempDir tmp;
    io::SvgWriter svg({-2, -1, 2, 1}, 800);
    CHECK(svg.pixel_height() == 400);
    svg.add_polyline({{-2, -1}, {2, 1}}, "black");
    svg.add_marker({0, 0}, "red");
    const auto path = tmp.path / "f.svg";
    svg.save(path.string());
    const std::string text = slurp(path);
    CHECK(text.find("width=\"800\" height=\"400\"") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("stroke=\"black\"") != std::string::npos);
}
