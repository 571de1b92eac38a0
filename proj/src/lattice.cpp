#include "divider/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace divider::lattice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cell_metric(const Cell& a, const Cell& b, MetricKind m) {
    return metric_distance(Point2(a.x, a.y), Point2(b.x, b.y), m);
}

// chamfer sweep over the full grid seeded at the boundary set; exact for the
// two polyhedral metrics
void chamfer(std::vector<double>& d, int w, int h, bool diagonals, double diag_cost) {
    struct Step { int dx, dy; double cost; };
    std::vector<Step> fwd = {{-1, 0, 1.0}, {0, -1, 1.0}};
    if (diagonals) {
        fwd.push_back({-1, -1, diag_cost});
        fwd.push_back({1, -1, diag_cost});
    }
    auto relax = [&](int x, int y, const std::vector<Step>& steps, int sign) {
        double& cur = d[static_cast<size_t>(y) * w + x];
        for (const Step& s : steps) {
            const int nx = x + sign * s.dx, ny = y + sign * s.dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            cur = std::min(cur, d[static_cast<size_t>(ny) * w + nx] + s.cost);
        }
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) relax(x, y, fwd, 1);
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) relax(x, y, fwd, -1);
}

// Felzenszwalb-Huttenlocher exact squared Euclidean transform, one dimension.
// Missing seeds are encoded by a large finite sentinel so the lower envelope
// needs no special cases; sentinel parabolas never win against a real one.
void edt_1d(const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    for (int q = 0, j = 0; q < n; ++q) {
        while (z[j + 1] < q) ++j;
        const int p = v[j];
        out[q] = (q - p) * static_cast<double>(q - p) + f[p];
    }
}

std::vector<double> exact_euclidean(const std::vector<double>& seed, int w, int h) {
    // seed holds 0 at boundary cells, inf elsewhere; returns distances
    const double big = 4.0 * (static_cast<double>(w) + h) * (static_cast<double>(w) + h) + 1.0;
    std::vector<double> sq(static_cast<size_t>(w) * h, big);
    std::vector<double> col(h), out_col(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            const double s = seed[static_cast<size_t>(y) * w + x];
            col[y] = s == kInf ? big : s;
        }
        edt_1d(col, out_col);
        for (int y = 0; y < h; ++y)
            sq[static_cast<size_t>(y) * w + x] = std::min(out_col[y], big);
    }
    std::vector<double> row(w), out_row(w);
    std::vector<double> result(static_cast<size_t>(w) * h, kInf);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) row[x] = sq[static_cast<size_t>(y) * w + x];
        edt_1d(row, out_row);
        for (int x = 0; x < w; ++x)
            result[static_cast<size_t>(y) * w + x] =
                out_row[x] >= big ? kInf : std::sqrt(out_row[x]);
    }
    return result;
}

// geodesic step cost between 8-adjacent boundary cells under the metric
double step_cost(int dx, int dy, MetricKind m) {
    if (dx != 0 && dy != 0) {
        switch (m) {
            case MetricKind::Euclidean: return std::sqrt(2.0);
            case MetricKind::MaxCoordinate: return 1.0;
            case MetricKind::Addition: return 2.0;
        }
    }
    return 1.0;
}

// all-pairs geodesic distances within the boundary set (Dijkstra per source)
std::vector<std::vector<double>> boundary_geodesics(const std::vector<Cell>& bcells,
                                                    int w, int h, MetricKind m) {
    const int nb = static_cast<int>(bcells.size());
    std::vector<int> index(static_cast<size_t>(w) * h, -1);
    for (int i = 0; i < nb; ++i)
        index[static_cast<size_t>(bcells[i].y) * w + bcells[i].x] = i;

    std::vector<std::vector<std::pair<int, double>>> adj(nb);
    for (int i = 0; i < nb; ++i) {
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = bcells[i].x + dx, ny = bcells[i].y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const int j = index[static_cast<size_t>(ny) * w + nx];
                if (j >= 0) adj[i].push_back({j, step_cost(dx, dy, m)});
            }
    }

    std::vector<std::vector<double>> dist(nb, std::vector<double>(nb, kInf));
    for (int src = 0; src < nb; ++src) {
        auto& d = dist[src];
        d[src] = 0.0;
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [dd, u] = pq.top();
            pq.pop();
            if (dd > d[u]) continue;
            for (auto [v, c] : adj[u])
                if (d[u] + c < d[v]) {
                    d[v] = d[u] + c;
                    pq.push({d[v], v});
                }
        }
    }
    return dist;
}

}  // namespace

Bitmap::Bitmap(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("bitmap dimensions must be >= 1");
    fg_.assign(static_cast<size_t>(width) * height, 0);
}

void Bitmap::set(int x, int y, bool fg) {
    if (!in_bounds(x, y)) throw std::out_of_range("cell outside bitmap");
    fg_[static_cast<size_t>(y) * width_ + x] = fg ? 1 : 0;
}

std::vector<Cell> Bitmap::boundary() const {
    std::vector<Cell> cells;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
            if (!foreground(x, y)) continue;
            const bool edge = (in_bounds(x - 1, y) && !foreground(x - 1, y)) ||
                              (in_bounds(x + 1, y) && !foreground(x + 1, y)) ||
                              (in_bounds(x, y - 1) && !foreground(x, y - 1)) ||
                              (in_bounds(x, y + 1) && !foreground(x, y + 1));
            if (edge) cells.push_back({x, y});
        }
    return cells;
}

int Bitmap::foreground_count() const {
    int n = 0;
    for (auto v : fg_) n += v;
    return n;
}

Bitmap Bitmap::filled_rect(int w, int h, int margin) {
    Bitmap b(w + 2 * margin, h + 2 * margin);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) b.set(x + margin, y + margin, true);
    return b;
}

DistanceField distance_transform(const Bitmap& b, MetricKind m, double feet_tolerance) {
    if (b.foreground_count() == 0)
        throw empty_foreground_error("bitmap has no foreground cells");

    DistanceField field;
    field.width = b.width();
    field.height = b.height();
    field.metric = m;
    field.feet_tolerance = feet_tolerance;
    field.boundary = b.boundary();
    const int w = b.width(), h = b.height();
    field.feet.assign(static_cast<size_t>(w) * h, {});

    if (field.boundary.empty()) {
        // no in-image background: every distance is infinite
        field.distance.assign(static_cast<size_t>(w) * h, kInf);
        return field;
    }

    std::vector<double> seed(static_cast<size_t>(w) * h, kInf);
    for (const Cell& c : field.boundary) seed[static_cast<size_t>(c.y) * w + c.x] = 0.0;

    switch (m) {
        case MetricKind::MaxCoordinate:
            field.distance = seed;
            chamfer(field.distance, w, h, true, 1.0);
            break;
        case MetricKind::Addition:
            field.distance = seed;
            chamfer(field.distance, w, h, false, 0.0);
            break;
        case MetricKind::Euclidean:
            field.distance = exact_euclidean(seed, w, h);
            break;
    }

    // feet: boundary cells within distance + tolerance, bounded local search
    std::vector<int> bindex(static_cast<size_t>(w) * h, -1);
    for (size_t i = 0; i < field.boundary.size(); ++i)
        bindex[static_cast<size_t>(field.boundary[i].y) * w + field.boundary[i].x] =
            static_cast<int>(i);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!b.foreground(x, y)) continue;
            const double d = field.dist_at(x, y);
            const double reach = d + feet_tolerance;
            const int r = static_cast<int>(std::ceil(reach));
            auto& feet = field.feet[static_cast<size_t>(y) * w + x];
            for (int ny = std::max(0, y - r); ny <= std::min(h - 1, y + r); ++ny)
                for (int nx = std::max(0, x - r); nx <= std::min(w - 1, x + r); ++nx) {
                    const int bi = bindex[static_cast<size_t>(ny) * w + nx];
                    if (bi < 0) continue;
                    if (cell_metric({x, y}, {nx, ny}, m) <= reach) feet.push_back(bi);
                }
        }
    return field;
}

Bitmap discrete_divider(const Bitmap& b, MetricKind m, const DividerRule& rule) {
    const DistanceField field = distance_transform(b, m, rule.feet_tolerance);
    const int w = b.width(), h = b.height();
    Bitmap mask(w, h);
    if (field.boundary.empty()) return mask;  // no separation possible

    const auto geo = boundary_geodesics(field.boundary, w, h, m);

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!b.foreground(x, y)) continue;
            const double d = field.dist_at(x, y);
            const double threshold = rule.separation_factor * (d + rule.feet_tolerance);

            bool divider_cell = false;
            const auto& feet = field.feet_at(x, y);
            for (size_t i = 0; i < feet.size() && !divider_cell; ++i)
                for (size_t j = i + 1; j < feet.size() && !divider_cell; ++j)
                    if (geo[feet[i]][feet[j]] > threshold) divider_cell = true;

            if (!divider_cell && d > 0) {
                // strict local maximum among in-foreground 8-neighbors
                bool strict = true;
                for (int dy = -1; dy <= 1 && strict; ++dy)
                    for (int dx = -1; dx <= 1 && strict; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (!b.foreground(x + dx, y + dy)) continue;
                        if (field.dist_at(x + dx, y + dy) >= d) strict = false;
                    }
                divider_cell = strict;
            }
            if (divider_cell) mask.set(x, y, true);
        }
    return mask;
}

Bitmap thin_once(const Bitmap& mask) {
    Bitmap out = mask;
    const int w = mask.width(), h = mask.height();
    auto neighbors = [&](int x, int y, const Bitmap& m) {
        // clockwise ring starting east
        const int nx[8] = {x + 1, x + 1, x, x - 1, x - 1, x - 1, x, x + 1};
        const int ny[8] = {y, y - 1, y - 1, y - 1, y, y + 1, y + 1, y + 1};
        int count = 0, transitions = 0;
        bool prev = m.foreground(nx[7], ny[7]);
        for (int k = 0; k < 8; ++k) {
            const bool cur = m.foreground(nx[k], ny[k]);
            count += cur ? 1 : 0;
            if (!prev && cur) ++transitions;
            prev = cur;
        }
        return std::pair<int, int>(count, transitions);
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!out.foreground(x, y)) continue;
            auto [count, transitions] = neighbors(x, y, out);
            // keep endpoints and junction cells; remove simple interior cells
            if (count >= 2 && count <= 6 && transitions == 1) out.set(x, y, false);
        }
    return out;
}

}  // namespace divider::lattice
