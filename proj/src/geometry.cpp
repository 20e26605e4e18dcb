#include "polysep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polysep/metrics.hpp"

namespace polysep {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

double dist2(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double norm(const Point& p) {
    double s = 0;
    for (double v : p) s += v * v;
    return std::sqrt(s);
}

std::vector<Point> raw_polygon(int m) {
    std::vector<Point> pts;
    pts.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double ang = 2.0 * M_PI * k / m;
        pts.push_back({std::cos(ang), std::sin(ang)});
    }
    return pts;
}

std::vector<Point> raw_cube(int n) {
    std::vector<Point> pts;
    pts.reserve(std::size_t(1) << n);
    for (unsigned i = 0; i < (1u << n); ++i) {
        Point p(n);
        for (int k = 0; k < n; ++k) p[k] = (i >> k) & 1u ? -1.0 : 1.0;
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> raw_crosspolytope(int n) {
    std::vector<Point> pts;
    pts.reserve(2 * std::size_t(n));
    for (int k = 0; k < n; ++k) {
        Point plus(n, 0.0), minus(n, 0.0);
        plus[k] = 1.0;
        minus[k] = -1.0;
        pts.push_back(std::move(plus));
        pts.push_back(std::move(minus));
    }
    return pts;
}

// n+1 equidistant points summing to zero: (1-a,...,1-a) plus the n vectors
// with a-n in one slot and 1 elsewhere, a = sqrt(n+1).
std::vector<Point> raw_simplex(int n) {
    const double a = std::sqrt(double(n) + 1.0);
    std::vector<Point> pts;
    pts.reserve(std::size_t(n) + 1);
    pts.emplace_back(n, 1.0 - a);
    for (int k = 0; k < n; ++k) {
        Point p(n, 1.0);
        p[k] = a - double(n);
        pts.push_back(std::move(p));
    }
    return pts;
}

// 24 points (+-1,+-1,0,0) over all coordinate pairs; the first listed vertex
// is (1,1,0,0), whose Voronoi cell the membership predicate describes.
std::vector<Point> raw_cell24_rotated() {
    std::vector<Point> pts;
    pts.reserve(24);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0}) {
                    Point p(4, 0.0);
                    p[i] = si;
                    p[j] = sj;
                    pts.push_back(std::move(p));
                }
    return pts;
}

// 4-cube at half scale union 4-crosspolytope: all 24 at unit norm already.
std::vector<Point> raw_cell24_standard() {
    std::vector<Point> pts = raw_cube(4);
    for (auto& p : pts)
        for (double& v : p) v *= 0.5;
    auto cross = raw_crosspolytope(4);
    pts.insert(pts.end(), cross.begin(), cross.end());
    return pts;
}

// Cyclic permutations of (0, +-1, +-phi).
std::vector<Point> raw_icosahedron() {
    std::vector<Point> pts;
    pts.reserve(12);
    for (int rot = 0; rot < 3; ++rot)
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) {
                Point p(3);
                p[rot] = 0.0;
                p[(rot + 1) % 3] = s1;
                p[(rot + 2) % 3] = s2 * kPhi;
                pts.push_back(std::move(p));
            }
    return pts;
}

// Cube (+-1,+-1,+-1) union cyclic permutations of (0, +-1/phi, +-phi).
std::vector<Point> raw_dodecahedron() {
    std::vector<Point> pts = raw_cube(3);
    for (int rot = 0; rot < 3; ++rot)
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) {
                Point p(3);
                p[rot] = 0.0;
                p[(rot + 1) % 3] = s1 / kPhi;
                p[(rot + 2) % 3] = s2 * kPhi;
                pts.push_back(std::move(p));
            }
    return pts;
}

// (+-1,0,0,0) perms, (+-1/2)^4, and even permutations of
// (+-phi, +-1, +-1/phi, 0)/2: 8 + 16 + 96 = 120 unit vectors.
std::vector<Point> raw_cell600() {
    std::vector<Point> pts = raw_crosspolytope(4);
    auto half_cube = raw_cube(4);
    for (auto& p : half_cube) {
        for (double& v : p) v *= 0.5;
        pts.push_back(std::move(p));
    }
    const double base[4] = {kPhi / 2.0, 0.5, 1.0 / (2.0 * kPhi), 0.0};
    int perm[4] = {0, 1, 2, 3};
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) ++inversions;
        if (inversions % 2 != 0) continue;
        for (double s0 : {1.0, -1.0})
            for (double s1 : {1.0, -1.0})
                for (double s2 : {1.0, -1.0}) {
                    const double sign[4] = {s0, s1, s2, 1.0};
                    Point p(4);
                    for (int k = 0; k < 4; ++k) p[perm[k]] = sign[k] * base[k];
                    pts.push_back(std::move(p));
                }
    } while (std::next_permutation(perm, perm + 4));
    return pts;
}

int size_check(Kind kind, int size) {
    switch (kind) {
        case Kind::polygon:
            if (size < 3) throw std::invalid_argument("polygon requires M >= 3");
            return size;
        case Kind::cube:
            if (size < 1) throw std::invalid_argument("cube requires n >= 1");
            if (size > 12)
                throw std::invalid_argument(
                    "cube limited to n <= 12 (2^n points with pairwise checks)");
            return size;
        case Kind::crosspolytope:
            if (size < 2) throw std::invalid_argument("crosspolytope requires n >= 2");
            return size;
        case Kind::simplex:
            if (size < 1) throw std::invalid_argument("simplex requires n >= 1");
            return size;
        default:
            return 0;
    }
}

}  // namespace

std::vector<Point> normalize_energy(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("normalize_energy: empty set");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& p : points) {
        const double r = norm(p);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!(lo > 0) || (hi - lo) / hi > 1e-9)
        throw NotEquiEnergy("points do not share a common norm: range [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    std::vector<Point> out = points;
    for (auto& p : out) {
        const double inv = 1.0 / norm(p);
        for (double& v : p) v *= inv;
    }
    return out;
}

double min_distance(const std::vector<Point>& points) {
    if (points.size() < 2) throw std::invalid_argument("min_distance: need >= 2 points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, dist2(points[i], points[j]));
    return std::sqrt(best);
}

int kissing_number(const std::vector<Point>& points, double d) {
    const double lo = d * (1.0 - 1e-9), hi = d * (1.0 + 1e-9);
    int count0 = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        int count = 0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            const double dij = std::sqrt(dist2(points[i], points[j]));
            if (dij >= lo && dij <= hi) ++count;
        }
        if (i == 0)
            count0 = count;
        else if (count != count0)
            throw NotVertexTransitive("vertex " + std::to_string(i) + " has " +
                                      std::to_string(count) + " nearest neighbors, vertex 0 has " +
                                      std::to_string(count0));
    }
    return count0;
}

int ml_detect(const Point& y, const Constellation& c) {
    if (int(y.size()) != c.n) throw std::invalid_argument("ml_detect: dimension mismatch");
    int best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.m; ++i) {
        const double d2 = dist2(y, c.points[i]);
        if (d2 < bestd) {
            bestd = d2;
            best = i;
        }
    }
    return best;
}

bool voronoi_member_24cell(const Point& y) {
    if (y.size() != 4) throw std::invalid_argument("voronoi_member_24cell: need a 4-vector");
    return std::min(y[0], y[1]) >= std::max(std::fabs(y[2]), std::fabs(y[3]));
}

Constellation generate(Kind kind, int size, Orientation orientation) {
    const int sz = size_check(kind, size);
    std::vector<Point> raw;
    switch (kind) {
        case Kind::polygon: raw = raw_polygon(sz); break;
        case Kind::cube: raw = raw_cube(sz); break;
        case Kind::crosspolytope: raw = raw_crosspolytope(sz); break;
        case Kind::simplex: raw = raw_simplex(sz); break;
        case Kind::cell24:
            raw = orientation == Orientation::rotated ? raw_cell24_rotated()
                                                      : raw_cell24_standard();
            break;
        case Kind::icosahedron: raw = raw_icosahedron(); break;
        case Kind::dodecahedron: raw = raw_dodecahedron(); break;
        case Kind::cell600: raw = raw_cell600(); break;
        case Kind::cell120:
            throw UnsupportedKind("120cell vertices are not generated; use table_params");
    }
    Constellation c;
    c.kind = kind;
    c.orientation = orientation;
    c.points = normalize_energy(raw);
    c.n = int(c.points[0].size());
    c.m = int(c.points.size());
    c.symbol_energy = 1.0;
    c.min_distance = min_distance(c.points);
    c.kissing = kissing_number(c.points, c.min_distance);
    return c;
}

TableParams table_params(Kind kind, int size) {
    const int sz = size_check(kind, size);
    const double sqrt5 = std::sqrt(5.0);
    int m = 0, a = 0, n = 0;
    double d = 0;
    switch (kind) {
        case Kind::polygon:
            m = sz; a = 2; n = 2; d = 2.0 * std::sin(M_PI / sz);
            break;
        case Kind::cube:
            m = 1 << sz; a = sz; n = sz; d = 2.0 / std::sqrt(double(sz));
            break;
        case Kind::crosspolytope:
            m = 2 * sz; a = 2 * (sz - 1); n = sz; d = std::sqrt(2.0);
            break;
        case Kind::simplex:
            m = sz + 1; a = sz; n = sz; d = std::sqrt(2.0 + 2.0 / sz);
            break;
        case Kind::cell24:
            m = 24; a = 8; n = 4; d = 1.0;
            break;
        case Kind::icosahedron:
            m = 12; a = 5; n = 3; d = std::sqrt(2.0 - 2.0 / sqrt5);
            break;
        case Kind::dodecahedron:
            m = 20; a = 3; n = 3; d = (sqrt5 - 1.0) / std::sqrt(3.0);
            break;
        case Kind::cell600:
            m = 120; a = 12; n = 4; d = (sqrt5 - 1.0) / 2.0;
            break;
        case Kind::cell120:
            m = 600; a = 4; n = 4; d = (3.0 - sqrt5) / (2.0 * std::sqrt(2.0));
            break;
    }
    const EfficiencyReport rep = efficiency_report(d, m, n);
    return {m, a, d, rep.g_b_db, rep.s};
}

Kind kind_from_string(const std::string& s) {
    if (s == "polygon") return Kind::polygon;
    if (s == "cube") return Kind::cube;
    if (s == "crosspolytope") return Kind::crosspolytope;
    if (s == "simplex") return Kind::simplex;
    if (s == "cell24") return Kind::cell24;
    if (s == "icosahedron") return Kind::icosahedron;
    if (s == "dodecahedron") return Kind::dodecahedron;
    if (s == "600cell") return Kind::cell600;
    if (s == "120cell") return Kind::cell120;
    throw UnsupportedKind("unknown constellation kind: " + s);
}

std::string kind_to_string(Kind kind) {
    switch (kind) {
        case Kind::polygon: return "polygon";
        case Kind::cube: return "cube";
        case Kind::crosspolytope: return "crosspolytope";
        case Kind::simplex: return "simplex";
        case Kind::cell24: return "cell24";
        case Kind::icosahedron: return "icosahedron";
        case Kind::dodecahedron: return "dodecahedron";
        case Kind::cell600: return "600cell";
        case Kind::cell120: return "120cell";
    }
    return "?";
}

}  // namespace polysep
