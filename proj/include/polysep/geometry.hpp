#pragma once

#include <string>
#include <vector>

#include "polysep/errors.hpp"

namespace polysep {

using Point = std::vector<double>;

enum class Kind {
    polygon,
    cube,
    crosspolytope,
    simplex,
    cell24,
    icosahedron,
    dodecahedron,
    cell600,
    cell120,
};

// The 24-cell has two conventional embeddings: `rotated` lists the 24 points
// (+-1,+-1,0,0)-with-permutations (scaled), whose first vertex normalizes to
// (1,1,0,0)/sqrt(2); `standard` is the 4-cube union 4-crosspolytope embedding.
// Other kinds ignore the orientation.
enum class Orientation { rotated, standard };

struct Constellation {
    Kind kind;
    Orientation orientation;
    int n;                      // dimension
    int m;                      // number of points
    std::vector<Point> points;  // unit-energy vertices
    double symbol_energy;       // always 1 after normalization
    double min_distance;
    int kissing;
};

// Closed-form parameter row: vertex count, kissing number, normalized minimum
// distance, power efficiency in dB, spectral efficiency in bits/dimension.
struct TableParams {
    int m;
    int a;
    double d_over_sqrt_es;
    double gb_db;
    double s;
};

// size is M for polygon, n for cube/crosspolytope/simplex, ignored otherwise.
// Throws UnsupportedKind for cell120 (parameters-only kind).
Constellation generate(Kind kind, int size = 0,
                       Orientation orientation = Orientation::rotated);

// Scales each point to unit norm; requires all input norms equal within 1e-9.
std::vector<Point> normalize_energy(const std::vector<Point>& points);

double min_distance(const std::vector<Point>& points);

// Counts neighbors at distance within (1 +- 1e-9)*d; verifies the count is the
// same for every vertex.
int kissing_number(const std::vector<Point>& points, double d);

// Index of the closest constellation point (squared Euclidean distance);
// ties broken by lowest index.
int ml_detect(const Point& y, const Constellation& c);

// Voronoi membership of the first vertex of the unnormalized (1,1,0,0)-frame
// 24-cell: min{y1,y2} >= max{|y3|,|y4|}.
bool voronoi_member_24cell(const Point& y);

// Closed-form parameters; accepts cell120 unlike generate.
TableParams table_params(Kind kind, int size = 0);

Kind kind_from_string(const std::string& s);
std::string kind_to_string(Kind kind);

}  // namespace polysep
