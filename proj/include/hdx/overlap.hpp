#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hdx/complex.hpp"

namespace hdx {

using Point = Eigen::VectorXd;

// Image point per dense vertex id.
struct Embedding {
    int dim = 0;
    std::vector<Point> coords;

    // no dim+1 image points affinely dependent (within tol)
    bool general_position(double tol = 1e-9) const;
};

// Closed convex hull membership; degenerate point sets are handled by
// reducing to affinely independent subsets.
bool point_in_hull(const Point& p, const std::vector<Point>& pts, double tol = 1e-9);
bool point_in_closed_simplex(const Point& p, const std::vector<Point>& verts, double tol = 1e-9);

double covered_weight(const Complex& X, const Embedding& phi, const Point& p);

struct OverlapResult {
    Point best_point;
    double covered_weight = 0.0;
    double total = 0.0;  // m(X^(n))
    double ratio = 0.0;
    std::size_t candidates = 0;
    std::string mode;

    nlohmann::json to_json() const;
};

// Vertices of the arrangement of lines through pairs of points (n = 2), or the
// points themselves (n = 1).
std::vector<Point> arrangement_candidates(const std::vector<Point>& pts, int dim);

OverlapResult overlap_bruteforce(const Complex& X, const Embedding& phi);
OverlapResult overlap_grid(const Complex& X, const Embedding& phi, int resolution);

struct Threshold {
    double value = 0.0;
    double first = 0.0, second = 0.0;
    bool applicable = false;
};
Threshold overlap_threshold(int n, double A, double E, double omega, double c);
Threshold overlap_threshold_partite(int n, double E, double omega, double c);

struct BalancedPartition {
    std::vector<std::vector<int>> sides;
    std::vector<double> side_weights;
    bool heavy = false;    // some m(u) >= m(V)/(2(n+1))
    int heavy_vertex = -1;  // heaviest such vertex
};
// Greedy: descending weight, each element to the currently lightest side.
BalancedPartition balanced_partition(const std::vector<double>& m, int n);

double alpha_g(int n, double eps1, double eps2, double x);
// Largest alpha in [0,1) with g(alpha) <= 1 - 1e-6. Throws std::invalid_argument
// unless 0 < eps1 <= eps2 < 1 and g(0) < 1.
double alpha_constant(int n, double eps1, double eps2);
double default_eps2(int n, double eps1);

struct DiscreteMeasure {
    std::vector<Point> points;
    std::vector<double> weights;  // normalized on use
};
struct Centerpoint {
    Point point;
    double probability = 0.0;
};
// Point maximizing P(point in conv(q_0..q_n)), q_i ~ mu_i independent. n <= 2.
Centerpoint centerpoint_bruteforce(const std::vector<DiscreteMeasure>& mu);
double simplex_probability(const std::vector<DiscreteMeasure>& mu, const Point& p);

// Bodies C_0..C_n (convex hulls of point sets) together with {O}: true iff no
// hyperplane meets n+1 of these n+2 sets. n <= 2.
bool separated_family_check(const std::vector<std::vector<Point>>& bodies, const Point& O, double tol = 1e-9);
// Number of transversal tuples (one point per body) whose simplex contains O,
// and the total number of tuples.
std::pair<std::size_t, std::size_t> transversal_coverage(const std::vector<std::vector<Point>>& bodies,
                                                         const Point& O);

// Heavy vertices, affine invariance and ratio range.
std::vector<Certificate> overlap_checks(const Complex& X, const Embedding& phi, std::uint64_t seed);

}  // namespace hdx
