#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hdx/harness.hpp"
#include "hdx/overlap.hpp"

using namespace hdx;
using doctest::Approx;

namespace {
Point pt(std::initializer_list<double> xs) {
    Point p(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (double x : xs) p[i++] = x;
    return p;
}
Embedding embed(int dim, std::vector<Point> coords) {
    Embedding e;
    e.dim = dim;
    e.coords = std::move(coords);
    return e;
}
}  // namespace

TEST_CASE("hull membership") {
    std::vector<Point> tri{pt({0, 0}), pt({1, 0}), pt({0, 1})};
    CHECK(point_in_closed_simplex(pt({1.0 / 3, 1.0 / 3}), tri));
    CHECK(point_in_closed_simplex(pt({0.5, 0}), tri));
    CHECK_FALSE(point_in_closed_simplex(pt({0.6, 0.6}), tri));
    std::vector<Point> line{pt({0, 0}), pt({1, 1}), pt({2, 2})};
    CHECK(point_in_hull(pt({1.5, 1.5}), line));
    CHECK_FALSE(point_in_hull(pt({1.5, 1.0}), line));
    CHECK_FALSE(embed(2, line).general_position());
    CHECK(embed(2, tri).general_position());
}

TEST_CASE("cycle on a line") {
    Complex C = build_complex({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Embedding e = embed(1, {pt({0}), pt({1}), pt({2}), pt({3})});
    OverlapResult r = overlap_bruteforce(C, e);
    CHECK(r.ratio == Approx(0.75));
    CHECK(r.covered_weight == Approx(3.0));
    OverlapResult g = overlap_grid(C, e, 50);
    CHECK(g.ratio <= r.ratio + 1e-12);
}

TEST_CASE("K4 in the plane") {
    Complex X = gen_complete_skeleton(4, 2);
    Embedding centred = embed(2, {pt({0, 0}), pt({4, 0}), pt({0, 4}), pt({1, 1})});
    Embedding square = embed(2, {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
    for (const Embedding& e : {centred, square}) {
        OverlapResult r = overlap_bruteforce(X, e);
        CHECK(r.ratio >= 0.5);
        CHECK(r.ratio == Approx(1.0));
        for (const auto& c : overlap_checks(X, e, 3)) {
            INFO(c.name);
            CHECK(c.status != Status::fail);
        }
    }
}

TEST_CASE("thresholds") {
    Threshold t = overlap_threshold(2, 1.0, 0.0, 1.0, 1.0);
    CHECK(t.first == Approx(1.0 / 18));
    CHECK(t.second == Approx(1.0 / 36));
    CHECK(t.value == Approx(1.0 / 36));
    CHECK(t.applicable);
    CHECK_FALSE(overlap_threshold(1, 1.0, 1.0, 1.0, 1.0).applicable);
    Threshold p = overlap_threshold_partite(2, 0.0, 1.0, 1.0);
    CHECK(p.value == Approx(1.0 / 9));
    CHECK(p.applicable);
    CHECK_FALSE(overlap_threshold_partite(1, 0.3, 1.0, 0.5).applicable);
    CHECK(overlap_threshold_partite(1, 0.1, 1.0, 0.5).applicable);
}

TEST_CASE("balanced partition") {
    BalancedPartition b = balanced_partition({5, 4, 3, 2, 1}, 1);
    REQUIRE(b.sides.size() == 2);
    CHECK(b.sides[0] == std::vector<int>{0, 3, 4});
    CHECK(b.sides[1] == std::vector<int>{1, 2});
    CHECK(b.side_weights[0] == Approx(8.0));
    CHECK(b.side_weights[1] == Approx(7.0));
    CHECK(b.heavy);
    CHECK(b.heavy_vertex == 0);
    BalancedPartition flat = balanced_partition(std::vector<double>(12, 1.0), 2);
    CHECK_FALSE(flat.heavy);
    for (double w : flat.side_weights) CHECK(w == Approx(4.0));
}

TEST_CASE("alpha constant") {
    CHECK(default_eps2(1, 0.5) == Approx(0.625));
    CHECK(alpha_g(1, 0.5, 0.5, 0.0) == Approx(0.75));
    // t + t^2 = 1 with t = 2^(alpha - 1)
    double expected = 1.0 + std::log2((std::sqrt(5.0) - 1.0) / 2.0);
    CHECK(alpha_constant(1, 0.5, 0.5) == Approx(expected).epsilon(1e-5));
    CHECK_THROWS_AS(alpha_constant(1, 0.6, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(alpha_constant(1, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("centerpoint") {
    DiscreteMeasure mu{{pt({0}), pt({1})}, {1, 1}};
    Centerpoint c = centerpoint_bruteforce({mu, mu});
    CHECK(c.probability == Approx(0.75));
    CHECK(simplex_probability({mu, mu}, pt({0.5})) == Approx(0.5));
    DiscreteMeasure tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}, {1, 1, 1}};
    Centerpoint c2 = centerpoint_bruteforce({tri, tri, tri});
    CHECK(c2.probability >= 1.0 / 3 - 1e-12);
    CHECK(simplex_probability({tri, tri, tri}, c2.point) == Approx(c2.probability));
}

TEST_CASE("separated families") {
    std::vector<std::vector<Point>> good{{pt({-2}), pt({-1})}, {pt({1}), pt({2})}};
    CHECK(separated_family_check(good, pt({0})));
    auto cov = transversal_coverage(good, pt({0}));
    CHECK(cov.first == 4);
    CHECK(cov.second == 4);
    std::vector<std::vector<Point>> bad{{pt({-1}), pt({1})}, {pt({2})}};
    CHECK_FALSE(separated_family_check(bad, pt({0})));
    std::vector<std::vector<Point>> tri{{pt({-3, -1}), pt({-2, -2})}, {pt({3, -1}), pt({2, -2})}, {pt({0, 3}), pt({0.5, 3})}};
    CHECK(separated_family_check(tri, pt({0, 0})));
    cov = transversal_coverage(tri, pt({0, 0}));
    CHECK(cov.first == cov.second);
}
