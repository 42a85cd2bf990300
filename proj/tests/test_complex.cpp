#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdx/complex.hpp"
#include "hdx/harness.hpp"

using namespace hdx;

TEST_CASE("K4 2-skeleton weights") {
    Complex X = gen_complete_skeleton(4, 2);
    CHECK(X.count(0) == 4);
    CHECK(X.count(1) == 6);
    CHECK(X.count(2) == 4);
    // each edge lies in 2 triangles, each vertex in 3 edges
    CHECK(X.weight(Simplex{0, 1, 2}) == 1.0);
    CHECK(X.weight(Simplex{0, 1}) == 2.0);
    CHECK(X.weight(Simplex{3}) == 6.0);
    CHECK(X.weight(-1, 0) == 24.0);
    CHECK(X.total_vertex_weight() == 24.0);
}

TEST_CASE("weighted facets") {
    Complex X = build_complex({{0, 1, 2}, {1, 2, 3}}, {2.0, 3.0});
    CHECK(X.weight(Simplex{1, 2}) == 5.0);
    CHECK(X.weight(Simplex{0, 1}) == 2.0);
    CHECK(X.weight(Simplex{1}) == 10.0);
    // m(empty) = 3! * total facet weight
    CHECK(X.weight(-1, 0) == 30.0);
    CHECK(all_ok(weight_identities(X)));
}

TEST_CASE("labels are mapped densely") {
    Complex X = build_complex({{10, 30, 20}});
    CHECK(X.label == std::vector<int>{10, 20, 30});
    CHECK(X.count(1) == 3);
}

TEST_CASE("homogeneous weight formula") {
    for (int N = 4; N <= 6; ++N)
        for (int n = 1; n <= 3 && n < N; ++n) {
            Complex X = gen_complete_skeleton(N, n);
            for (int l = -1; l <= n; ++l) CHECK(weight_formula_check(X, l).ok());
        }
}

TEST_CASE("link of a vertex in K4") {
    Complex X = gen_complete_skeleton(4, 2);
    Link L = link(X, {0});
    CHECK(L.X.n == 1);
    CHECK(L.X.count(0) == 3);
    CHECK(L.X.count(1) == 3);
    // m_tau(sigma) = m(tau sigma)
    CHECK(L.X.weight(1, 0) == 1.0);
    CHECK(L.X.weight(0, 0) == 2.0);
    CHECK(L.lift({0}) == Simplex{0, 1});
}

TEST_CASE("connectivity") {
    Complex two = build_complex({{0, 1, 2}, {3, 4, 5}});
    CHECK_FALSE(is_connected(two));
    Complex bowtie = build_complex({{0, 1, 2}, {0, 3, 4}});
    auto r = connectivity_report(bowtie);
    CHECK(r.connected);
    CHECK_FALSE(r.links_connected);
    CHECK_FALSE(r.gallery_connected);
    auto k = connectivity_report(gen_complete_skeleton(5, 2));
    CHECK(k.connected);
    CHECK(k.links_connected);
    CHECK(k.gallery_connected);
}

TEST_CASE("sort_sign") {
    Simplex s;
    CHECK(sort_sign({1, 0, 2}, s) == -1);
    CHECK(s == Simplex{0, 1, 2});
    CHECK(sort_sign({2, 0, 1}, s) == 1);
    CHECK(sort_sign({1, 1}, s) == 0);
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(build_complex({{0, 1}, {0, 1, 2}}), ComplexError);
    CHECK_THROWS_AS(build_complex({{0, 0, 1}}), ComplexError);
    CHECK_THROWS_AS(build_complex({{0, 1}}, {-1.0}), ComplexError);
    CHECK_THROWS_AS(build_complex({{0, 1}, {1, 2}}, {}, {0, 1, 1}), ComplexError);
}

TEST_CASE("partite sides") {
    Complex X = gen_complete_multipartite({2, 2, 2});
    CHECK(X.partite());
    CHECK(X.count(2) == 8);
    // every vertex lies in 4 triangles: m(v) = 2! * 4
    CHECK(X.weight(0, 0) == 8.0);
    CHECK(X.weight(-1, 0) == 48.0);
}
