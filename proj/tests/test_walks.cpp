#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hdx/harness.hpp"
#include "hdx/walks.hpp"

using namespace hdx;
using doctest::Approx;

TEST_CASE("k-graph sizes") {
    Complex X = gen_complete_skeleton(4, 2);
    KGraph G1 = build_kgraph(X, 1);
    CHECK(G1.num_vertices == 6);
    CHECK(G1.edges.size() == 12);  // 3 pairs per triangle
    for (double nu : G1.nu) CHECK(nu == Approx(4.0));
    KGraph G0 = build_kgraph(X, 0);
    CHECK(G0.edges.size() == 6);
    for (double nu : G0.nu) CHECK(nu == Approx(6.0));
    KGraph Gm = build_kgraph(X, -1);
    CHECK(Gm.num_vertices == 1);
    CHECK(Gm.edges.size() == 4);
    CHECK(Gm.mu(0, 0) == Approx(0.25));
}

TEST_CASE("tuple weights") {
    Complex X = gen_complete_skeleton(4, 2);
    CHECK(m_tuple(X, {{0}, {1}}) == 2.0);
    CHECK(m_tuple(X, {{0}, {}}) == 0.0);
    CHECK(m_tuple(X, {{0, 1}, {2}}) == 4.0);
    CHECK(m_tuple(X, {{2}, {0, 1}}) == 4.0);
    CHECK(m_tuple(X, {{0}, {1}, {2}}) == 1.0);
    CHECK_THROWS_AS(m_tuple(X, {{0}, {0}}), ComplexError);
}

TEST_CASE("inner connectivity") {
    Complex T = gen_complete_skeleton(3, 2);
    CHECK(h_inner(T, {{0}}) == Approx(1.0 / 3));
    CHECK(h_inner(T, {{0, 1, 2}}) == Approx(1.0));
    Complex X = gen_complete_skeleton(4, 2);
    // nu = 6, mu along {0,1} = 1/3: one step 4, two steps 4/3
    CHECK(h_inner(X, {{0}, {1}}) == Approx(1.0 / 3));
    CHECK(h_inner_closed(X, {{0}, {1}}) == Approx(1.0 / 3));
    CHECK(h_inner(X, {{0}, {}}) == 0.0);
}

TEST_CASE("paths on the loop graph") {
    Complex X = gen_complete_skeleton(4, 2);
    KGraph G = build_kgraph(X, -1);
    Subgraph S = spanned_subgraph(X, G, {{0, 1}});
    // m({0,1}) / m(empty) = 12/24
    CHECK(path_mu(G, VertexSet{1}, {S.edges}) == Approx(0.5));
    CHECK(path_c(G, VertexSet{1}, {S.edges, S.edges}) == Approx(24 * 0.25));
}

TEST_CASE("family enumeration") {
    std::set<SubsetFamily> seen;
    int count = 0;
    for_each_family(3, 2, true, 1000, [&](const SubsetFamily& U) {
        ++count;
        seen.insert(U);
    });
    // 3^3 assignments minus those leaving a part empty
    CHECK(count == 12);
    CHECK(seen.size() == 12);
    count = 0;
    for_each_family(3, 1, true, 1000, [&](const SubsetFamily&) { ++count; });
    CHECK(count == 7);
    CHECK_THROWS_AS(for_each_family(20, 2, true, 1000, [](const SubsetFamily&) {}), BudgetError);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        SubsetFamily U = random_family(5, 4, true, rng);
        for (const auto& s : U) CHECK_FALSE(s.empty());
        std::set<int> all;
        std::size_t total = 0;
        for (const auto& s : U) {
            all.insert(s.begin(), s.end());
            total += s.size();
        }
        CHECK(all.size() == total);
    }
}

TEST_CASE("walk identities hold") {
    for (const Complex& X : {gen_complete_skeleton(5, 3), gen_complete_multipartite({2, 2, 2}),
                             gen_flag_random(9, 0.7, 2, 11).X, build_complex({{0, 1, 2}, {1, 2, 3}}, {2.0, 5.0})}) {
        auto certs = walk_identities(X, 16, 3, 100000);
        CHECK(all_ok(certs));
    }
}
