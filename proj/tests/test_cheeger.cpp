#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hdx/cheeger.hpp"
#include "hdx/harness.hpp"

using namespace hdx;
using doctest::Approx;

TEST_CASE("indicator form on K4") {
    Complex X = gen_complete_skeleton(4, 2);
    SubsetFamily U{{0}, {1}};
    Vec chi = indicator_form(X, U);
    CHECK(norm2(X, 1, chi) == Approx(2.0));
    CHECK(norm2(X, 2, d(X, 1, chi)) == Approx(2.0));
    CHECK(h_out(X, U) == Approx(1.0));
    CHECK(h_out_norm(X, U) == Approx(1.0));
    CHECK(h_inner_norm(X, U) == Approx(1.0 / 3));
    CHECK(h_inner_norm(X, U) == Approx(h_inner(X, U)));
    // swapping the parts flips the sign only
    Vec chi2 = indicator_form(X, {{1}, {0}});
    CHECK((chi + chi2).norm() == Approx(0.0));
}

TEST_CASE("h_out edge cases") {
    Complex T = gen_complete_skeleton(3, 2);
    CHECK(h_out(T, {{0, 1, 2}}) == 0.0);
    Complex P = build_complex({{0, 1, 2}, {3, 4, 5}});
    bool degenerate = false;
    CHECK(h_out(P, {{0}, {3}}, &degenerate) == 0.0);
    CHECK(degenerate);
}

TEST_CASE("tuple bound") {
    CHECK(tuple_bound(0.0, 1.0, 0) == Approx(1.0));
    CHECK(tuple_bound(0.5, 1.0, 1) == Approx(1.5));
    CHECK(std::isinf(tuple_bound(1.0, 0.2, 1)));
}

TEST_CASE("triangle graph") {
    GraphCheeger g = cheeger_graph(gen_complete_skeleton(3, 1), 1000);
    CHECK(g.h == Approx(1.0));
    CHECK(g.h0 == Approx(1.5));
    CHECK(g.lambda == Approx(1.5));
    CHECK(g.witness.size() == 1);
    CHECK_THROWS_AS(cheeger_graph(gen_complete_skeleton(4, 2), 1000), ComplexError);
}

TEST_CASE("K4 is tight at every level") {
    Complex X = gen_complete_skeleton(4, 2);
    CheegerReport r0 = h_k_exhaustive(X, 0, 100000);
    CHECK(r0.h == Approx(4.0 / 3));
    CHECK(r0.epsilon_bound == Approx(4.0 / 3));
    CHECK(r0.pass);
    CheegerReport r1 = h_k_exhaustive(X, 1, 100000);
    CHECK(r1.tuples == 50);
    CHECK(r1.h == Approx(1.0));
    CHECK(r1.epsilon_bound == Approx(1.0));
    CHECK(r1.applicable);
    CHECK(r1.pass);
}

TEST_CASE("sampling never beats exhaustive search") {
    Complex X = gen_flag_random(8, 0.8, 2, 3).X;
    CheegerReport ex = h_k_exhaustive(X, 1, 1000000);
    CheegerReport sm = h_k_sampled(X, 1, 200, 9);
    CHECK(sm.sampled);
    CHECK(sm.h >= ex.h - 1e-12);
    CHECK_THROWS_AS(h_k_exhaustive(gen_complete_skeleton(20, 2), 1, 1000), BudgetError);
}

TEST_CASE("verify_cheeger") {
    for (const Complex& X : {gen_complete_skeleton(3, 1), gen_complete_skeleton(5, 2), gen_complete_skeleton(5, 3),
                             gen_complete_multipartite({2, 2, 2}), gen_flag_random(9, 0.7, 2, 4).X}) {
        auto certs = verify_cheeger(X, 1000000, 8, 1);
        for (const auto& c : certs) {
            INFO(c.name);
            CHECK(c.status != Status::fail);
        }
    }
}
