#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdx/cochains.hpp"
#include "hdx/harness.hpp"

using namespace hdx;
using doctest::Approx;

TEST_CASE("coboundary of a vertex indicator") {
    Complex X = gen_complete_skeleton(3, 2);  // one triangle
    Vec chi = Vec::Zero(3);
    chi[0] = 1;
    Vec dc = d(X, 0, chi);
    // edges in order {0,1},{0,2},{1,2}; d phi(v0,v1) = phi(v1) - phi(v0)
    CHECK(dc[0] == -1.0);
    CHECK(dc[1] == -1.0);
    CHECK(dc[2] == 0.0);
}

TEST_CASE("delta to the empty simplex is a weighted average") {
    Complex X = gen_complete_skeleton(3, 2);
    Vec chi = Vec::Zero(3);
    chi[0] = 1;
    // m(v) = 2, m(empty) = 6
    CHECK(delta(X, 0, chi)[0] == Approx(1.0 / 3));
    CHECK(delta_matrix(X, 0)(0, 0) == Approx(1.0 / 3));
    Vec down = laplacian(X, 0, LaplacianKind::down) * chi;
    for (int i = 0; i < 3; ++i) CHECK(down[i] == Approx(1.0 / 3));
}

TEST_CASE("upper Laplacian of the triangle graph") {
    Complex X = gen_complete_skeleton(3, 1);
    Mat L = laplacian(X, 0, LaplacianKind::up);
    // I - A/2 with unit edge weights
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(L(i, j) == Approx(i == j ? 1.0 : -0.5));
}

TEST_CASE("inner product and evaluation") {
    Complex X = gen_complete_skeleton(3, 1);
    Vec one = Vec::Ones(3);
    CHECK(inner(X, 0, one, one) == 6.0);
    Vec phi = Vec::Zero(3);
    phi[0] = 2.5;  // edge {0,1}
    CHECK(evaluate(X, 1, phi, {0, 1}) == 2.5);
    CHECK(evaluate(X, 1, phi, {1, 0}) == -2.5);
    CHECK(evaluate(X, 1, phi, {1, 1}) == 0.0);
}

TEST_CASE("d d = 0 and adjointness") {
    Complex X = gen_complete_skeleton(6, 3);
    for (int k = -1; k <= 1; ++k) CHECK((d_matrix(X, k + 1) * d_matrix(X, k)).cwiseAbs().maxCoeff() == 0.0);
    std::mt19937_64 rng(3);
    for (int k = 0; k <= 2; ++k) {
        Vec psi = random_cochain(X, k, rng), phi = random_cochain(X, k + 1, rng);
        double a = inner(X, k + 1, d(X, k, psi), phi);
        double b = inner(X, k, psi, delta(X, k + 1, phi));
        CHECK(a == Approx(b).epsilon(1e-12));
        CHECK((delta(X, k + 1, phi) - delta_matrix(X, k + 1) * phi).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("localization reads the form on tau sigma") {
    Complex X = gen_complete_skeleton(4, 2);
    std::mt19937_64 rng(1);
    Vec phi = random_cochain(X, 1, rng);
    LocalForm f = localize(X, 1, phi, {0});
    CHECK(f.degree == 0);
    // link vertex i corresponds to parent vertex back[i]
    for (int i = 0; i < f.link.X.num_vertices(); ++i)
        CHECK(f.values[i] == Approx(evaluate(X, 1, phi, {0, f.link.back[i]})));
}

TEST_CASE("partite lower operators on side indicators") {
    Complex X = gen_complete_multipartite({2, 2, 2});
    Vec chi = Vec::Zero(6);
    for (int v = 0; v < 6; ++v) chi[v] = X.side[v] == 0;
    Vec r = partite_operators(X, 0, 0).down * chi;
    // m(S_0)/m(empty) = 16/48 on S_0, zero elsewhere
    for (int v = 0; v < 6; ++v) CHECK(r[v] == Approx(X.side[v] == 0 ? 1.0 / 3 : 0.0));
    CHECK((partite_operators(X, 0, 1).down * chi).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identity suites pass") {
    for (const Complex& X : {gen_complete_skeleton(5, 3), gen_complete_multipartite({2, 2, 2}),
                             gen_flag_random(10, 0.7, 2, 5).X}) {
        CHECK(all_ok(identity_suite(X, 8, 1)));
        CHECK(all_ok(operator_algebra(X, 8, 1)));
    }
}

TEST_CASE("matrix export") {
    Mat A(2, 2);
    A << 1, 2, 3, 4.5;
    CHECK(export_matrix(A) == "2 2\n1 2\n3 4.5\n");
}
