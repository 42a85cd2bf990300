#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hdx/harness.hpp"

using namespace hdx;
using doctest::Approx;

namespace {
bool same(const Complex& a, const Complex& b) {
    return a.n == b.n && a.simp == b.simp && a.m == b.m && a.label == b.label && a.side == b.side;
}
std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p.string();
}
}  // namespace

TEST_CASE("text format") {
    Complex X = parse_complex_text("# two triangles\ndim 2\n2 10 20 30\n20 30 40\n");
    CHECK(X.n == 2);
    CHECK(X.count(2) == 2);
    CHECK(X.label == std::vector<int>{10, 20, 30, 40});
    CHECK(X.weight(Simplex{1, 2}) == Approx(3.0));
    CHECK(same(parse_complex_text(write_complex_text(X)), X));
    CHECK(same(parse_complex_json(write_complex_json(X)), X));
}

TEST_CASE("partite roundtrip") {
    Complex P = gen_complete_multipartite({2, 1, 2});
    REQUIRE(P.partite());
    CHECK(same(parse_complex_text(write_complex_text(P)), P));
    nlohmann::json j = write_complex_json(P);
    CHECK(j.contains("partition"));
    CHECK(same(parse_complex_json(j), P));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_complex_text("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("dim 2\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("dim 1\n0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("dim 1\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("dim 1\n-1 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("dim 1\npartite 0 1\n0 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_json(nlohmann::json{{"dim", 1}}), ParseError);
    CHECK_THROWS_AS(load_complex("/nonexistent/file.txt"), ParseError);
}

TEST_CASE("files and embeddings") {
    std::string cx = temp_file("hdx_test_cx.txt", "dim 1\n5 6\n6 7\n");
    Complex X = load_complex(cx);
    CHECK(X.count(1) == 2);
    std::string js = temp_file("hdx_test_cx.json", write_complex_json(X).dump());
    CHECK(same(load_complex(js), X));
    std::string em = temp_file("hdx_test_em.txt", "7 2.0\n5 0.0\n6 1.0\n");
    Embedding e = load_embedding(em, X);
    CHECK(e.dim == 1);
    CHECK(e.coords[0][0] == 0.0);
    CHECK(e.coords[2][0] == 2.0);
    std::string bad = temp_file("hdx_test_em_bad.txt", "5 0.0\n6 1.0\n");
    CHECK_THROWS_AS(load_embedding(bad, X), ParseError);
}

TEST_CASE("generators") {
    Complex K = gen_complete_skeleton(6, 2);
    CHECK(K.count(2) == 20);
    CHECK(K.count(0) == 6);
    Complex P = gen_complete_multipartite({2, 2, 2});
    CHECK(P.count(2) == 8);
    CHECK(P.num_sides == 3);
    FlagResult a = gen_flag_random(10, 0.6, 2, 42);
    FlagResult b = gen_flag_random(10, 0.6, 2, 42);
    CHECK(same(a.X, b.X));
    for (const Simplex& t : a.X.simplices(2))
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) CHECK(a.X.contains(Simplex{t[i], t[j]}));
}

TEST_CASE("budget from the environment") {
    setenv("HDX_BUDGET", "12345", 1);
    CHECK(budget_from_env() == 12345);
    unsetenv("HDX_BUDGET");
    CHECK(budget_from_env() == 10000000);
}

TEST_CASE("report") {
    Complex X = gen_complete_skeleton(5, 2);
    ReportOptions opt;
    opt.seed = 3;
    opt.trials = 8;
    opt.mixing_trials = 8;
    auto c1 = run_full_report(X, opt);
    auto c2 = run_full_report(X, opt);
    nlohmann::json j1 = report_json("verify", X, c1);
    CHECK(j1.dump() == report_json("verify", X, c2).dump());
    CHECK(j1["schema"] == 1);
    CHECK(j1["complex"]["f_vector"] == nlohmann::json::array({5, 10, 10}));
    CHECK(j1["summary"]["fail"] == 0);
    CHECK(j1["certificates"].size() == c1.size());
    opt.only = {"weights"};
    auto w = run_full_report(X, opt);
    CHECK_FALSE(w.empty());
    CHECK(w.size() < c1.size());
}
