// Property-based acceptance run. Prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdx/cheeger.hpp"
#include "hdx/harness.hpp"
#include "hdx/mixing.hpp"
#include "hdx/overlap.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

using namespace hdx;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

void require_certs(Outcome& o, const std::vector<Certificate>& cs, const std::string& where) {
    for (const auto& c : cs)
        if (c.status == Status::fail) o.fail(where + ": " + c.name);
}

std::vector<Complex> generator_family() {
    std::vector<Complex> xs;
    for (int n = 1; n <= 3; ++n)
        for (int N = n + 2; N <= 7; ++N) xs.push_back(gen_complete_skeleton(N, n));
    xs.push_back(gen_complete_multipartite({2, 2}));
    xs.push_back(gen_complete_multipartite({2, 3}));
    xs.push_back(gen_complete_multipartite({2, 2, 2}));
    xs.push_back(gen_complete_multipartite({1, 2, 3}));
    xs.push_back(gen_complete_multipartite({2, 2, 2, 2}));
    return xs;
}

std::vector<Complex> random_flags(int count, int maxN, int maxn, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Complex> xs;
    std::uint64_t s = seed;
    while (static_cast<int>(xs.size()) < count) {
        int n = 1 + static_cast<int>(rng() % maxn);
        int N = n + 3 + static_cast<int>(rng() % (maxN - n - 2));
        double p = 0.5 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng);
        FlagResult f = gen_flag_random(N, p, n, ++s);
        if (f.degenerate) continue;
        xs.push_back(f.X);
    }
    return xs;
}

std::string run_command(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    pclose(p);
    return out;
}

Outcome weights() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto xs = random_flags(50, 15, 3, 101);
    for (auto& g : generator_family()) xs.push_back(g);
    for (const auto& X : xs) require_certs(o, weight_identities(X), "weights");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 10) o.fail("runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome algebra() {
    Outcome o;
    auto xs = generator_family();
    for (auto& f : random_flags(10, 10, 3, 202)) xs.push_back(f);
    for (const auto& X : xs) require_certs(o, operator_algebra(X, 64, 1), "algebra");
    return o;
}

Outcome localization() {
    Outcome o;
    auto xs = generator_family();
    for (auto& f : random_flags(10, 10, 3, 303)) xs.push_back(f);
    for (const auto& X : xs) {
        auto cs = identity_suite(X, 16, 2);
        require_certs(o, cs, "localization");
        if (cs.empty()) o.fail("no certificates");
    }
    return o;
}

Outcome descent() {
    Outcome o;
    for (int n = 2; n <= 3; ++n)
        for (int N = n + 2; N <= 8; ++N) {
            Complex X = gen_complete_skeleton(N, n);
            for (const auto& r : descent_profile(X)) {
                // link of a k-simplex is a skeleton of K_{N-k-1}
                double exact = static_cast<double>(N - r.k - 1) / (N - r.k - 2);
                for (double v : {r.observed.lambda, r.observed.kappa, r.predicted_lo, r.predicted_hi})
                    if (std::fabs(v - exact) > 1e-9)
                        o.fail("K_" + std::to_string(N) + " n=" + std::to_string(n) + " k=" + std::to_string(r.k));
            }
        }
    auto rows = descent_profile(gen_complete_skeleton(4, 2));
    for (const auto& r : rows) {
        double want = r.k == 0 ? 1.5 : 4.0 / 3;
        if (std::fabs(r.observed.lambda - want) > 1e-9) o.fail("K4 gaps");
    }
    return o;
}

Outcome spectral_gaps() {
    Outcome o;
    auto xs = generator_family();
    for (auto& f : random_flags(15, 11, 3, 404)) xs.push_back(f);
    int applicable = 0;
    for (const auto& X : xs) {
        auto cs = verify_global_gaps(X);
        require_certs(o, cs, "gaps");
        bool any = false;
        for (const auto& c : cs) any = any || (c.status == Status::pass && c.name.rfind("gaps.cohomology", 0) == 0);
        applicable += any;
    }
    if (applicable == 0) o.fail("no applicable complex");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(applicable) + " applicable";
    return o;
}

Outcome cheeger() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    GraphCheeger k3 = cheeger_graph(gen_complete_skeleton(3, 1), 1000);
    if (std::fabs(k3.h0 - 1.5) > 1e-12 || std::fabs(k3.lambda - 1.5) > 1e-12) o.fail("K3");
    std::vector<Complex> graphs;
    for (int N = 2; N <= 8; ++N) graphs.push_back(gen_complete_skeleton(N, 1));
    graphs.push_back(gen_complete_multipartite({3, 4}));
    for (auto& f : random_flags(30, 8, 1, 505)) graphs.push_back(f);
    for (const auto& G : graphs) {
        if (G.num_vertices() > 8) continue;
        GraphCheeger g = cheeger_graph(G, 1u << 20);
        const double t = 1e-10;
        if (!(g.h * g.h / 2 <= g.lambda + t && g.lambda <= 2 * g.h + t)) o.fail("graph h vs lambda");
        if (!(g.lambda <= g.h0 + t && g.h0 <= 2 * g.h + t)) o.fail("graph h0");
    }
    std::vector<Complex> planes;
    for (int N = 3; N <= 7; ++N) planes.push_back(gen_complete_skeleton(N, 2));
    planes.push_back(gen_complete_multipartite({2, 2, 2}));
    planes.push_back(gen_complete_multipartite({1, 2, 3}));
    for (auto& f : random_flags(20, 7, 2, 606))
        if (f.n == 2) planes.push_back(f);
    int checked = 0;
    for (const auto& X : planes)
        for (int k = 0; k <= 1; ++k) {
            CheegerReport r = h_k_exhaustive(X, k, 1u << 22);
            if (!r.corollary_applicable) continue;
            ++checked;
            if (r.h < r.epsilon_corollary - 1e-10) o.fail("h^k below corollary bound");
        }
    if (checked == 0) o.fail("no applicable complex");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60) o.fail("runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome walks() {
    Outcome o;
    std::vector<Complex> xs{gen_complete_skeleton(5, 2), gen_complete_skeleton(6, 3),
                            gen_complete_multipartite({2, 2, 2})};
    for (auto& f : random_flags(5, 9, 3, 707)) xs.push_back(f);
    for (const auto& X : xs) require_certs(o, walk_identities(X, 16, 3, 1u << 20), "walks");
    return o;
}

Outcome mixing_identities() {
    Outcome o;
    std::vector<Complex> xs{gen_complete_skeleton(5, 2), gen_complete_skeleton(5, 3), gen_complete_skeleton(6, 2),
                            gen_complete_skeleton(6, 3), gen_complete_multipartite({2, 2, 2}),
                            gen_complete_multipartite({2, 2, 2, 2})};
    for (const auto& X : xs) require_certs(o, operator_product_identities(X, 16, 8), "mixing identities");
    return o;
}

Outcome mixing_inequalities() {
    Outcome o;
    MixingOptions opt;
    opt.exhaustive = true;
    opt.budget = 1u << 24;
    for (int N = 3; N <= 7; ++N) {
        Complex X = gen_complete_skeleton(N, 2);
        for (int l = 1; l <= 2; ++l) require_certs(o, verify_mixing(X, l, false, opt), "general");
    }
    Complex P = gen_complete_multipartite({2, 2, 2});
    for (int l = 1; l <= 2; ++l) {
        auto cs = verify_mixing(P, l, true, opt);
        require_certs(o, cs, "partite");
        for (const auto& c : cs)
            if (c.status != Status::pass) o.fail("partite not checked: " + c.name);
    }
    return o;
}

Outcome overlap() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto pt = [](double x, double y) {
        Point p(2);
        p << x, y;
        return p;
    };
    Complex K4 = gen_complete_skeleton(4, 2);
    Embedding sq{2, {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}};
    OverlapResult r = overlap_bruteforce(K4, sq);
    if (r.ratio < 0.5) o.fail("K4 ratio");
    if (covered_weight(K4, sq, pt(0.5, 0.5)) < 0.5 * r.total) o.fail("K4 diagonal crossing");

    // cones over a fan: vertex 0 is heavy
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<std::vector<int>> facets;
    for (int i = 1; i <= 6; ++i) facets.push_back({0, i, i + 1});
    facets.push_back({8, 9, 10});
    Complex fan = build_complex(facets);
    const int n = 2;
    double mV = 0;
    for (double w : fan.weights(0)) mV += w;
    for (int t = 0; t < 20; ++t) {
        Embedding e{2, {}};
        for (int v = 0; v < fan.num_vertices(); ++v) e.coords.push_back(pt(U(rng), U(rng)));
        BalancedPartition b = balanced_partition(fan.weights(0), n);
        if (!b.heavy) {
            o.fail("fan not heavy");
            break;
        }
        double total = 0;
        for (double w : fan.weights(n)) total += w;
        double cov = covered_weight(fan, e, e.coords[b.heavy_vertex]);
        if (cov < 1.0 / (2 * (n + 1) * (n + 1)) * total - 1e-12) o.fail("heavy branch coverage");
        if (cov < fan.weights(0)[b.heavy_vertex] / factorial(n) - 1e-12) o.fail("heavy vertex weight");
        if (fan.weights(0)[b.heavy_vertex] < mV / (2 * (n + 1))) o.fail("heavy flag");
    }

    std::uniform_int_distribution<int> len(3, 40);
    std::exponential_distribution<double> expo(1.0);
    int balanced = 0;
    for (int t = 0; t < 100; ++t) {
        int nn = 1 + t % 3;
        std::vector<double> m(len(rng));
        double tot = 0;
        for (double& w : m) tot += (w = expo(rng));
        BalancedPartition b = balanced_partition(m, nn);
        if (b.heavy) {
            if (m[b.heavy_vertex] < tot / (2 * (nn + 1))) o.fail("heavy vertex below threshold");
            continue;
        }
        ++balanced;
        for (double s : b.side_weights)
            if (!(s > tot / (2 * (nn + 1)))) o.fail("partition side too light");
    }
    if (balanced < 30) o.fail("too few balanced instances");

    for (int dim = 1; dim <= 2; ++dim)
        for (int t = 0; t < 50; ++t) {
            std::vector<DiscreteMeasure> mu(dim + 1);
            for (auto& m : mu) {
                int k = 1 + static_cast<int>(rng() % 3);
                for (int i = 0; i < k; ++i) {
                    Point p(dim);
                    for (int j = 0; j < dim; ++j) p[j] = U(rng);
                    m.points.push_back(p);
                    m.weights.push_back(0.1 + expo(rng));
                }
            }
            Centerpoint c = centerpoint_bruteforce(mu);
            if (c.probability < 1.0 / factorial(dim + 1) - 1e-9) o.fail("centerpoint probability");
        }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60) o.fail("runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome determinism() {
    Outcome o;
    auto dir = std::filesystem::temp_directory_path() / "hdx_acceptance";
    std::filesystem::create_directories(dir);
    std::string input = (dir / "flag.txt").string();
    std::string cli = HDX_CLI_PATH;
    run_command("'" + cli + "' generate flag:10:0.6:2:3 -o '" + input + "'");
    if (!std::filesystem::exists(input)) {
        o.fail("generate produced no file");
        return o;
    }
    std::string cmd = "'" + cli + "' verify '" + input + "' --seed 7 2>&1";
    std::string a = run_command(cmd), b = run_command(cmd);
    if (a.empty()) o.fail("empty report");
    if (a != b) o.fail("reports differ");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"weight identities", weights},
        {"operator algebra", algebra},
        {"localization suite", localization},
        {"descent exactness", descent},
        {"spectral gaps", spectral_gaps},
        {"cheeger", cheeger},
        {"walk identities", walks},
        {"mixing identities", mixing_identities},
        {"mixing inequalities", mixing_inequalities},
        {"overlap", overlap},
        {"determinism", determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
        line.precision(2);
        line << std::fixed << " (" << secs << " s)";
        if (!o.detail.empty()) line << " " << o.detail;
        std::cout << line.str() << std::endl;
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
