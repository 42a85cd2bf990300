#include "hdx/walks.hpp"

#include <algorithm>
#include <cmath>

namespace hdx {

KGraph build_kgraph(const Complex& X, int k) {
    if (k < -1 || k > X.n - 1) throw ComplexError("k-graph needs -1 <= k <= n-1");
    KGraph G;
    G.k = k;
    G.num_vertices = X.count(k);
    G.nu.assign(G.num_vertices, 0.0);
    G.incident.assign(G.num_vertices, {});
    const auto& up = X.simplices(k + 1);
    for (int s = 0; s < static_cast<int>(up.size()); ++s) {
        const double w = X.weight(k + 1, s);
        if (k == -1) {
            G.edges.push_back({0, 0, s});
            G.c.push_back(w);
            continue;
        }
        std::vector<int> faces;
        for (size_t i = 0; i < up[s].size(); ++i) {
            Simplex f = up[s];
            f.erase(f.begin() + static_cast<long>(i));
            faces.push_back(X.find(f));
        }
        for (size_t a = 0; a < faces.size(); ++a)
            for (size_t b = a + 1; b < faces.size(); ++b) {
                G.edges.push_back({faces[a], faces[b], s});
                G.c.push_back(w);
            }
    }
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
        const auto& E = G.edges[e];
        G.incident[E.a].push_back(e);
        G.nu[E.a] += G.c[e];
        if (E.b != E.a) {
            G.incident[E.b].push_back(e);
            G.nu[E.b] += G.c[e];
        }
    }
    return G;
}

std::vector<int> owners(const Complex& X, const SubsetFamily& U) {
    std::vector<int> own(X.num_vertices(), -1);
    for (size_t i = 0; i < U.size(); ++i)
        for (int v : U[i]) {
            if (v < 0 || v >= X.num_vertices()) throw ComplexError("family names an unknown vertex");
            if (own[v] != -1) throw ComplexError("overlap in U");
            own[v] = static_cast<int>(i);
        }
    return own;
}

void check_family(const Complex& X, const SubsetFamily& U) { (void)owners(X, U); }

namespace {

// s lies in the complex spanned by U: vertices in distinct sets of U.
bool spanned(const Simplex& s, const std::vector<int>& own) {
    std::vector<int> seen;
    for (int v : s) {
        if (own[v] < 0) return false;
        seen.push_back(own[v]);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace

Subgraph spanned_subgraph(const Complex& X, const KGraph& G, const SubsetFamily& U) {
    auto own = owners(X, U);
    Subgraph S;
    S.vertices.assign(G.num_vertices, 0);
    S.edges.assign(G.edges.size(), 0);
    if (G.k == -1) {
        S.vertices[0] = 1;
    } else {
        const auto& vs = X.simplices(G.k);
        for (int i = 0; i < G.num_vertices; ++i) S.vertices[i] = spanned(vs[i], own);
    }
    const auto& up = X.simplices(G.k + 1);
    for (size_t e = 0; e < G.edges.size(); ++e) S.edges[e] = spanned(up[G.edges[e].label], own);
    return S;
}

static double run_paths(const KGraph& G, std::vector<double> p, const std::vector<EdgeSet>& steps) {
    for (const auto& E : steps) {
        std::vector<double> q(G.num_vertices, 0.0);
        for (int v = 0; v < G.num_vertices; ++v) {
            if (p[v] == 0.0) continue;
            for (int e : G.incident[v])
                if (E[e]) q[G.other(v, e)] += p[v] * G.mu(v, e);
        }
        p.swap(q);
    }
    double s = 0.0;
    for (double x : p) s += x;
    return s;
}

double path_mu(const KGraph& G, const VertexSet& start, const std::vector<EdgeSet>& steps) {
    std::vector<double> p(G.num_vertices, 0.0);
    for (int v = 0; v < G.num_vertices; ++v) p[v] = start[v] ? 1.0 : 0.0;
    return run_paths(G, p, steps);
}

double path_c(const KGraph& G, const VertexSet& start, const std::vector<EdgeSet>& steps) {
    std::vector<double> p(G.num_vertices, 0.0);
    for (int v = 0; v < G.num_vertices; ++v) p[v] = start[v] ? G.nu[v] : 0.0;
    return run_paths(G, p, steps);
}

double m_tuple(const Complex& X, const SubsetFamily& U) {
    auto own = owners(X, U);
    const int k = static_cast<int>(U.size()) - 1;
    if (k < 0 || k > X.n) return 0.0;
    for (const auto& s : U)
        if (s.empty()) return 0.0;
    double total = 0.0;
    const auto& vs = X.simplices(k);
    for (size_t i = 0; i < vs.size(); ++i)
        if (spanned(vs[i], own)) total += X.weight(k, static_cast<int>(i));
    return total;
}

double set_weight(const Complex& X, const std::vector<int>& U) {
    double s = 0.0;
    for (int v : U) s += X.weight(0, v);
    return s;
}

double h_inner(const Complex& X, const SubsetFamily& U) {
    const int k = static_cast<int>(U.size()) - 1;
    if (k < 0 || k > X.n - 1) throw ComplexError("h_inner needs 0 <= k <= n-1");
    for (const auto& s : U)
        if (s.empty()) return 0.0;
    KGraph G = build_kgraph(X, k - 1);
    Subgraph S = spanned_subgraph(X, G, U);
    if (std::none_of(S.edges.begin(), S.edges.end(), [](char c) { return c != 0; })) return 0.0;
    double one = path_c(G, S.vertices, {S.edges});
    double two = path_c(G, S.vertices, {S.edges, S.edges});
    return two / one;
}

double h_inner_closed(const Complex& X, const SubsetFamily& U) {
    const int k = static_cast<int>(U.size()) - 1;
    if (k < 0 || k > X.n - 1) throw ComplexError("h_inner needs 0 <= k <= n-1");
    for (const auto& s : U)
        if (s.empty()) return 0.0;
    if (k == 0) return set_weight(X, U[0]) / X.weight(-1, 0);
    double m = m_tuple(X, U);
    if (m == 0.0) return 0.0;
    KGraph G = build_kgraph(X, k - 1);
    Subgraph S = spanned_subgraph(X, G, U);
    return path_c(G, S.vertices, {S.edges, S.edges}) / (k * (k + 1) * m);
}

std::uint64_t family_count(int N, int parts) {
    long double c = std::pow(static_cast<long double>(parts + 1), N);
    return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(c);
}

void for_each_family(int N, int parts, bool nonempty, std::uint64_t budget,
                     const std::function<void(const SubsetFamily&)>& f) {
    if (family_count(N, parts) > budget)
        throw BudgetError("family enumeration exceeds budget; use sampling");
    std::vector<int> a(N, 0);  // value parts means "none"
    SubsetFamily U(parts);
    while (true) {
        for (auto& s : U) s.clear();
        for (int v = 0; v < N; ++v)
            if (a[v] < parts) U[a[v]].push_back(v);
        bool ok = !nonempty || std::all_of(U.begin(), U.end(), [](const auto& s) { return !s.empty(); });
        if (ok) f(U);
        int i = 0;
        while (i < N && ++a[i] > parts) a[i++] = 0;
        if (i == N) break;
    }
}

SubsetFamily random_family(int N, int parts, bool nonempty, std::mt19937_64& rng) {
    if (nonempty && N < parts) throw ComplexError("not enough vertices for a nonempty family");
    std::uniform_int_distribution<int> pick(0, parts);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        SubsetFamily U(parts);
        for (int v = 0; v < N; ++v) {
            int a = pick(rng);
            if (a < parts) U[a].push_back(v);
        }
        if (!nonempty || std::all_of(U.begin(), U.end(), [](const auto& s) { return !s.empty(); }))
            return U;
    }
    // seed each part with a distinct vertex, then distribute the rest
    std::vector<int> perm(N);
    for (int v = 0; v < N; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> a(N, parts);
    for (int i = 0; i < parts; ++i) a[perm[i]] = i;
    for (int i = parts; i < N; ++i) a[perm[i]] = pick(rng);
    SubsetFamily U(parts);
    for (int v = 0; v < N; ++v)
        if (a[v] < parts) U[a[v]].push_back(v);
    return U;
}

namespace {

nlohmann::json family_json(const SubsetFamily& U) { return U; }

// Enumerates families exhaustively when affordable, otherwise samples.
void families(const Complex& X, int parts, int trials, std::mt19937_64& rng, std::uint64_t budget,
              const std::function<void(const SubsetFamily&)>& f) {
    const int N = X.num_vertices();
    if (family_count(N, parts) <= budget) {
        for_each_family(N, parts, false, budget, f);
        return;
    }
    for (int t = 0; t < trials; ++t) f(random_family(N, parts, false, rng));
}

}  // namespace

std::vector<Certificate> walk_identities(const Complex& X, int trials, std::uint64_t seed,
                                         std::uint64_t budget) {
    std::vector<Certificate> out;
    std::mt19937_64 rng(seed);
    const int n = X.n;
    if (n < 1) {
        out.push_back(not_applicable("walks", "walks.kgraph", "needs n >= 1"));
        return out;
    }
    // per-family work is small; keep the total bounded
    const std::uint64_t fam_budget = std::min<std::uint64_t>(budget, 20000);

    for (int k = -1; k <= n - 1; ++k) {
        KGraph G = build_kgraph(X, k);
        double stoch = 0.0, rev = 0.0;
        for (int v = 0; v < G.num_vertices; ++v) {
            double s = 0.0;
            for (int e : G.incident[v]) s += G.mu(v, e);
            stoch = std::max(stoch, std::fabs(s - 1.0));
        }
        for (size_t e = 0; e < G.edges.size(); ++e) {
            int a = G.edges[e].a, b = G.edges[e].b;
            double x = G.nu[a] * G.mu(a, static_cast<int>(e)), y = G.nu[b] * G.mu(b, static_cast<int>(e));
            rev = std::max(rev, std::fabs(x - y) / std::max(x, y));
        }
        const std::string ks = ".k" + std::to_string(k);
        out.push_back(make_cert("walks.stochastic" + ks, "walks.random_walk", "le", stoch, 0.0, 1e-12));
        out.push_back(make_cert("walks.reversible" + ks, "walks.random_walk", "le", rev, 0.0, 1e-12));
        // nu = (k+1) m for k >= 0
        if (k >= 0) {
            double dev = 0.0;
            for (int v = 0; v < G.num_vertices; ++v)
                dev = std::max(dev, std::fabs(G.nu[v] - (k + 1) * X.weight(k, v)) / G.nu[v]);
            out.push_back(make_cert("walks.stationary" + ks, "walks.random_walk", "le", dev, 0.0, 1e-12));
        }
    }

    // loop walk: pathc_{-1} = prod m(U_i) / m(empty)^l
    {
        KGraph G = build_kgraph(X, -1);
        WorstCase wc("walks.pathc_loops", "walks.pathc_minus_one", "eq", 1e-12);
        const double me = X.weight(-1, 0);
        for (int l = 0; l <= std::min(n, 3); ++l)
            families(X, l + 1, trials, rng, fam_budget, [&](const SubsetFamily& U) {
                std::vector<EdgeSet> steps;
                double expect = 1.0;
                for (const auto& s : U) {
                    Subgraph S = spanned_subgraph(X, G, {s});
                    steps.push_back(S.edges);
                    expect *= set_weight(X, s);
                }
                expect /= std::pow(me, l);
                double got = path_c(G, VertexSet{1}, steps);
                wc.add(got, expect, std::max(1.0, std::fabs(expect)), family_json(U));
            });
        out.push_back(wc.finish());
    }

    for (int k = 0; k <= n - 1; ++k) {
        const std::string ks = ".k" + std::to_string(k);
        KGraph G = build_kgraph(X, k);
        WorstCase single("walks.pathc_single" + ks, "walks.pathc_one_step", "eq", 1e-12);
        families(X, k + 2, trials, rng, fam_budget, [&](const SubsetFamily& U) {
            SubsetFamily head(U.begin(), U.end() - 1);
            Subgraph V = spanned_subgraph(X, G, head);
            // only transversal k-simplices of the first k+1 sets
            Subgraph E = spanned_subgraph(X, G, U);
            double got = path_c(G, V.vertices, {E.edges});
            double expect = (k + 1) * m_tuple(X, U);
            single.add(got, expect, std::max(1.0, std::fabs(expect)), family_json(U));
        });
        out.push_back(single.finish());

        if (k >= 1) {
            KGraph H = build_kgraph(X, k - 1);
            WorstCase two("walks.pathc_inner" + ks, "walks.pathc_two_sided", "eq", 1e-12);
            WorstCase hin("walks.h_inner_closed_form" + ks, "walks.inner_connectivity", "eq", 1e-12);
            WorstCase range("walks.h_inner_range" + ks, "walks.inner_connectivity", "le", 1e-12);
            families(X, k + 1, trials, rng, fam_budget, [&](const SubsetFamily& U) {
                for (const auto& s : U)
                    if (s.empty()) return;
                Subgraph S = spanned_subgraph(X, H, U);
                double got = path_c(H, S.vertices, {S.edges});
                double expect = k * (k + 1) * m_tuple(X, U);
                two.add(got, expect, std::max(1.0, std::fabs(expect)), family_json(U));
                double a = h_inner(X, U), b = h_inner_closed(X, U);
                hin.add(a, b, 1.0, family_json(U));
                range.add(std::max(-a, a - 1.0), 0.0, 1.0, family_json(U));
            });
            out.push_back(two.finish());
            out.push_back(hin.finish());
            out.push_back(range.finish());
        }
    }
    return out;
}

}  // namespace hdx
