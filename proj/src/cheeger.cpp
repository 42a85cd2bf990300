#include "hdx/cheeger.hpp"

#include <algorithm>
#include <cmath>

#include "hdx/spectra.hpp"

namespace hdx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// all owners in [0, parts) and pairwise distinct
bool transversal(const Simplex& s, const std::vector<int>& own, int parts) {
    unsigned long long seen = 0;
    for (int v : s) {
        int o = own[v];
        if (o < 0 || o >= parts) return false;
        if (seen >> o & 1ULL) return false;
        seen |= 1ULL << o;
    }
    return true;
}

// Per-family quantities with the (k-1)-graph built once.
struct Evaluator {
    const Complex& X;
    int k;
    KGraph G;
    double m_empty;

    Evaluator(const Complex& X_, int k_) : X(X_), k(k_), m_empty(X_.weight(-1, 0)) {
        if (k >= 1) G = build_kgraph(X, k - 1);
    }

    struct Values {
        double mU = 0, mOut = 0, h_in = 0, h_out = 0;
    };

    // own: owner index per vertex, -1 for the complement
    Values operator()(const std::vector<int>& own) const {
        Values r;
        const auto& ks = X.simplices(k);
        for (size_t i = 0; i < ks.size(); ++i)
            if (transversal(ks[i], own, k + 1)) r.mU += X.weight(k, static_cast<int>(i));
        if (r.mU == 0.0) return r;
        std::vector<int> ext(own);
        bool comp = false;
        for (int& o : ext)
            if (o < 0) o = k + 1, comp = true;
        if (comp) {
            const auto& up = X.simplices(k + 1);
            for (size_t i = 0; i < up.size(); ++i)
                if (transversal(up[i], ext, k + 2)) r.mOut += X.weight(k + 1, static_cast<int>(i));
        }
        r.h_out = r.mOut / r.mU;
        if (k == 0) {
            r.h_in = r.mU / m_empty;
            return r;
        }
        VertexSet V(G.num_vertices, 0);
        const auto& lo = X.simplices(k - 1);
        for (int i = 0; i < G.num_vertices; ++i) V[i] = transversal(lo[i], own, k + 1);
        EdgeSet E(G.edges.size(), 0);
        for (size_t e = 0; e < G.edges.size(); ++e) E[e] = transversal(ks[G.edges[e].label], own, k + 1);
        double one = path_c(G, V, {E});
        r.h_in = one > 0 ? path_c(G, V, {E, E}) / one : 0.0;
        return r;
    }
};

std::vector<int> owner_vector(const Complex& X, const SubsetFamily& U) { return owners(X, U); }

void attach_epsilons(const Complex& X, CheegerReport& r) {
    const int k = r.k;
    ProfileRow row = link_profile(X, k - 1);
    const double thr = static_cast<double>(k) / (k + 1);
    r.applicable = !row.disconnected && row.lambda > thr;
    r.epsilon_bound = row.lambda - thr;
    ProfileRow top = link_profile(X, X.n - 2);
    r.corollary_applicable = !top.disconnected && top.lambda > static_cast<double>(X.n - 1) / X.n;
    r.epsilon_corollary = iterate(top.lambda, X.n - k - 1) - thr;
    r.pass = true;
    if (r.applicable) r.pass = r.pass && r.h >= r.epsilon_bound - 1e-10;
    if (r.corollary_applicable) r.pass = r.pass && r.h >= r.epsilon_corollary - 1e-10;
}

void consider(CheegerReport& r, const Evaluator::Values& v, const SubsetFamily& U) {
    ++r.tuples;
    if (v.mU == 0.0) {
        ++r.skipped;
        return;
    }
    double b = tuple_bound(v.h_in, v.h_out, r.k);
    if (b < r.h || r.witness.empty()) {
        if (b < r.h || (b == r.h && r.witness.empty())) {
            r.h = b;
            r.witness = U;
        }
    }
}

}  // namespace

Vec indicator_form(const Complex& X, const SubsetFamily& U) {
    auto own = owners(X, U);
    const int k = static_cast<int>(U.size()) - 1;
    Vec chi = Vec::Zero(X.count(k));
    if (k < 0 || k > X.n) return chi;
    const auto& ks = X.simplices(k);
    for (size_t i = 0; i < ks.size(); ++i) {
        if (!transversal(ks[i], own, k + 1)) continue;
        OrderedSimplex ord(k + 1);
        for (int v : ks[i]) ord[own[v]] = v;
        Simplex sorted;
        chi[static_cast<long>(i)] = sort_sign(ord, sorted);
    }
    return chi;
}

double h_out(const Complex& X, const SubsetFamily& U, bool* degenerate) {
    const int k = static_cast<int>(U.size()) - 1;
    if (k < 0 || k > X.n - 1) throw ComplexError("h_out needs 0 <= k <= n-1");
    Evaluator ev(X, k);
    auto v = ev(owner_vector(X, U));
    if (degenerate) *degenerate = v.mU == 0.0;
    return v.h_out;
}

double h_out_norm(const Complex& X, const SubsetFamily& U) {
    const int k = static_cast<int>(U.size()) - 1;
    Vec chi = indicator_form(X, U);
    double a = norm2(X, k, chi);
    if (a == 0.0) return 0.0;
    return norm2(X, k + 1, d(X, k, chi)) / a;
}

double h_inner_norm(const Complex& X, const SubsetFamily& U) {
    const int k = static_cast<int>(U.size()) - 1;
    Vec chi = indicator_form(X, U);
    double a = norm2(X, k, chi);
    if (a == 0.0) return 0.0;
    return norm2(X, k - 1, delta(X, k, chi)) / ((k + 1) * a);
}

double tuple_bound(double h_in, double h_out_v, int k) {
    if (h_in >= 1.0 - 1e-15) return kInf;
    return (k * h_in + h_out_v) / ((k + 1) * (1.0 - h_in));
}

nlohmann::json CheegerReport::to_json() const {
    auto num = [](double x) -> nlohmann::json {
        if (std::isfinite(x)) return x;
        return x > 0 ? "inf" : "-inf";
    };
    return {{"k", k},
            {"h", num(h)},
            {"witness", witness},
            {"epsilon_bound", epsilon_bound},
            {"epsilon_corollary", epsilon_corollary},
            {"applicable", applicable},
            {"corollary_applicable", corollary_applicable},
            {"pass", pass},
            {"sampled", sampled},
            {"tuples", tuples},
            {"skipped", skipped}};
}

CheegerReport h_k_exhaustive(const Complex& X, int k, std::uint64_t budget) {
    if (k < 0 || k > X.n - 1) throw ComplexError("h^k needs 0 <= k <= n-1");
    const int N = X.num_vertices();
    if (family_count(N, k + 1) > budget)
        throw BudgetError("h^" + std::to_string(k) + " enumeration exceeds budget (" +
                          std::to_string(budget) + "); use --sample");
    CheegerReport r;
    r.k = k;
    Evaluator ev(X, k);
    std::vector<int> own(N);
    for_each_family(N, k + 1, true, budget, [&](const SubsetFamily& U) {
        std::fill(own.begin(), own.end(), -1);
        for (size_t i = 0; i < U.size(); ++i)
            for (int v : U[i]) own[v] = static_cast<int>(i);
        consider(r, ev(own), U);
    });
    attach_epsilons(X, r);
    return r;
}

CheegerReport h_k_sampled(const Complex& X, int k, int samples, std::uint64_t seed) {
    if (k < 0 || k > X.n - 1) throw ComplexError("h^k needs 0 <= k <= n-1");
    CheegerReport r;
    r.k = k;
    r.sampled = true;
    Evaluator ev(X, k);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < samples; ++t) {
        SubsetFamily U = random_family(X.num_vertices(), k + 1, true, rng);
        consider(r, ev(owners(X, U)), U);
    }
    attach_epsilons(X, r);
    return r;
}

GraphCheeger cheeger_graph(const Complex& X, std::uint64_t budget) {
    if (X.n != 1) throw ComplexError("graph Cheeger constants need a 1-dimensional complex");
    const int N = X.num_vertices();
    if (family_count(N, 1) > budget) throw BudgetError("graph cut enumeration exceeds budget");
    GraphCheeger g;
    const double total = X.weight(-1, 0);
    Evaluator ev(X, 0);
    std::vector<int> own(N);
    for_each_family(N, 1, true, budget, [&](const SubsetFamily& U) {
        std::fill(own.begin(), own.end(), -1);
        for (int v : U[0]) own[v] = 0;
        auto v = ev(own);
        g.h0 = std::min(g.h0, tuple_bound(v.h_in, v.h_out, 0));
        if (v.mU <= total / 2 && v.mU > 0) {
            double ratio = v.mOut / v.mU;
            if (ratio < g.h) {
                g.h = ratio;
                g.witness = U[0];
            }
        }
    });
    SpectrumSummary s = laplacian_spectrum(X, 0, LaplacianKind::up);
    g.lambda = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    if (s.zero_multiplicity > 1) g.lambda = 0.0;
    return g;
}

std::vector<Certificate> verify_cheeger(const Complex& X, std::uint64_t budget, int trials,
                                        std::uint64_t seed) {
    std::vector<Certificate> out;
    if (X.n < 1) {
        out.push_back(not_applicable("cheeger", "cheeger.constant", "needs n >= 1"));
        return out;
    }
    std::mt19937_64 rng(seed);
    const int N = X.num_vertices();

    // indicator form identities on small families
    for (int k = 0; k <= X.n - 1; ++k) {
        const std::string ks = ".k" + std::to_string(k);
        WorstCase chi_norm("cheeger.indicator_norm" + ks, "cheeger.indicator_form", "eq", 1e-12);
        WorstCase dchi("cheeger.d_indicator" + ks, "cheeger.indicator_form", "eq", 1e-12);
        WorstCase hout("cheeger.h_out_norm" + ks, "cheeger.h_out", "eq", 1e-12);
        WorstCase hin("cheeger.h_inner_norm" + ks, "cheeger.h_inner", "eq", 1e-12);
        WorstCase range("cheeger.h_range" + ks, "cheeger.h_out", "le", 1e-12);
        auto check = [&](const SubsetFamily& U) {
            if (std::any_of(U.begin(), U.end(), [](const auto& s) { return s.empty(); })) return;
            Vec chi = indicator_form(X, U);
            double mU = m_tuple(X, U);
            chi_norm.add(norm2(X, k, chi), mU, std::max(1.0, mU), U);
            SubsetFamily ext(U);
            std::vector<int> rest;
            auto own = owners(X, U);
            for (int v = 0; v < N; ++v)
                if (own[v] < 0) rest.push_back(v);
            ext.push_back(rest);
            Vec expect = (k % 2 == 0 ? -1.0 : 1.0) * indicator_form(X, ext);
            Vec got = d(X, k, chi);
            dchi.add((got - expect).cwiseAbs().maxCoeff(), 0.0, 1.0, U);
            bool degen = false;
            double ho = h_out(X, U, &degen);
            hout.add(ho, h_out_norm(X, U), 1.0, U);
            double hi = h_inner(X, U);
            hin.add(hi, h_inner_norm(X, U), 1.0, U);
            range.add(std::max({-ho, ho - 1.0, -hi, hi - 1.0}), 0.0, 1.0, U);
        };
        if (family_count(N, k + 1) <= std::min<std::uint64_t>(budget, 5000)) {
            for_each_family(N, k + 1, true, budget, check);
        } else if (N >= k + 1) {
            for (int t = 0; t < trials; ++t) check(random_family(N, k + 1, true, rng));
        }
        out.push_back(chi_norm.finish());
        out.push_back(dchi.finish());
        out.push_back(hout.finish());
        out.push_back(hin.finish());
        out.push_back(range.finish());
    }

    for (int k = 0; k <= X.n - 1; ++k) {
        const std::string ks = ".k" + std::to_string(k);
        CheegerReport r;
        try {
            r = h_k_exhaustive(X, k, budget);
        } catch (const BudgetError&) {
            r = h_k_sampled(X, k, std::max(trials, 1) * 64, seed + static_cast<std::uint64_t>(k));
        }
        nlohmann::json w = r.to_json();
        if (r.applicable)
            out.push_back(make_cert("cheeger.theorem" + ks, "cheeger.local_to_global", "ge", r.h,
                                    r.epsilon_bound, 1e-10, w));
        else
            out.push_back(not_applicable("cheeger.theorem" + ks, "cheeger.local_to_global",
                                         "links disconnected or gap at most k/(k+1)"));
        if (r.corollary_applicable)
            out.push_back(make_cert("cheeger.corollary" + ks, "cheeger.top_down", "ge", r.h,
                                    r.epsilon_corollary, 1e-10, w));
        else
            out.push_back(not_applicable("cheeger.corollary" + ks, "cheeger.top_down",
                                         "top links disconnected or gap at most (n-1)/n"));
    }

    if (X.n == 1) {
        try {
            GraphCheeger g = cheeger_graph(X, budget);
            nlohmann::json w = {{"h", g.h}, {"h0", g.h0}, {"lambda", g.lambda}, {"witness", g.witness}};
            out.push_back(make_cert("cheeger.graph.lower", "cheeger.graph", "le", g.h * g.h / 2, g.lambda, 1e-10, w));
            out.push_back(make_cert("cheeger.graph.upper", "cheeger.graph", "le", g.lambda, 2 * g.h, 1e-10, w));
            out.push_back(make_cert("cheeger.graph.h0_lower", "cheeger.graph", "le", g.lambda, g.h0, 1e-10, w));
            out.push_back(make_cert("cheeger.graph.h0_upper", "cheeger.graph", "le", g.h0, 2 * g.h, 1e-10, w));
        } catch (const BudgetError& e) {
            out.push_back(not_applicable("cheeger.graph", "cheeger.graph", e.what()));
        }
    }
    return out;
}

}  // namespace hdx
