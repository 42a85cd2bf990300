#include "hdx/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hdx/cheeger.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

namespace {

SubsetFamily slice(const SubsetFamily& U, int a, int b) {
    return SubsetFamily(U.begin() + a, U.begin() + b + 1);
}

// h(v) = sum over walks from v through the edge sets, weighted by mu
std::vector<double> backward_mu(const KGraph& G, const std::vector<EdgeSet>& steps) {
    std::vector<double> h(G.num_vertices, 1.0);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::vector<double> g(G.num_vertices, 0.0);
        for (int v = 0; v < G.num_vertices; ++v)
            for (int e : G.incident[v])
                if ((*it)[e]) g[v] += G.mu(v, e) * h[G.other(v, e)];
        h.swap(g);
    }
    return h;
}

std::vector<EdgeSet> window_edges(const Complex& X, const KGraph& G, const SubsetFamily& U, int width) {
    std::vector<EdgeSet> steps;
    const int l = static_cast<int>(U.size()) - 1;
    for (int i = 0; i + width - 1 <= l; ++i)
        steps.push_back(spanned_subgraph(X, G, slice(U, i, i + width - 1)).edges);
    return steps;
}

// U in the order of its sets, for evaluating forms on ordered simplices
OrderedSimplex u_ordered(const Simplex& s, const std::vector<int>& own, int offset) {
    OrderedSimplex o(s.size());
    for (int v : s) o[own[v] - offset] = v;
    return o;
}

double prod_weights(const Complex& X, const SubsetFamily& U) {
    double p = 1.0;
    for (const auto& s : U) p *= set_weight(X, s);
    return p;
}

}  // namespace

Vec projection_diagonal(const Complex& X, const SubsetFamily& U) {
    return indicator_form(X, U).cwiseAbs();
}

Mat projection(const Complex& X, const SubsetFamily& U) {
    return projection_diagonal(X, U).asDiagonal();
}

Vec psi_form(const Complex& X, int k, const SubsetFamily& U) {
    const int l = static_cast<int>(U.size()) - 1;
    check_family(X, U);
    if (k == -1) {
        Vec r(1);
        r[0] = prod_weights(X, U) / std::pow(X.weight(-1, 0), l + 1);
        return r;
    }
    if (k < 0 || k >= l || k > X.n - 1) throw ComplexError("psi form needs 0 <= k < l and k <= n-1");
    KGraph G = build_kgraph(X, k);
    auto h = backward_mu(G, window_edges(X, G, U, k + 2));
    Vec chi = indicator_form(X, slice(U, 0, k));
    Vec out = Vec::Zero(X.count(k));
    for (int i = 0; i < X.count(k); ++i) out[i] = chi[i] * h[i];
    return out;
}

Vec operator_product(const Complex& X, int k, const Mat& L, const SubsetFamily& U) {
    const int l = static_cast<int>(U.size()) - 1;
    Vec phi = indicator_form(X, slice(U, l - k, l));
    for (int i = l - k - 1; i >= 0; --i)
        phi = projection_diagonal(X, slice(U, i, i + k)).cwiseProduct(L * phi);
    return phi;
}

double pathc_family(const Complex& X, const KGraph& G, const SubsetFamily& U) {
    const int k = G.k;
    VertexSet V = spanned_subgraph(X, G, slice(U, 0, k)).vertices;
    return path_c(G, V, window_edges(X, G, U, k + 2));
}

std::vector<Certificate> operator_product_identities(const Complex& X, int trials, std::uint64_t seed) {
    std::vector<Certificate> out;
    const int n = X.n, N = X.num_vertices();
    if (n < 1) {
        out.push_back(not_applicable("mixing.identities", "mixing.operator_products", "needs n >= 1"));
        return out;
    }
    std::mt19937_64 rng(seed);
    const double me = X.weight(-1, 0);

    // products of P_{U_i} and the lower Laplacian on vertices
    {
        Mat L = laplacian(X, 0, LaplacianKind::down);
        WorstCase c("mixing.lower_product_vertices", "mixing.vertex_average_product", "eq", 1e-9);
        WorstCase ip("mixing.inner_product_minus_one", "mixing.pathc_inner_product", "eq", 1e-9);
        KGraph G = build_kgraph(X, -1);
        for (int l = 1; l <= std::min(N - 1, 4); ++l)
            for (int t = 0; t < trials; ++t) {
                SubsetFamily U = random_family(N, l + 1, true, rng);
                Vec got = operator_product(X, 0, L, U);
                double coeff = prod_weights(X, slice(U, 1, l)) / std::pow(me, l);
                Vec expect = coeff * indicator_form(X, {U[0]});
                double scale = std::max(expect.cwiseAbs().maxCoeff(), 1e-300);
                c.add((got - expect).cwiseAbs().maxCoeff() / scale, 0.0, 1.0, U);
                std::vector<EdgeSet> steps;
                for (const auto& s : U) steps.push_back(spanned_subgraph(X, G, {s}).edges);
                double pc = path_c(G, VertexSet{1}, steps);
                double lhs = std::fabs(inner(X, 0, indicator_form(X, {U[0]}), got));
                ip.add(lhs, pc, std::max(std::fabs(pc), 1e-300), U);
            }
        out.push_back(c.finish());
        out.push_back(ip.finish());
    }

    for (int k = 0; k <= n - 1; ++k) {
        const std::string ks = ".k" + std::to_string(k);
        Mat Lup = laplacian(X, k, LaplacianKind::up);
        Mat Ldown = laplacian(X, k, LaplacianKind::down);
        KGraph G = build_kgraph(X, k);
        KGraph H = k >= 1 ? build_kgraph(X, k - 1) : KGraph{};
        WorstCase l1("mixing.upper_product" + ks, "mixing.upper_product_walk_form", "eq", 1e-9);
        WorstCase l2("mixing.lower_product" + ks, "mixing.lower_product_walk_form", "eq", 1e-9);
        WorstCase l2z("mixing.lower_product_support" + ks, "mixing.lower_product_walk_form", "le", 1e-12);
        WorstCase ipp("mixing.inner_product_upper" + ks, "mixing.pathc_inner_product", "eq", 1e-9);
        WorstCase ipm("mixing.inner_product_lower" + ks, "mixing.pathc_inner_product", "eq", 1e-9);
        WorstCase cat("mixing.psi_concatenation" + ks, "mixing.psi_recursion", "eq", 1e-9);
        for (int l = k + 1; l <= std::min(N - 1, k + 3); ++l) {
            for (int t = 0; t < trials; ++t) {
                SubsetFamily U = random_family(N, l + 1, true, rng);
                auto own = owners(X, U);
                Vec chi0 = indicator_form(X, slice(U, 0, k));

                Vec plus = operator_product(X, k, Lup, U);
                Vec psi = psi_form(X, k, U);
                const double s1 = ((k + 1) * (l - k)) % 2 == 0 ? 1.0 : -1.0;
                Vec lhs1 = s1 / std::pow(k + 1, l - k - 1) * plus;
                double sc1 = std::max(psi.cwiseAbs().maxCoeff(), 1e-300);
                l1.add((lhs1 - psi).cwiseAbs().maxCoeff() / sc1, 0.0, 1.0, U);

                double pc = pathc_family(X, G, U);
                double ip = std::fabs(inner(X, k, chi0, plus));
                double expect_p = std::pow(k + 1, l - k - 2) * pc;
                ipp.add(ip, expect_p, std::max(expect_p, 1e-300), U);

                if (k >= 1) {
                    Vec minus = operator_product(X, k, Ldown, U);
                    Vec supp = projection_diagonal(X, slice(U, 0, k));
                    double outside = 0.0;
                    for (int i = 0; i < minus.size(); ++i)
                        if (supp[i] == 0.0) outside = std::max(outside, std::fabs(minus[i]));
                    l2z.add(outside, 0.0, 1.0, U);

                    Vec psi1 = psi_form(X, k - 1, slice(U, 1, l));
                    const double s2 = ((l - k) * k) % 2 == 0 ? 1.0 : -1.0;
                    const double f2 = s2 / std::pow(k, l - k - 1);
                    double worst = 0.0, mag = 1e-300;
                    const auto& ks_ = X.simplices(k);
                    for (size_t i = 0; i < ks_.size(); ++i) {
                        if (supp[static_cast<long>(i)] == 0.0) continue;
                        OrderedSimplex sig = u_ordered(ks_[i], own, 0);
                        double a = f2 * evaluate(X, k, minus, sig);
                        OrderedSimplex sig0(sig.begin() + 1, sig.end());
                        double b = evaluate(X, k - 1, psi1, sig0);
                        worst = std::max(worst, std::fabs(a - b));
                        mag = std::max(mag, std::fabs(b));
                    }
                    l2.add(worst / mag, 0.0, 1.0, U);

                    std::vector<EdgeSet> steps = window_edges(X, H, U, k + 1);
                    VertexSet V = spanned_subgraph(X, H, slice(U, 0, k - 1)).vertices;
                    double pcm = path_c(H, V, steps);
                    double ipv = std::fabs(inner(X, k, chi0, minus));
                    double expect_m = std::pow(k, l - 1 - k) * pcm;
                    ipm.add(ipv, expect_m, std::max(expect_m, 1e-300), U);
                }

                if (l >= k + 2) {
                    Vec tail = psi_form(X, k, slice(U, 1, l));
                    EdgeSet E = spanned_subgraph(X, G, slice(U, 0, k + 1)).edges;
                    const auto& ks_ = X.simplices(k);
                    double worst = 0.0, mag = 1e-300;
                    for (int v = 0; v < G.num_vertices; ++v) {
                        if (chi0[v] == 0.0) continue;
                        double rhs = 0.0;
                        for (int e : G.incident[v]) {
                            if (!E[e]) continue;
                            int w = G.other(v, e);
                            // the tail form vanishes off U_1..U_{k+1}
                            bool inside = std::all_of(ks_[w].begin(), ks_[w].end(),
                                                      [&](int u) { return own[u] >= 1 && own[u] <= k + 1; });
                            if (inside) rhs += G.mu(v, e) * evaluate(X, k, tail, u_ordered(ks_[w], own, 1));
                        }
                        double lhs = evaluate(X, k, psi, u_ordered(ks_[v], own, 0));
                        worst = std::max(worst, std::fabs(lhs - rhs));
                        mag = std::max(mag, std::fabs(lhs));
                    }
                    cat.add(worst / mag, 0.0, 1.0, U);
                }
            }
        }
        out.push_back(l1.finish());
        out.push_back(ipp.finish());
        if (k >= 1) {
            out.push_back(l2.finish());
            out.push_back(l2z.finish());
            out.push_back(ipm.finish());
        }
        out.push_back(cat.finish());
    }
    return out;
}

nlohmann::json MixingConstants::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (const auto& c : levels)
        lv.push_back({{"j", c.j}, {"lambda", c.lambda}, {"kappa", c.kappa}, {"r", c.r}, {"eps", c.eps}});
    nlohmann::json j = {{"n", n}, {"l", l}, {"partite", partite}, {"applicable", applicable},
                        {"levels", lv}, {"A", A}, {"E", E}};
    if (partite) {
        j["E_printed"] = E_printed;
        j["leading"] = leading;
    }
    return j;
}

MixingConstants mixing_constants(int n, int l, double lambda, double kappa, bool partite) {
    if (n < 1 || l < 1 || l > n) throw ComplexError("mixing constants need 1 <= l <= n");
    MixingConstants mc;
    mc.n = n;
    mc.l = l;
    mc.partite = partite;
    if (partite) lambda = std::min(lambda, 1.0);
    mc.applicable = lambda > static_cast<double>(n - 1) / n && (partite || lambda <= kappa);
    for (int j = 0; j < l; ++j) {
        LevelConstants c;
        c.j = j;
        c.lambda = iterate(lambda, n - 1 - j);
        if (partite) {
            c.kappa = 0.0;
            c.r = static_cast<double>(n + 1 - j) / (n - j);
            c.eps = (l - j) * std::pow((n + 1.0) / (2.0 * (n - j)), l - j - 1) * (j + 1) * (n + 1 - j) *
                    (1.0 - c.lambda) / 2.0;
        } else {
            c.kappa = iterate(kappa, n - 1 - j);
            c.r = (c.lambda + c.kappa) / 2.0;
            c.eps = (l - j) * (j + 1) * std::pow(((j + 1) * c.kappa - j) / 2.0, l - j - 1) *
                    (c.kappa - c.lambda) / 2.0;
        }
        mc.levels.push_back(c);
    }
    auto tail = [&](int from) {
        double p = 1.0;
        for (int j = from; j < l; ++j) p *= std::pow(mc.levels[j].r, l - j);
        return p;
    };
    mc.A = tail(0);
    double S = 0.0;
    for (int i = 0; i < l; ++i) S += mc.levels[i].eps * tail(i + 1);
    if (partite) {
        double denom = 1.0;
        for (int i = 0; i <= l; ++i) denom *= (n + 1 - i);
        mc.leading = 1.0 / denom;
        mc.E = S / (n + 1);
        mc.E_printed = (n + 1) * S;
    } else {
        mc.E = S;
    }
    return mc;
}

namespace {

// Side-respecting families: U_i nonempty inside distinct sides s_0 < ... < s_l.
void for_each_partite_family(const Complex& X, int l, std::uint64_t budget, std::mt19937_64& rng, int trials,
                             const std::function<void(const SubsetFamily&, const std::vector<int>&)>& f) {
    std::vector<std::vector<int>> sides(X.num_sides);
    for (int v = 0; v < X.num_vertices(); ++v) sides[X.side[v]].push_back(v);
    const int S = X.num_sides;
    std::vector<int> pick(S, 0);
    std::fill(pick.begin(), pick.begin() + l + 1, 1);
    std::vector<std::vector<int>> combos;
    do {
        std::vector<int> c;
        for (int i = 0; i < S; ++i)
            if (pick[i]) c.push_back(i);
        combos.push_back(c);
    } while (std::prev_permutation(pick.begin(), pick.end()));

    long double total = 0;
    for (const auto& c : combos) {
        long double p = 1;
        for (int s : c) p *= std::pow(2.0L, sides[s].size()) - 1;
        total += p;
    }
    auto subset = [&](int s, std::uint64_t mask) {
        std::vector<int> r;
        for (size_t i = 0; i < sides[s].size(); ++i)
            if (mask >> i & 1ULL) r.push_back(sides[s][i]);
        return r;
    };
    if (total <= static_cast<long double>(budget)) {
        for (const auto& c : combos) {
            std::vector<std::uint64_t> mask(c.size(), 1);
            while (true) {
                SubsetFamily U;
                for (size_t i = 0; i < c.size(); ++i) U.push_back(subset(c[i], mask[i]));
                f(U, c);
                size_t i = 0;
                while (i < c.size()) {
                    if (++mask[i] < (1ULL << sides[c[i]].size())) break;
                    mask[i++] = 1;
                }
                if (i == c.size()) break;
            }
        }
        return;
    }
    std::uniform_int_distribution<size_t> pc(0, combos.size() - 1);
    for (int t = 0; t < trials; ++t) {
        const auto& c = combos[pc(rng)];
        SubsetFamily U;
        for (int s : c) {
            std::uniform_int_distribution<std::uint64_t> pm(1, (1ULL << sides[s].size()) - 1);
            U.push_back(subset(s, pm(rng)));
        }
        f(U, c);
    }
}

}  // namespace

std::vector<Certificate> verify_mixing(const Complex& X, int l, bool partite, const MixingOptions& opt) {
    std::vector<Certificate> out;
    const int n = X.n, N = X.num_vertices();
    const std::string ls = ".l" + std::to_string(l);
    const std::string kind = partite ? "mixing.partite" : "mixing.general";
    const std::string anchor = partite ? "mixing.partite_corollary" : "mixing.corollary";
    if (n < 1 || l < 1 || l > n) {
        out.push_back(not_applicable(kind + ls, anchor, "needs 1 <= l <= n"));
        return out;
    }
    if (partite && !X.partite()) {
        out.push_back(not_applicable(kind + ls, anchor, "complex carries no partition"));
        return out;
    }
    ProfileRow top = link_profile(X, n - 2);
    MixingConstants mc = mixing_constants(n, l, top.lambda, top.kappa, partite);
    if (top.disconnected || !mc.applicable) {
        out.push_back(not_applicable(kind + ls, anchor, "links disconnected or gap at most (n-1)/n"));
        return out;
    }
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(l));
    const double me = X.weight(-1, 0);
    const std::uint64_t cap = opt.exhaustive ? std::min<std::uint64_t>(opt.budget, 2000000) : 0;
    nlohmann::json consts = mc.to_json();

    if (!partite) {
        WorstCase pair(kind + ".min_pair" + ls, anchor, "le", 0.0);
        WorstCase geo(kind + ".geometric" + ls, anchor, "le", 0.0);
        auto check = [&](const SubsetFamily& U) {
            double mU = m_tuple(X, U);
            double prod = prod_weights(X, U);
            double dev = std::fabs(mU - mc.A * prod / std::pow(me, l));
            double mp = 1e300;
            for (int i = 0; i <= l; ++i)
                for (int j = i + 1; j <= l; ++j)
                    mp = std::min(mp, std::sqrt(set_weight(X, U[i]) * set_weight(X, U[j])));
            pair.add(dev, mc.E * mp + 1e-10, 1.0, U);
            geo.add(dev, mc.E * std::pow(prod, 1.0 / (l + 1)) + 1e-10, 1.0, U);
        };
        if (family_count(N, l + 1) <= cap)
            for_each_family(N, l + 1, true, cap, check);
        else if (N >= l + 1)
            for (int t = 0; t < opt.trials; ++t) check(random_family(N, l + 1, true, rng));
        for (auto* w : {&pair, &geo}) {
            Certificate c = w->finish();
            c.witness["constants"] = consts;
            out.push_back(c);
        }
        return out;
    }

    std::vector<double> mS(X.num_sides, 0.0);
    for (int v = 0; v < N; ++v) mS[X.side[v]] += X.weight(0, v);
    WorstCase dp(kind + ".derived.min_pair" + ls, anchor, "le", 0.0);
    WorstCase dg(kind + ".derived.geometric" + ls, anchor, "le", 0.0);
    WorstCase pp(kind + ".printed.min_pair" + ls, anchor, "le", 0.0);
    WorstCase pg(kind + ".printed.geometric" + ls, anchor, "le", 0.0);
    for_each_partite_family(X, l, cap, rng, opt.trials, [&](const SubsetFamily& U, const std::vector<int>& c) {
        double ratio = 1.0, mp = 1e300;
        std::vector<double> r(l + 1);
        for (int i = 0; i <= l; ++i) {
            r[i] = set_weight(X, U[i]) / mS[c[i]];
            ratio *= r[i];
        }
        for (int i = 0; i <= l; ++i)
            for (int j = i + 1; j <= l; ++j) mp = std::min(mp, std::sqrt(r[i] * r[j]));
        double dev = std::fabs(m_tuple(X, U) / me - mc.leading * ratio);
        double g = std::pow(ratio, 1.0 / (l + 1));
        nlohmann::json w = {{"family", U}, {"sides", c}};
        dp.add(dev, mc.E * mp + 1e-10, 1.0, w);
        dg.add(dev, mc.E * g + 1e-10, 1.0, w);
        pp.add(dev, mc.E_printed * mp + 1e-10, 1.0, w);
        pg.add(dev, mc.E_printed * g + 1e-10, 1.0, w);
    });
    for (auto* w : {&dp, &dg, &pp, &pg}) {
        Certificate c = w->finish();
        c.witness["constants"] = consts;
        out.push_back(c);
    }
    return out;
}

std::vector<Certificate> mixing_suite(const Complex& X, const MixingOptions& opt) {
    std::vector<Certificate> out = operator_product_identities(X, std::min(opt.trials, 16), opt.seed);
    // m(U_0..U_l) is symmetric in the U_i
    {
        std::mt19937_64 rng(opt.seed ^ 0x5bd1e995ULL);
        WorstCase perm("mixing.permutation_invariance", "mixing.tuple_weight", "eq", 1e-12);
        for (int l = 1; l <= std::min(X.n, X.num_vertices() - 1); ++l)
            for (int t = 0; t < opt.trials; ++t) {
                SubsetFamily U = random_family(X.num_vertices(), l + 1, true, rng);
                double a = m_tuple(X, U);
                SubsetFamily V = U;
                std::shuffle(V.begin(), V.end(), rng);
                perm.add(m_tuple(X, V), a, std::max(1.0, a), U);
            }
        out.push_back(perm.finish());
    }
    for (int l = 1; l <= X.n; ++l) {
        auto g = verify_mixing(X, l, false, opt);
        out.insert(out.end(), g.begin(), g.end());
        if (X.partite()) {
            auto p = verify_mixing(X, l, true, opt);
            out.insert(out.end(), p.begin(), p.end());
        }
    }
    return out;
}

}  // namespace hdx
