#include "hdx/complex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

namespace hdx {

std::int64_t factorial(int k) {
    std::int64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

int Complex::find(const Simplex& s) const {
    int k = static_cast<int>(s.size()) - 1;
    if (k < -1 || k > n) return -1;
    auto it = index[k + 1].find(s);
    return it == index[k + 1].end() ? -1 : it->second;
}

double Complex::weight(const Simplex& s) const {
    int i = find(s);
    if (i < 0) throw ComplexError("simplex not in complex");
    return m[s.size()][i];
}

int sort_sign(const OrderedSimplex& s, Simplex& sorted) {
    sorted = s;
    int sign = 1;
    // insertion sort, counting transpositions
    for (size_t i = 1; i < sorted.size(); ++i)
        for (size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
            std::swap(sorted[j - 1], sorted[j]);
            sign = -sign;
        }
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return 0;
    return sign;
}

Simplex unite(const Simplex& a, const Simplex& b) {
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Complex build_complex(const std::vector<std::vector<int>>& facets,
                      const std::vector<double>& facet_weights,
                      const std::vector<int>& partition) {
    if (facets.empty()) throw ComplexError("no facets");
    if (!facet_weights.empty() && facet_weights.size() != facets.size())
        throw ComplexError("facet weight count mismatch");
    const size_t card = facets[0].size();
    if (card == 0) throw ComplexError("empty facet");
    for (const auto& f : facets)
        if (f.size() != card) throw ComplexError("mixed facet dimensions");
    for (double w : facet_weights)
        if (!(w > 0) || !std::isfinite(w)) throw ComplexError("nonpositive facet weight");

    Complex X;
    X.n = static_cast<int>(card) - 1;

    std::set<int> verts;
    for (const auto& f : facets) verts.insert(f.begin(), f.end());
    X.label.assign(verts.begin(), verts.end());
    std::map<int, int> dense;
    for (size_t i = 0; i < X.label.size(); ++i) dense[X.label[i]] = static_cast<int>(i);

    std::vector<std::pair<Simplex, double>> top;
    for (size_t i = 0; i < facets.size(); ++i) {
        Simplex s;
        for (int v : facets[i]) s.push_back(dense[v]);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ComplexError("repeated vertex in facet");
        top.emplace_back(s, facet_weights.empty() ? 1.0 : facet_weights[i]);
    }
    std::sort(top.begin(), top.end());
    for (size_t i = 1; i < top.size(); ++i)
        if (top[i].first == top[i - 1].first) throw ComplexError("duplicate facet");

    bool integral = std::all_of(top.begin(), top.end(), [](const auto& p) {
        return p.second == std::floor(p.second) && p.second < 1e9;
    });

    const int n = X.n;
    X.simp.assign(n + 2, {});
    X.index.assign(n + 2, {});
    X.m.assign(n + 2, {});
    std::vector<std::vector<std::int64_t>> mex(n + 2);
    for (auto& [s, w] : top) {
        X.simp[n + 1].push_back(s);
        X.m[n + 1].push_back(w);
        mex[n + 1].push_back(static_cast<std::int64_t>(w));
    }
    for (int k = n; k >= 0; --k) {
        // faces of dimension k-1 from simplices of dimension k
        std::set<Simplex> faces;
        for (const auto& s : X.simp[k + 1])
            for (size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + i);
                faces.insert(f);
            }
        X.simp[k].assign(faces.begin(), faces.end());
        for (size_t i = 0; i < X.simp[k].size(); ++i) X.index[k][X.simp[k][i]] = static_cast<int>(i);
        X.m[k].assign(X.simp[k].size(), 0.0);
        mex[k].assign(X.simp[k].size(), 0);
        for (size_t j = 0; j < X.simp[k + 1].size(); ++j) {
            const auto& s = X.simp[k + 1][j];
            for (size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + i);
                int fi = X.index[k][f];
                X.m[k][fi] += X.m[k + 1][j];
                mex[k][fi] += mex[k + 1][j];
            }
        }
    }
    for (size_t i = 0; i < X.simp[n + 1].size(); ++i) X.index[n + 1][X.simp[n + 1][i]] = static_cast<int>(i);
    if (integral) X.m_exact = std::move(mex);

    if (!partition.empty()) {
        if (partition.size() != X.label.size()) throw ComplexError("partition size mismatch");
        X.side = partition;
        X.num_sides = n + 1;
        for (int s : X.side)
            if (s < 0 || s > n) throw ComplexError("side label out of range");
        for (const auto& f : X.simplices(n)) {
            std::vector<int> seen(n + 1, 0);
            for (int v : f)
                if (seen[X.side[v]]++) throw ComplexError("facet not transversal to the partition");
        }
    }
    return X;
}

Certificate weight_formula_check(const Complex& X, int l) {
    // sum[k+1][i] = sum of m over l-simplices containing the i-th k-simplex
    std::vector<std::vector<double>> sum(l + 1);
    for (int k = -1; k < l; ++k) sum[k + 1].assign(X.count(k), 0.0);
    for (int j = 0; j < X.count(l); ++j) {
        const Simplex& s = X.simplices(l)[j];
        const double w = X.weight(l, j);
        const unsigned full = (1u << s.size()) - 1;
        for (unsigned mask = 0; mask < full; ++mask) {
            Simplex t;
            for (size_t b = 0; b < s.size(); ++b)
                if (mask >> b & 1u) t.push_back(s[b]);
            int k = static_cast<int>(t.size()) - 1;
            sum[k + 1][X.find(t)] += w;
        }
    }
    WorstCase wc("weight.face_sum.l" + std::to_string(l), "weights.face_sum", "eq", 1e-12);
    for (int k = -1; k < l; ++k)
        for (int i = 0; i < X.count(k); ++i) {
            double lhs = X.weight(k, i) / static_cast<double>(factorial(l - k));
            wc.add(lhs, sum[k + 1][i], std::fabs(lhs), {{"k", k}, {"simplex", X.simplices(k)[i]}});
        }
    if (wc.count() == 0)
        return make_cert("weight.face_sum.l" + std::to_string(l), "weights.face_sum", "eq", 0, 0, 0,
                         {{"vacuous", true}});
    return wc.finish();
}

std::vector<Certificate> weight_identities(const Complex& X) {
    std::vector<Certificate> out;
    WorstCase rec("weight.recursion", "weights.recursion", "eq", 1e-12);
    for (int k = -1; k < X.n; ++k) {
        std::vector<double> s(X.count(k), 0.0);
        for (int j = 0; j < X.count(k + 1); ++j) {
            const Simplex& sig = X.simplices(k + 1)[j];
            for (size_t i = 0; i < sig.size(); ++i) {
                Simplex f = sig;
                f.erase(f.begin() + i);
                s[X.find(f)] += X.weight(k + 1, j);
            }
        }
        for (int i = 0; i < X.count(k); ++i)
            rec.add(s[i], X.weight(k, i), X.weight(k, i), {{"k", k}, {"simplex", X.simplices(k)[i]}});
    }
    out.push_back(rec.finish());
    for (int l = 0; l <= X.n; ++l) out.push_back(weight_formula_check(X, l));

    bool homogeneous = X.exact() &&
        std::all_of(X.m_exact[X.n + 1].begin(), X.m_exact[X.n + 1].end(), [](std::int64_t w) { return w == 1; });
    if (homogeneous) {
        std::int64_t worst = 0;
        Simplex where;
        for (int k = -1; k <= X.n; ++k) {
            std::vector<std::int64_t> cnt(X.count(k), 0);
            for (const auto& f : X.simplices(X.n)) {
                const unsigned full = (1u << f.size());
                for (unsigned mask = 0; mask < full; ++mask) {
                    if (std::popcount(mask) != k + 1) continue;
                    Simplex t;
                    for (size_t b = 0; b < f.size(); ++b)
                        if (mask >> b & 1u) t.push_back(f[b]);
                    ++cnt[X.find(t)];
                }
            }
            for (int i = 0; i < X.count(k); ++i) {
                std::int64_t d = X.m_exact[k + 1][i] - factorial(X.n - k) * cnt[i];
                if (d < 0) d = -d;
                if (d > worst) { worst = d; where = X.simplices(k)[i]; }
            }
        }
        out.push_back(make_cert("weight.homogeneous_exact", "weights.homogeneous", "eq",
                                static_cast<double>(worst), 0.0, 0.0, {{"simplex", where}}));
    }
    return out;
}

Simplex Link::lift(const Simplex& s) const {
    Simplex out;
    for (int v : s) out.push_back(back[v]);
    return unite(out, tau);
}

bool Link::pull(const Simplex& parent, Simplex& out) const {
    out.clear();
    for (int v : parent) {
        auto it = std::lower_bound(back.begin(), back.end(), v);
        if (it == back.end() || *it != v) return false;
        out.push_back(static_cast<int>(it - back.begin()));
    }
    return X.contains(out);
}

Link link(const Complex& X, const Simplex& tau) {
    int t = X.find(tau);
    if (t < 0) throw ComplexError("simplex not in complex");
    if (static_cast<int>(tau.size()) - 1 >= X.n) throw ComplexError("link of a top simplex");

    std::vector<std::vector<int>> facets;
    std::vector<double> weights;
    for (int j = 0; j < X.count(X.n); ++j) {
        const Simplex& f = X.simplices(X.n)[j];
        if (!std::includes(f.begin(), f.end(), tau.begin(), tau.end())) continue;
        Simplex rest;
        std::set_difference(f.begin(), f.end(), tau.begin(), tau.end(), std::back_inserter(rest));
        facets.push_back(rest);
        weights.push_back(X.weight(X.n, j));
    }
    Link L;
    L.tau = tau;
    L.X = build_complex(facets, weights);
    L.back = L.X.label;
    std::iota(L.X.label.begin(), L.X.label.end(), 0);
    for (int k = -1; k <= L.X.n; ++k)
        for (int i = 0; i < L.X.count(k); ++i) {
            int pi = X.find(L.lift(L.X.simplices(k)[i]));
            int pk = k + static_cast<int>(tau.size());
            L.X.m[k + 1][i] = X.m[pk + 1][pi];
            if (L.X.exact() && X.exact()) L.X.m_exact[k + 1][i] = X.m_exact[pk + 1][pi];
        }
    if (!X.exact()) L.X.m_exact.clear();
    if (X.partite()) {
        L.X.side.resize(L.back.size());
        for (size_t v = 0; v < L.back.size(); ++v) L.X.side[v] = X.side[L.back[v]];
        L.X.num_sides = X.num_sides;
    }
    return L;
}

static int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

bool is_connected(const Complex& X) {
    int nv = X.num_vertices();
    if (nv <= 1) return true;
    if (X.n < 1) return false;
    std::vector<int> p(nv);
    std::iota(p.begin(), p.end(), 0);
    int comps = nv;
    for (const auto& e : X.simplices(1)) {
        int a = find_root(p, e[0]), b = find_root(p, e[1]);
        if (a != b) { p[a] = b; --comps; }
    }
    return comps == 1;
}

ConnectivityReport connectivity_report(const Complex& X) {
    ConnectivityReport r;
    r.connected = is_connected(X);
    for (int k = 0; k <= X.n - 2; ++k)
        for (const auto& tau : X.simplices(k))
            if (!is_connected(link(X, tau).X)) {
                r.links_connected = false;
                r.disconnected_links.push_back(tau);
            }
    // galleries: facets adjacent through shared codimension-one faces
    int nf = X.count(X.n);
    std::vector<int> p(nf);
    std::iota(p.begin(), p.end(), 0);
    std::map<Simplex, int> first;
    int comps = nf;
    for (int j = 0; j < nf; ++j) {
        const Simplex& f = X.simplices(X.n)[j];
        for (size_t i = 0; i < f.size(); ++i) {
            Simplex g = f;
            g.erase(g.begin() + i);
            auto [it, fresh] = first.emplace(g, j);
            if (!fresh) {
                int a = find_root(p, it->second), b = find_root(p, j);
                if (a != b) { p[a] = b; --comps; }
            }
        }
    }
    r.gallery_connected = comps == 1;
    return r;
}

std::vector<OrderedSimplex> enumerate_ordered(const Complex& X, int k) {
    if (k < -1 || k > X.n) throw ComplexError("dimension out of range");
    std::vector<OrderedSimplex> out;
    for (const auto& s : X.simplices(k)) {
        OrderedSimplex o = s;
        do out.push_back(o);
        while (std::next_permutation(o.begin(), o.end()));
    }
    return out;
}

}  // namespace hdx
