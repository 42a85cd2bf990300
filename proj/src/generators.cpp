#include "hdx/harness.hpp"

#include <algorithm>
#include <random>

namespace hdx {

Complex gen_complete_skeleton(int N, int n) {
    if (n < 0 || N <= n) throw ComplexError("complete skeleton needs N >= n+1");
    std::vector<std::vector<int>> facets;
    std::vector<int> pick(N, 0);
    std::fill(pick.begin(), pick.begin() + n + 1, 1);
    do {
        std::vector<int> f;
        for (int i = 0; i < N; ++i)
            if (pick[i]) f.push_back(i);
        facets.push_back(f);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return build_complex(facets);
}

Complex gen_complete_multipartite(const std::vector<int>& sizes) {
    if (sizes.empty()) throw ComplexError("no sides");
    std::vector<int> offset, side;
    int total = 0;
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw ComplexError("empty side");
        offset.push_back(total);
        for (int a = 0; a < sizes[i]; ++a) side.push_back(static_cast<int>(i));
        total += sizes[i];
    }
    std::vector<std::vector<int>> facets;
    std::vector<int> idx(sizes.size(), 0);
    while (true) {
        std::vector<int> f;
        for (size_t i = 0; i < sizes.size(); ++i) f.push_back(offset[i] + idx[i]);
        facets.push_back(f);
        size_t i = sizes.size();
        while (i > 0) {
            --i;
            if (++idx[i] < sizes[i]) break;
            idx[i] = 0;
            if (i == 0) return build_complex(facets, {}, side);
        }
    }
}

FlagResult gen_flag_random(int N, double p, int n, std::uint64_t seed) {
    if (N < 1 || n < 0) throw ComplexError("flag generator: bad size");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<char>> adj(N, std::vector<char>(N, 0));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (u(rng) < p) adj[a][b] = adj[b][a] = 1;

    // cliques of size n+1, and maximal cliques of size <= n+1
    std::vector<std::vector<int>> top, maximal_small;
    std::vector<int> cur;
    auto extend = [&](auto&& self, int start) -> void {
        bool grew = false;
        if (static_cast<int>(cur.size()) == n + 1) {
            top.push_back(cur);
            return;
        }
        for (int v = 0; v < N; ++v) {
            if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
            bool ok = std::all_of(cur.begin(), cur.end(), [&](int w) { return adj[v][w]; });
            if (!ok) continue;
            grew = true;
            if (v < start) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
        if (!grew && !cur.empty()) maximal_small.push_back(cur);
    };
    extend(extend, 0);

    FlagResult r;
    if (top.empty()) {
        r.degenerate = true;
        r.warning = "no simplices of the requested dimension";
        r.X = build_complex({{0}});
        return r;
    }
    r.pruned = !maximal_small.empty();
    if (r.pruned) r.warning = "non-pure part removed (" + std::to_string(maximal_small.size()) + " maximal faces)";
    r.X = build_complex(top);
    return r;
}

}  // namespace hdx
