#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph on the k-simplices, adjacent through a common (k+1)-simplex.
// For k = -1 there is one vertex and a loop per vertex of X.
struct KGraph {
    struct Edge {
        int a, b;   // endpoints (a == b for loops)
        int label;  // index of the (k+1)-simplex
    };
    int k = 0;
    int num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<double> c;   // conductance per edge
    std::vector<double> nu;  // stationary measure per vertex
    std::vector<std::vector<int>> incident;

    double mu(int v, int e) const { return c[e] / nu[v]; }
    int other(int v, int e) const { return edges[e].a == v ? edges[e].b : edges[e].a; }
};

using VertexSet = std::vector<char>;
using EdgeSet = std::vector<char>;

KGraph build_kgraph(const Complex& X, int k);

struct Subgraph {
    VertexSet vertices;
    EdgeSet edges;
};
// Restriction of G to the complex spanned by U.
Subgraph spanned_subgraph(const Complex& X, const KGraph& G, const SubsetFamily& U);

double path_mu(const KGraph& G, const VertexSet& start, const std::vector<EdgeSet>& steps);
double path_c(const KGraph& G, const VertexSet& start, const std::vector<EdgeSet>& steps);

// Throws ComplexError if the sets overlap or name unknown vertices.
void check_family(const Complex& X, const SubsetFamily& U);
// owner[v] = index of the set containing v, or -1
std::vector<int> owners(const Complex& X, const SubsetFamily& U);

double m_tuple(const Complex& X, const SubsetFamily& U);
double set_weight(const Complex& X, const std::vector<int>& U);

// k = U.size() - 1
double h_inner(const Complex& X, const SubsetFamily& U);
double h_inner_closed(const Complex& X, const SubsetFamily& U);

// Visits every family of `parts` pairwise disjoint subsets of {0..N-1} in a
// fixed order. Throws BudgetError if (parts+1)^N exceeds budget.
void for_each_family(int N, int parts, bool nonempty, std::uint64_t budget,
                     const std::function<void(const SubsetFamily&)>& f);
std::uint64_t family_count(int N, int parts);
SubsetFamily random_family(int N, int parts, bool nonempty, std::mt19937_64& rng);

std::vector<Certificate> walk_identities(const Complex& X, int trials, std::uint64_t seed,
                                         std::uint64_t budget);

}  // namespace hdx
