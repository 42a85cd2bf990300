#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/certificate.hpp"

namespace hdx {

// Sorted, duplicate-free vertex list. The empty vector is the empty simplex.
using Simplex = std::vector<int>;
// Vertex order matters.
using OrderedSimplex = std::vector<int>;
// Pairwise disjoint vertex sets U_0..U_l.
using SubsetFamily = std::vector<std::vector<int>>;

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Complex {
    int n = -1;
    // simp[k+1] holds the k-simplices in lexicographic order, k = -1..n
    std::vector<std::vector<Simplex>> simp;
    std::vector<std::map<Simplex, int>> index;
    std::vector<std::vector<double>> m;
    // exact mirror of m when all facet weights are integers
    std::vector<std::vector<std::int64_t>> m_exact;
    // original vertex labels, label[v] for dense id v
    std::vector<int> label;
    // side of each vertex, empty when no partition is attached
    std::vector<int> side;
    int num_sides = 0;

    int dim() const { return n; }
    int num_vertices() const { return static_cast<int>(simp[1].size()); }
    const std::vector<Simplex>& simplices(int k) const { return simp.at(k + 1); }
    int count(int k) const { return (k < -1 || k > n) ? 0 : static_cast<int>(simp[k + 1].size()); }
    int find(const Simplex& s) const;
    bool contains(const Simplex& s) const { return find(s) >= 0; }
    double weight(int k, int i) const { return m[k + 1][i]; }
    double weight(const Simplex& s) const;
    const std::vector<double>& weights(int k) const { return m.at(k + 1); }
    bool exact() const { return !m_exact.empty(); }
    bool partite() const { return !side.empty(); }
    double total_vertex_weight() const { return m[0][0]; }
};

// facets: vertex sets of equal cardinality; weights default to 1.
// partition: side label per vertex, ordered by increasing vertex label.
Complex build_complex(const std::vector<std::vector<int>>& facets,
                      const std::vector<double>& facet_weights = {},
                      const std::vector<int>& partition = {});

Certificate weight_formula_check(const Complex& X, int l);
// Recursion check plus the homogeneous integer formula when applicable.
std::vector<Certificate> weight_identities(const Complex& X);

struct Link {
    Complex X;
    std::vector<int> back;  // link vertex -> vertex of the parent
    Simplex tau;
    // parent simplex of a link simplex
    Simplex lift(const Simplex& s) const;
    // link simplex of a parent simplex disjoint from tau, or nothing
    bool pull(const Simplex& parent, Simplex& out) const;
};

Link link(const Complex& X, const Simplex& tau);

struct ConnectivityReport {
    bool connected = false;
    bool links_connected = true;
    bool gallery_connected = false;
    std::vector<Simplex> disconnected_links;
};

bool is_connected(const Complex& X);
ConnectivityReport connectivity_report(const Complex& X);

std::vector<OrderedSimplex> enumerate_ordered(const Complex& X, int k);

// Sign of the permutation sorting s, and the sorted result.
int sort_sign(const OrderedSimplex& s, Simplex& sorted);
Simplex unite(const Simplex& a, const Simplex& b);

std::int64_t factorial(int k);

}  // namespace hdx
