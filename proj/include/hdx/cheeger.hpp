#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hdx/cochains.hpp"
#include "hdx/walks.hpp"

namespace hdx {

// chi(sigma) = 1 on sigma = (u_0..u_k) with u_i in U_i, extended antisymmetrically.
Vec indicator_form(const Complex& X, const SubsetFamily& U);

// m(U_0..U_k, complement) / m(U_0..U_k); 0 when the complement is empty or
// m(U_0..U_k) = 0 (the latter sets *degenerate).
double h_out(const Complex& X, const SubsetFamily& U, bool* degenerate = nullptr);
// Same quantities through the indicator form.
double h_out_norm(const Complex& X, const SubsetFamily& U);
double h_inner_norm(const Complex& X, const SubsetFamily& U);

// (k h_in + h_out) / ((k+1)(1 - h_in)), +inf when h_in = 1.
double tuple_bound(double h_in, double h_out, int k);

struct CheegerReport {
    int k = 0;
    double h = std::numeric_limits<double>::infinity();
    SubsetFamily witness;
    double epsilon_bound = 0.0;      // lambda - k/(k+1), measured on links
    double epsilon_corollary = 0.0;  // from the top-level gap through f
    bool applicable = false;
    bool corollary_applicable = false;
    bool pass = true;
    bool sampled = false;
    std::uint64_t tuples = 0;
    std::uint64_t skipped = 0;  // families spanning no k-simplex

    nlohmann::json to_json() const;
};

CheegerReport h_k_exhaustive(const Complex& X, int k, std::uint64_t budget);
CheegerReport h_k_sampled(const Complex& X, int k, int samples, std::uint64_t seed);

// Graph quantities of a 1-dimensional complex.
struct GraphCheeger {
    double h = std::numeric_limits<double>::infinity();
    double h0 = std::numeric_limits<double>::infinity();
    double lambda = 0.0;  // second smallest eigenvalue of Delta_0^+
    std::vector<int> witness;
};
GraphCheeger cheeger_graph(const Complex& X, std::uint64_t budget);

std::vector<Certificate> verify_cheeger(const Complex& X, std::uint64_t budget, int trials,
                                        std::uint64_t seed);

}  // namespace hdx
