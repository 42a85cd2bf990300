#pragma once

#include <cstdint>
#include <vector>

#include "hdx/cochains.hpp"
#include "hdx/walks.hpp"

namespace hdx {

// Diagonal of P_{U_0..U_k}: 1 on k-simplices transversal to U, else 0.
Vec projection_diagonal(const Complex& X, const SubsetFamily& U);
Mat projection(const Complex& X, const SubsetFamily& U);

// Random walk form Psi_k(U_0..U_l). For k = -1 the result has one entry.
Vec psi_form(const Complex& X, int k, const SubsetFamily& U);

// phi = chi(U_{l-k}..U_l), then phi <- P(U_i..U_{i+k}) L phi for i = l-k-1..0.
Vec operator_product(const Complex& X, int k, const Mat& L, const SubsetFamily& U);

// pathc_k(V_k(U_0..U_k), E_k(U_0..U_{k+1}), ..., E_k(U_{l-k-1}..U_l))
double pathc_family(const Complex& X, const KGraph& G, const SubsetFamily& U);

std::vector<Certificate> operator_product_identities(const Complex& X, int trials, std::uint64_t seed);

struct LevelConstants {
    int j = 0;
    double lambda = 0, kappa = 0, r = 0, eps = 0;
};

struct MixingConstants {
    int n = 0, l = 0;
    bool partite = false;
    bool applicable = false;
    std::vector<LevelConstants> levels;  // j = 0..l-1
    double A = 0;          // coefficient of prod m(U_i) / m(X^0)^l
    double E = 0;          // general: error constant; partite: normalized form
    double E_printed = 0;  // partite only: (n+1) * sum
    double leading = 0;    // partite only: 1/((n+1)n...(n-l+1))

    nlohmann::json to_json() const;
};

MixingConstants mixing_constants(int n, int l, double lambda, double kappa, bool partite);

struct MixingOptions {
    bool exhaustive = true;  // falls back to sampling above the budget
    int trials = 64;
    std::uint64_t seed = 0;
    std::uint64_t budget = 10000000;
};

std::vector<Certificate> verify_mixing(const Complex& X, int l, bool partite, const MixingOptions& opt);
// Identities plus inequalities for every admissible l.
std::vector<Certificate> mixing_suite(const Complex& X, const MixingOptions& opt);

}  // namespace hdx
