#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdx/complex.hpp"

namespace hdx {

// A k-cochain stores one value per canonical (sorted) k-simplex; the value on
// any other ordering is the permutation sign times the stored value.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

Vec metric(const Complex& X, int k);
double inner(const Complex& X, int k, const Vec& phi, const Vec& psi);
double norm2(const Complex& X, int k, const Vec& phi);
double evaluate(const Complex& X, int k, const Vec& phi, const OrderedSimplex& s);

// d_k : C^k -> C^{k+1}, -1 <= k <= n-1.
Mat d_matrix(const Complex& X, int k);
// delta_k : C^k -> C^{k-1}, 0 <= k <= n, built as the weighted adjoint of d_{k-1}.
Mat delta_matrix(const Complex& X, int k);
Vec d(const Complex& X, int k, const Vec& phi);
// explicit formula, independent of delta_matrix
Vec delta(const Complex& X, int k, const Vec& phi);

enum class LaplacianKind { up, down, full };
Mat laplacian(const Complex& X, int k, LaplacianKind kind);

struct LocalForm {
    Link link;
    int degree = 0;
    Vec values;
};

// phi_tau(sigma) = phi(tau sigma)
LocalForm localize(const Complex& X, int k, const Vec& phi, const OrderedSimplex& tau);
LocalForm localize(const Link& L, const Complex& X, int k, const Vec& phi, const OrderedSimplex& tau);
// phi^tau(sigma) = phi(sigma) on k-simplices of the link
LocalForm restrict_form(const Complex& X, int k, const Vec& phi, const Simplex& tau);
LocalForm restrict_form(const Link& L, const Complex& X, int k, const Vec& phi);

struct PartiteOperators {
    Mat d;      // d_(k,j): C^k -> C^{k+1}, empty for k = n
    Mat delta;  // delta_(k,j): C^k -> C^{k-1}
    Mat down;   // d_(k-1,j) delta_(k,j) on C^k
};
// Sides absent from X (possible for links) give zero operators.
PartiteOperators partite_operators(const Complex& X, int k, int j);

// Localization, restriction and Delta_0^- identities on random cochains.
std::vector<Certificate> identity_suite(const Complex& X, int trials, std::uint64_t seed);
// d d = 0 and adjointness of d and delta.
std::vector<Certificate> operator_algebra(const Complex& X, int trials, std::uint64_t seed);

Vec random_cochain(const Complex& X, int k, std::mt19937_64& rng);

// rows cols header, then row-major values
std::string export_matrix(const Mat& A);

}  // namespace hdx
