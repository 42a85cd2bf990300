#pragma once

#include <vector>

#include "hdx/cochains.hpp"

namespace hdx {

struct SpectrumSummary {
    std::vector<double> eigenvalues;  // ascending
    double lambda = 0.0;              // smallest nonzero, 0 if none
    double kappa = 0.0;               // largest
    int zero_multiplicity = 0;
    double residual = 0.0;            // max ||A v - lambda v||_W / ||A||
    std::vector<double> nonzero() const;
};

double zero_threshold(double kappa);

// A self-adjoint for the inner product with diagonal weights w.
SpectrumSummary symmetric_spectrum(const Mat& A, const Vec& w);
// Eigenvectors as columns (in the original basis), same order as eigenvalues.
SpectrumSummary symmetric_eigensystem(const Mat& A, const Vec& w, Mat& vectors);
SpectrumSummary laplacian_spectrum(const Complex& X, int k, LaplacianKind kind);

double descent_map(double x);
// f^j(x); -inf once an iterate leaves (0, inf)
double iterate(double x, int j);

struct ProfileRow {
    int k = 0;
    double lambda = 0.0;  // min over links
    double kappa = 0.0;   // max over links
    bool disconnected = false;
    std::vector<Simplex> disconnected_links;
};
ProfileRow link_profile(const Complex& X, int k);

struct DescentRow {
    int k;
    ProfileRow observed;
    double predicted_lo, predicted_hi;
};
std::vector<DescentRow> descent_profile(const Complex& X);

std::vector<Certificate> verify_descent(const Complex& X);
std::vector<Certificate> verify_global_gaps(const Complex& X);
std::vector<Certificate> hodge_checks(const Complex& X);
std::vector<Certificate> partite_spectral_suite(const Complex& X);

// Nontrivial spectrum of Delta_0^+ on a partite complex: 0 and (m+1)/m removed
// with their trivial multiplicities, m = dim X. Returns false if X has no
// nontrivial eigenvalue.
bool partite_nontrivial(const Complex& X, double& lam, double& kap);

}  // namespace hdx
