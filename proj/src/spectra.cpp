#include "hdx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace hdx {

std::vector<double> SpectrumSummary::nonzero() const {
    std::vector<double> out;
    double thr = zero_threshold(kappa);
    for (double x : eigenvalues)
        if (std::fabs(x) > thr) out.push_back(x);
    return out;
}

double zero_threshold(double kappa) { return 1e-8 * std::max(1.0, std::fabs(kappa)); }

SpectrumSummary symmetric_eigensystem(const Mat& A, const Vec& w, Mat& vectors) {
    SpectrumSummary s;
    if (A.rows() == 0) return s;
    Vec sq = w.cwiseSqrt(), isq = sq.cwiseInverse();
    Mat S = sq.asDiagonal() * A * isq.asDiagonal();
    double scale = std::max(S.norm(), 1e-300);
    if ((S - S.transpose()).norm() > 1e-9 * scale)
        throw ComplexError("operator is not self-adjoint for the given weights");
    Mat Ssym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(Ssym);
    if (es.info() != Eigen::Success) throw ComplexError("eigensolver failed");
    const Vec& ev = es.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    s.kappa = s.eigenvalues.back();
    double thr = zero_threshold(s.kappa);
    for (double x : s.eigenvalues) {
        if (std::fabs(x) <= thr) ++s.zero_multiplicity;
        else if (s.lambda == 0.0 && x > 0) s.lambda = x;
    }
    vectors = isq.asDiagonal() * es.eigenvectors();
    double anorm = std::max(std::fabs(s.eigenvalues.front()), std::fabs(s.kappa));
    Mat R = A * vectors - vectors * ev.asDiagonal();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < R.cols(); ++j) {
        double num = std::sqrt((w.array() * R.col(j).array().square()).sum());
        double den = std::sqrt((w.array() * vectors.col(j).array().square()).sum());
        worst = std::max(worst, num / den);
    }
    s.residual = anorm > 0 ? worst / anorm : worst;
    return s;
}

SpectrumSummary symmetric_spectrum(const Mat& A, const Vec& w) {
    Mat V;
    return symmetric_eigensystem(A, w, V);
}

SpectrumSummary laplacian_spectrum(const Complex& X, int k, LaplacianKind kind) {
    return symmetric_spectrum(laplacian(X, k, kind), metric(X, k));
}

double descent_map(double x) {
    if (!(x > 0)) throw std::domain_error("descent map needs x > 0");
    return 2.0 - 1.0 / x;
}

double iterate(double x, int j) {
    for (int i = 0; i < j; ++i) {
        if (!(x > 0)) return -INFINITY;
        x = descent_map(x);
    }
    return x;
}

ProfileRow link_profile(const Complex& X, int k) {
    if (k < -1 || k > X.n - 2) throw ComplexError("link profile needs -1 <= k <= n-2");
    ProfileRow r;
    r.k = k;
    r.lambda = 1e300;
    r.kappa = -1e300;
    for (const auto& tau : X.simplices(k)) {
        Link L = link(X, tau);
        SpectrumSummary s = laplacian_spectrum(L.X, 0, LaplacianKind::up);
        if (s.zero_multiplicity > 1) {
            r.disconnected = true;
            r.disconnected_links.push_back(tau);
        }
        r.lambda = std::min(r.lambda, s.lambda);
        r.kappa = std::max(r.kappa, s.kappa);
    }
    return r;
}

std::vector<DescentRow> descent_profile(const Complex& X) {
    std::vector<DescentRow> rows;
    if (X.n < 1) return rows;
    ProfileRow top = link_profile(X, X.n - 2);
    for (int k = X.n - 2; k >= -1; --k) {
        DescentRow d{k, k == X.n - 2 ? top : link_profile(X, k), 0, 0};
        int j = X.n - k - 2;
        bool ok = top.lambda > 0;
        double lo = top.lambda, hi = top.kappa;
        for (int i = 0; i < j && ok; ++i) {
            if (lo <= 0) { ok = false; break; }
            lo = descent_map(lo);
            hi = descent_map(hi);
        }
        d.predicted_lo = ok ? lo : -INFINITY;
        d.predicted_hi = ok ? hi : INFINITY;
        rows.push_back(d);
    }
    return rows;
}

static nlohmann::json row_json(const DescentRow& d) {
    return {{"k", d.k}, {"observed", {d.observed.lambda, d.observed.kappa}},
            {"predicted", {d.predicted_lo, d.predicted_hi}}};
}

std::vector<Certificate> verify_descent(const Complex& X) {
    std::vector<Certificate> out;
    const int n = X.n;
    if (n < 2) {
        out.push_back(not_applicable("descent", "descent.trickle_down", "needs n > 1"));
        return out;
    }
    auto rows = descent_profile(X);
    const ProfileRow& top = rows.front().observed;
    bool connected = is_connected(X);
    bool links_ok = connected;
    for (const auto& r : rows) links_ok = links_ok && !r.observed.disconnected;

    // universal bound from the largest possible link eigenvalue
    for (const auto& r : rows) {
        double bound = static_cast<double>(n - r.k) / (n - r.k - 1);
        out.push_back(make_cert("descent.kappa_bound.k" + std::to_string(r.k), "descent.universal_upper",
                                "le", r.observed.kappa, bound, 1e-8, row_json(r)));
    }
    if (!links_ok || !(top.lambda > static_cast<double>(n - 1) / n)) {
        out.push_back(not_applicable("descent.intervals", "descent.trickle_down",
                                     links_ok ? "top link gap not above (n-1)/n" : "disconnected link"));
        return out;
    }
    for (const auto& r : rows) {
        if (r.k == n - 2) continue;
        out.push_back(make_cert("descent.lower.k" + std::to_string(r.k), "descent.trickle_down", "ge",
                                r.observed.lambda, r.predicted_lo, 1e-8, row_json(r)));
        out.push_back(make_cert("descent.upper.k" + std::to_string(r.k), "descent.trickle_down", "le",
                                r.observed.kappa, r.predicted_hi, 1e-8, row_json(r)));
    }
    return out;
}

namespace {

int nullity(const Mat& A, double rel = 1e-8) {
    if (A.rows() == 0 || A.cols() == 0) return static_cast<int>(A.cols());
    Eigen::JacobiSVD<Mat> svd(A);
    const Vec& s = svd.singularValues();
    double thr = rel * std::max(1.0, s.size() ? s[0] : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > thr) ++rank;
    return static_cast<int>(A.cols()) - rank;
}

int rank_of(const Mat& A) { return static_cast<int>(A.cols()) - nullity(A); }

// Largest excursion of a nonzero spectrum outside [lo, hi].
Certificate inclusion(const std::string& name, const std::string& anchor,
                      const std::vector<double>& spec, double lo, double hi) {
    double excess = 0.0;
    double smin = spec.empty() ? NAN : spec.front(), smax = spec.empty() ? NAN : spec.back();
    for (double x : spec) excess = std::max({excess, lo - x, x - hi});
    nlohmann::json w{{"interval", {lo, hi}}, {"count", spec.size()}};
    if (!spec.empty()) w["observed"] = {smin, smax};
    return make_cert(name, anchor, "le", excess, 0.0, 1e-8, w);
}

// Spectral radius of a self-adjoint operator for the weight w.
double weighted_norm(const Mat& A, const Vec& w) {
    SpectrumSummary s = symmetric_spectrum(A, w);
    if (s.eigenvalues.empty()) return 0.0;
    return std::max(std::fabs(s.eigenvalues.front()), std::fabs(s.eigenvalues.back()));
}

// W-orthonormal basis of the kernel, as columns.
Mat kernel_basis(const Mat& A, const Vec& w) {
    Mat V;
    SpectrumSummary s = symmetric_eigensystem(A, w, V);
    double thr = zero_threshold(s.kappa);
    std::vector<Eigen::Index> cols;
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        if (std::fabs(s.eigenvalues[i]) <= thr) cols.push_back(static_cast<Eigen::Index>(i));
    Mat K(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) K.col(static_cast<Eigen::Index>(i)) = V.col(cols[i]);
    return K;
}

}  // namespace

std::vector<Certificate> verify_global_gaps(const Complex& X) {
    std::vector<Certificate> out;
    const int n = X.n;
    if (n < 1) {
        out.push_back(not_applicable("gaps", "gaps.local_to_global", "needs n >= 1"));
        return out;
    }
    std::vector<SpectrumSummary> up(n + 1), down(n + 1);
    std::vector<Mat> Lup(n + 1), Ldown(n + 1);
    for (int k = 0; k <= n; ++k) {
        Ldown[k] = laplacian(X, k, LaplacianKind::down);
        down[k] = symmetric_spectrum(Ldown[k], metric(X, k));
        if (k < n) {
            Lup[k] = laplacian(X, k, LaplacianKind::up);
            up[k] = symmetric_spectrum(Lup[k], metric(X, k));
        }
    }
    // norm bounds hold without spectral hypotheses
    for (int k = 0; k <= n - 1; ++k) {
        double b = static_cast<double>(n + 1) / (n - k);
        out.push_back(inclusion("gaps.norm_bound.up.k" + std::to_string(k), "gaps.norm_bound",
                                up[k].eigenvalues, 0.0, b));
        out.push_back(inclusion("gaps.norm_bound.down.k" + std::to_string(k + 1), "gaps.norm_bound",
                                down[k + 1].eigenvalues, 0.0, b));
    }

    ProfileRow top = link_profile(X, n - 2);
    bool connected = is_connected(X);
    bool links_ok = connected;
    std::vector<ProfileRow> rows(n + 1);
    for (int k = -1; k <= n - 2; ++k) {
        rows[k + 1] = k == n - 2 ? top : link_profile(X, k);
        links_ok = links_ok && !rows[k + 1].disconnected;
    }
    const double lam = top.lambda, kap = top.kappa;
    if (!links_ok || !(lam > static_cast<double>(n - 1) / n)) {
        out.push_back(not_applicable("gaps.theorem", "gaps.local_to_global",
                                     links_ok ? "1-dimensional link gap not above (n-1)/n" : "disconnected link"));
        return out;
    }

    for (int k = 0; k <= n - 1; ++k) {
        const std::string ks = ".k" + std::to_string(k);
        const Vec w = metric(X, k);
        int h = nullity(Lup[k] + Ldown[k]);
        out.push_back(make_cert("gaps.cohomology" + ks, "gaps.vanishing", "eq", h, 0, 0,
                                {{"dim_harmonic", h}}));
        Mat Kup = kernel_basis(Lup[k], w), Kdn = kernel_basis(Ldown[k], w);
        int total = static_cast<int>(Kup.cols() + Kdn.cols());
        out.push_back(make_cert("gaps.decomposition_dim" + ks, "gaps.decomposition", "eq", total,
                                X.count(k), 0, {{"ker_up", Kup.cols()}, {"ker_down", Kdn.cols()}}));
        double orth = 0.0;
        if (Kup.cols() && Kdn.cols())
            orth = (Kup.transpose() * w.asDiagonal() * Kdn).cwiseAbs().maxCoeff();
        out.push_back(make_cert("gaps.decomposition_orth" + ks, "gaps.decomposition", "le", orth, 0, 1e-9));

        const double lk = iterate(lam, n - 1 - k), kk = iterate(kap, n - 1 - k);
        const double a = (k + 1) * lk - k, b = (k + 1) * kk - k;
        out.push_back(inclusion("gaps.up" + ks, "gaps.theorem", up[k].nonzero(), a, b));
        out.push_back(inclusion("gaps.down.k" + std::to_string(k + 1), "gaps.theorem", down[k + 1].nonzero(), a, b));
        const double c = (k + 1) - k / lk, e = (k + 1) - k / kk;
        out.push_back(inclusion("gaps.down_dual" + ks, "gaps.dual_estimate", down[k].nonzero(), c, e));
        if (k >= 1)
            out.push_back(inclusion("gaps.up_dual.k" + std::to_string(k - 1), "gaps.dual_estimate",
                                    up[k - 1].nonzero(), c, e));
        // operator norm estimate around the midpoint
        const double r = 0.5 * (lk + kk);
        Mat T = Lup[k] + r * Ldown[k] - (k + 1) * (r - static_cast<double>(k) / (k + 1)) * Mat::Identity(X.count(k), X.count(k));
        out.push_back(make_cert("gaps.norm_estimate" + ks, "gaps.operator_norm", "le", weighted_norm(T, w),
                                (k + 1) * (kk - lk) / 2, 1e-8, {{"lambda_k", lk}, {"kappa_k", kk}}));

        // the same statements from the measured link spectra one level down
        const ProfileRow& lr = rows[k];
        if (lr.lambda > static_cast<double>(k) / (k + 1)) {
            out.push_back(inclusion("gaps.measured.up" + ks, "gaps.local_to_global", up[k].nonzero(),
                                    (k + 1) * lr.lambda - k, (k + 1) * lr.kappa - k));
            out.push_back(inclusion("gaps.measured.down_dual" + ks, "gaps.local_to_global", down[k].nonzero(),
                                    (k + 1) - k / lr.lambda, (k + 1) - k / lr.kappa));
        }
    }
    return out;
}

std::vector<Certificate> hodge_checks(const Complex& X) {
    std::vector<Certificate> out;
    const int n = X.n;
    for (int k = 1; k <= n; ++k) {
        auto a = laplacian_spectrum(X, k - 1, LaplacianKind::up).nonzero();
        auto b = laplacian_spectrum(X, k, LaplacianKind::down).nonzero();
        double diff = 0.0;
        if (a.size() != b.size()) diff = INFINITY;
        else
            for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::fabs(a[i] - b[i]));
        out.push_back(make_cert("hodge.spectra_match.k" + std::to_string(k), "hodge.nonzero_spectrum", "le", diff,
                                0.0, 1e-8, {{"sizes", {a.size(), b.size()}}}));
    }
    for (int k = 0; k <= n; ++k) {
        // ker d = ker up, and harmonic dimension = Betti number (reduced at 0)
        int kd = k <= n - 1 ? nullity(d_matrix(X, k)) : X.count(k);
        Mat up = k <= n - 1 ? laplacian(X, k, LaplacianKind::up) : Mat::Zero(X.count(k), X.count(k));
        int ku = k <= n - 1 ? nullity(up) : X.count(k);
        out.push_back(make_cert("hodge.ker_d.k" + std::to_string(k), "hodge.kernels", "eq", kd, ku, 0));
        int im = rank_of(d_matrix(X, k - 1));
        int betti = kd - im;
        int harm = nullity(laplacian(X, k, LaplacianKind::full));
        out.push_back(make_cert("hodge.harmonic.k" + std::to_string(k), "hodge.harmonic", "eq", harm, betti, 0));
    }
    if (n >= 1) {
        auto s = laplacian_spectrum(X, 0, LaplacianKind::up);
        out.push_back(make_cert("hodge.up0_norm", "laplacian.degree0_norm", "le", s.kappa, 2.0, 1e-9));
        out.push_back(make_cert("hodge.up0_max_at_least_one", "laplacian.degree0_norm", "ge", s.kappa, 1.0, 1e-9));
    }
    return out;
}

namespace {

std::vector<int> present_sides(const Complex& X) {
    std::set<int> s(X.side.begin(), X.side.end());
    return {s.begin(), s.end()};
}

// W-orthonormal basis of the complement of span{chi_S}, as columns.
Mat nontrivial_basis(const Complex& X) {
    const int N = X.num_vertices();
    auto sides = present_sides(X);
    Vec w = metric(X, 0), sq = w.cwiseSqrt();
    Mat B(N, static_cast<Eigen::Index>(sides.size()));
    for (size_t j = 0; j < sides.size(); ++j)
        for (int v = 0; v < N; ++v) B(v, static_cast<Eigen::Index>(j)) = X.side[v] == sides[j] ? sq[v] : 0.0;
    Eigen::HouseholderQR<Mat> qr(B);
    Mat Q = qr.householderQ();
    Mat C = Q.rightCols(N - B.cols());
    return sq.cwiseInverse().asDiagonal() * C;
}

std::vector<double> nontrivial_spectrum(const Complex& X) {
    Mat C = nontrivial_basis(X);
    if (C.cols() == 0) return {};
    Vec w = metric(X, 0);
    Mat A = laplacian(X, 0, LaplacianKind::up);
    Mat R = C.transpose() * w.asDiagonal() * A * C;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (R + R.transpose()));
    const Vec& e = es.eigenvalues();
    return {e.data(), e.data() + e.size()};
}

}  // namespace

bool partite_nontrivial(const Complex& X, double& lam, double& kap) {
    auto s = nontrivial_spectrum(X);
    if (s.empty()) return false;
    lam = s.front();
    kap = s.back();
    return true;
}

std::vector<Certificate> partite_spectral_suite(const Complex& X) {
    std::vector<Certificate> out;
    if (!X.partite()) {
        out.push_back(not_applicable("partite", "partite.spectrum", "complex has no partition"));
        return out;
    }
    const int n = X.n, N = X.num_vertices();
    if (n < 1) {
        out.push_back(not_applicable("partite", "partite.spectrum", "needs n >= 1"));
        return out;
    }
    const Vec w = metric(X, 0);
    const Mat A = laplacian(X, 0, LaplacianKind::up);
    const double triv = static_cast<double>(n + 1) / n;

    // (a) phi_i eigenfunctions
    Mat Phi(N, n + 1);
    double res = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int v = 0; v < N; ++v) Phi(v, i) = X.side[v] == i ? n : -1.0;
        res = std::max(res, (A * Phi.col(i) - triv * Phi.col(i)).cwiseAbs().maxCoeff());
    }
    out.push_back(make_cert("partite.trivial_eigenfunctions", "partite.side_functions", "le", res, 0.0, 1e-9 * n));

    // (b) span has dimension n; eigenvalue multiplicity = n + nontrivial copies
    auto spec = symmetric_spectrum(A, w);
    int mult = 0;
    for (double x : spec.eigenvalues)
        if (std::fabs(x - triv) <= 1e-8) ++mult;
    auto nt = nontrivial_spectrum(X);
    int extra = 0;
    for (double x : nt)
        if (std::fabs(x - triv) <= 1e-8) ++extra;
    out.push_back(make_cert("partite.side_span_rank", "partite.side_functions", "eq", rank_of(Phi), n, 0));
    out.push_back(make_cert("partite.trivial_eigenspace_dim", "partite.side_functions", "eq", mult - extra, n, 0,
                            {{"multiplicity", mult}, {"nontrivial_copies", extra}}));
    // the nontrivial space is invariant
    Mat C = nontrivial_basis(X);
    if (C.cols()) {
        Mat Pnt = C * C.transpose() * w.asDiagonal();
        double leak = ((Mat::Identity(N, N) - Pnt) * A * Pnt).cwiseAbs().maxCoeff();
        out.push_back(make_cert("partite.nontrivial_invariant", "partite.nontrivial_space", "le", leak, 0.0, 1e-9));
    }

    // (c) projection formula
    {
        Mat S = Mat::Zero(N, N);
        for (int j = 0; j <= n; ++j) S += partite_operators(X, 0, j).down;
        Mat P = Mat::Identity(N, N) - (n + 1) * S;
        Mat Pnt = C.cols() ? Mat(C * C.transpose() * w.asDiagonal()) : Mat::Zero(N, N);
        out.push_back(make_cert("partite.projection", "partite.nontrivial_projection", "le",
                                (P - Pnt).cwiseAbs().maxCoeff(), 0.0, 1e-9));
    }

    // (d) nontrivial extremes
    double lam = 0, kap = 0;
    if (X.count(n) <= 1 || !partite_nontrivial(X, lam, kap)) {
        out.push_back(not_applicable("partite.kappa_bounds", "partite.spectral_bound", "no nontrivial spectrum"));
    } else {
        nlohmann::json wj{{"lambda", lam}, {"kappa", kap}};
        out.push_back(make_cert("partite.kappa_lower", "partite.spectral_bound", "ge", kap, 1 + (1 - lam) / n, 1e-9, wj));
        out.push_back(make_cert("partite.kappa_upper", "partite.spectral_bound", "le", kap, 1 + n * (1 - lam), 1e-9, wj));
    }

    // (e) operator norm bound, per degree
    for (int k = 0; k <= n - 1; ++k) {
        double lk = 1e300;
        bool ok = true;
        for (const auto& tau : X.simplices(k - 1)) {
            Link L = link(X, tau);
            double a, b;
            if (!is_connected(L.X) || !partite_nontrivial(L.X, a, b)) { ok = false; break; }
            lk = std::min(lk, a);
        }
        const std::string name = "partite.norm_bound.k" + std::to_string(k);
        if (!ok || !(lk > static_cast<double>(k) / (k + 1))) {
            out.push_back(not_applicable(name, "partite.operator_norm", "link hypothesis fails"));
            continue;
        }
        const int M = X.count(k);
        const double kh = 1 + (n - k) * (1 - lk);
        const double r = 0.5 * (lk + kh);
        const double c = static_cast<double>(n + 1 - k) / (n - k);
        const double cp = static_cast<double>((n + 1 - k) * (n + 1 - k)) / (n - k);
        Mat S = Mat::Zero(M, M);
        for (int j = 0; j <= n; ++j) S += partite_operators(X, k, j).down;
        Mat T = laplacian(X, k, LaplacianKind::up) + c * laplacian(X, k, LaplacianKind::down) +
                (k - (k + 1) * r) * Mat::Identity(M, M) - (cp - (n + 1 - k) * r) * S;
        out.push_back(make_cert(name, "partite.operator_norm", "le", weighted_norm(T, metric(X, k)),
                                (k + 1) * (n + 1 - k) * (1 - lk) / 2, 1e-8, {{"lambda", lk}, {"kappa_hat", kh}}));
    }
    return out;
}

}  // namespace hdx
