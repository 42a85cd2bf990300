#include "hdx/cochains.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>

namespace hdx {

Vec metric(const Complex& X, int k) {
    const auto& w = X.weights(k);
    return Eigen::Map<const Vec>(w.data(), static_cast<Eigen::Index>(w.size()));
}

double inner(const Complex& X, int k, const Vec& phi, const Vec& psi) {
    if (phi.size() != X.count(k) || psi.size() != X.count(k)) throw ComplexError("degree mismatch");
    return (metric(X, k).array() * phi.array() * psi.array()).sum();
}

double norm2(const Complex& X, int k, const Vec& phi) { return inner(X, k, phi, phi); }

double evaluate(const Complex& X, int k, const Vec& phi, const OrderedSimplex& s) {
    if (static_cast<int>(s.size()) != k + 1) throw ComplexError("degree mismatch");
    Simplex sorted;
    int sign = sort_sign(s, sorted);
    if (sign == 0) return 0.0;
    int i = X.find(sorted);
    return i < 0 ? 0.0 : sign * phi[i];
}

Mat d_matrix(const Complex& X, int k) {
    if (k < -1 || k > X.n - 1) throw ComplexError("d: degree out of range");
    Mat D = Mat::Zero(X.count(k + 1), X.count(k));
    for (int r = 0; r < X.count(k + 1); ++r) {
        const Simplex& s = X.simplices(k + 1)[r];
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            D(r, X.find(f)) = (i % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return D;
}

Mat delta_matrix(const Complex& X, int k) {
    if (k < 0 || k > X.n) throw ComplexError("delta: degree out of range");
    Mat D = d_matrix(X, k - 1);
    Vec wlo = metric(X, k - 1), whi = metric(X, k);
    return wlo.cwiseInverse().asDiagonal() * D.transpose() * whi.asDiagonal();
}

Vec d(const Complex& X, int k, const Vec& phi) { return d_matrix(X, k) * phi; }

Vec delta(const Complex& X, int k, const Vec& phi) {
    if (k < 0 || k > X.n) throw ComplexError("delta: degree out of range");
    Vec out = Vec::Zero(X.count(k - 1));
    for (int t = 0; t < X.count(k - 1); ++t) {
        const Simplex& tau = X.simplices(k - 1)[t];
        const double mt = X.weight(k - 1, t);
        double acc = 0.0;
        for (int v = 0; v < X.num_vertices(); ++v) {
            if (std::binary_search(tau.begin(), tau.end(), v)) continue;
            OrderedSimplex vt{v};
            vt.insert(vt.end(), tau.begin(), tau.end());
            Simplex sorted;
            sort_sign(vt, sorted);
            int si = X.find(sorted);
            if (si < 0) continue;
            acc += X.weight(k, si) / mt * evaluate(X, k, phi, vt);
        }
        out[t] = acc;
    }
    return out;
}

Mat laplacian(const Complex& X, int k, LaplacianKind kind) {
    if (k < 0 || k > X.n) throw ComplexError("laplacian: degree out of range");
    const int N = X.count(k);
    Mat up = Mat::Zero(N, N), down = Mat::Zero(N, N);
    if (kind != LaplacianKind::down) {
        if (k <= X.n - 1) up = delta_matrix(X, k + 1) * d_matrix(X, k);
        else if (kind == LaplacianKind::up) throw ComplexError("upper laplacian needs k <= n-1");
    }
    if (kind != LaplacianKind::up) down = d_matrix(X, k - 1) * delta_matrix(X, k);
    if (kind == LaplacianKind::up) return up;
    if (kind == LaplacianKind::down) return down;
    return up + down;
}

LocalForm localize(const Link& L, const Complex& X, int k, const Vec& phi, const OrderedSimplex& tau) {
    const int j = static_cast<int>(tau.size()) - 1;
    if (j > k) throw ComplexError("localize: simplex dimension exceeds degree");
    LocalForm out;
    out.link = L;
    out.degree = k - j - 1;
    out.values = Vec::Zero(L.X.count(out.degree));
    for (int i = 0; i < L.X.count(out.degree); ++i) {
        OrderedSimplex s = tau;
        for (int v : L.X.simplices(out.degree)[i]) s.push_back(L.back[v]);
        out.values[i] = evaluate(X, k, phi, s);
    }
    return out;
}

LocalForm localize(const Complex& X, int k, const Vec& phi, const OrderedSimplex& tau) {
    Simplex sorted;
    if (sort_sign(tau, sorted) == 0 || !X.contains(sorted)) throw ComplexError("localize: simplex not in complex");
    if (static_cast<int>(tau.size()) - 1 == X.n) {
        // degree -1 form on the empty complex over tau
        LocalForm out;
        out.degree = -1;
        out.values = Vec::Constant(1, evaluate(X, k, phi, tau));
        out.link.tau = sorted;
        return out;
    }
    return localize(link(X, sorted), X, k, phi, tau);
}

LocalForm restrict_form(const Link& L, const Complex& X, int k, const Vec& phi) {
    if (k > L.X.n) throw ComplexError("restrict: degree exceeds link dimension");
    LocalForm out;
    out.link = L;
    out.degree = k;
    out.values = Vec::Zero(L.X.count(k));
    for (int i = 0; i < L.X.count(k); ++i) {
        Simplex s;
        for (int v : L.X.simplices(k)[i]) s.push_back(L.back[v]);
        out.values[i] = phi[X.find(s)];
    }
    return out;
}

LocalForm restrict_form(const Complex& X, int k, const Vec& phi, const Simplex& tau) {
    int l = static_cast<int>(tau.size()) - 1;
    if (k + l + 1 > X.n) throw ComplexError("restrict: dimension violation");
    return restrict_form(link(X, tau), X, k, phi);
}

PartiteOperators partite_operators(const Complex& X, int k, int j) {
    if (!X.partite()) throw ComplexError("complex is not partite");
    if (k < 0 || k > X.n) throw ComplexError("partite operator degree out of range");
    auto in_side = [&](int v) { return X.side[v] == j; };
    auto dpart = [&](int q) {
        Mat D = Mat::Zero(X.count(q + 1), X.count(q));
        for (int r = 0; r < X.count(q + 1); ++r) {
            const Simplex& s = X.simplices(q + 1)[r];
            for (size_t i = 0; i < s.size(); ++i) {
                if (!in_side(s[i])) continue;
                Simplex f = s;
                f.erase(f.begin() + i);
                D(r, X.find(f)) = (i % 2 == 0) ? 1.0 : -1.0;
            }
        }
        return D;
    };
    PartiteOperators ops;
    if (k <= X.n - 1) ops.d = dpart(k);
    // delta_(k,j) phi(tau) = sum over v in S_j of m(v tau)/m(tau) phi(v tau)
    ops.delta = Mat::Zero(X.count(k - 1), X.count(k));
    for (int c = 0; c < X.count(k); ++c) {
        const Simplex& s = X.simplices(k)[c];
        for (size_t i = 0; i < s.size(); ++i) {
            if (!in_side(s[i])) continue;
            Simplex f = s;
            f.erase(f.begin() + i);
            int fi = X.find(f);
            ops.delta(fi, c) += ((i % 2 == 0) ? 1.0 : -1.0) * X.weight(k, c) / X.weight(k - 1, fi);
        }
    }
    ops.down = dpart(k - 1) * ops.delta;
    return ops;
}

Vec random_cochain(const Complex& X, int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec v(X.count(k));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
    return v;
}

namespace {

struct LinkCache {
    Link L;
    Mat d0, delta0;                 // on the link, degree 0
    std::vector<Mat> side_down;     // Delta^-_{(0,j)} of the link, per side j
};

using CacheMap = std::map<Simplex, std::shared_ptr<LinkCache>>;

CacheMap build_cache(const Complex& X, int maxdim) {
    CacheMap cache;
    for (int k = -1; k <= maxdim; ++k)
        for (const auto& tau : X.simplices(k)) {
            auto c = std::make_shared<LinkCache>();
            c->L = link(X, tau);
            if (c->L.X.n >= 1) c->d0 = d_matrix(c->L.X, 0);
            c->delta0 = delta_matrix(c->L.X, 0);
            if (X.partite())
                for (int j = 0; j <= X.n; ++j) c->side_down.push_back(partite_operators(c->L.X, 0, j).down);
            cache[tau] = c;
        }
    return cache;
}

std::vector<OrderedSimplex> orderings(const Simplex& s) {
    std::vector<OrderedSimplex> out;
    OrderedSimplex o = s;
    do out.push_back(o);
    while (std::next_permutation(o.begin(), o.end()));
    return out;
}

}  // namespace

std::vector<Certificate> identity_suite(const Complex& X, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = X.n;
    CacheMap cache = build_cache(X, n - 1);
    const double rel = 1e-9;

    WorstCase ln1("localization.norm", "localization.inner_product", "eq", rel);
    WorstCase ln1b("localization.codifferential", "localization.codifferential", "eq", rel);
    WorstCase ln2("localization.differential", "localization.differential", "eq", rel);
    WorstCase ln3("localization.differential_sum", "localization.differential_sum", "eq", rel);
    WorstCase rn1("restriction.norm", "restriction.inner_product", "eq", rel);
    WorstCase rn2("restriction.differential", "restriction.differential", "eq", rel);
    WorstCase d0a("delta0.quadratic_form", "lower_laplacian.degree0", "eq", rel);
    WorstCase d0b("delta0.projection_norm", "lower_laplacian.degree0", "eq", rel);
    WorstCase part("partite.localization", "partite.lower_localization", "eq", rel);

    std::vector<Mat> D(n + 2), Dl(n + 2);
    for (int k = 0; k <= n - 1; ++k) D[k] = d_matrix(X, k);
    for (int k = 0; k <= n; ++k) Dl[k] = delta_matrix(X, k);
    std::vector<std::vector<Mat>> side_down;
    if (X.partite())
        for (int k = 0; k <= n; ++k) {
            side_down.emplace_back();
            for (int j = 0; j <= n; ++j) side_down[k].push_back(partite_operators(X, k, j).down);
        }
    const Mat down0 = laplacian(X, 0, LaplacianKind::down);

    for (int t = 0; t < trials; ++t) {
        for (int k = 0; k <= n; ++k) {
            Vec phi = random_cochain(X, k, rng), psi = random_cochain(X, k, rng);
            const double kf = static_cast<double>(factorial(k));
            double s1 = 0, s1a = 0, s1b = 0, s1ba = 0, s2 = 0, s2a = 0, s3 = 0, s3a = 0;
            std::vector<double> sp(n + 1, 0.0), spa(n + 1, 0.0);
            for (const auto& tau : X.simplices(k - 1)) {
                const LinkCache& c = *cache.at(tau);
                const Complex& LX = c.L.X;
                for (const auto& ot : orderings(tau)) {
                    Vec a = localize(c.L, X, k, phi, ot).values;
                    Vec b = localize(c.L, X, k, psi, ot).values;
                    double ip = inner(LX, 0, a, b);
                    s1 += ip;
                    s1a += std::fabs(ip);
                    Vec da = c.delta0 * a, db = c.delta0 * b;
                    double ipd = inner(LX, -1, da, db);
                    s1b += ipd;
                    s1ba += std::fabs(ipd);
                    if (k <= n - 1) {
                        double ipdd = inner(LX, 1, c.d0 * a, c.d0 * b);
                        s2 += ipdd - static_cast<double>(k) / (k + 1) * ip;
                        s2a += std::fabs(ipdd) + std::fabs(ip);
                        s3 += ipdd;
                        s3a += std::fabs(ipdd);
                    }
                    for (size_t j = 0; j < c.side_down.size(); ++j) {
                        double q = inner(LX, 0, c.side_down[j] * a, a);
                        sp[j] += q;
                        spa[j] += std::fabs(q);
                    }
                }
            }
            nlohmann::json w{{"k", k}, {"trial", t}};
            double lhs1 = static_cast<double>(factorial(k + 1)) * inner(X, k, phi, psi);
            ln1.add(lhs1, s1, s1a + std::fabs(lhs1), w);
            double lhs1b = kf * inner(X, k - 1, Dl[k] * phi, Dl[k] * psi);
            ln1b.add(lhs1b, s1b, s1ba + std::fabs(lhs1b), w);
            if (k <= n - 1) {
                double dd = inner(X, k + 1, D[k] * phi, D[k] * psi);
                double ip = inner(X, k, phi, psi);
                ln2.add(kf * dd, s2, s2a + kf * std::fabs(dd), w);
                ln3.add(kf * dd + kf * k * ip, s3, s3a + kf * (std::fabs(dd) + k * std::fabs(ip)), w);
                for (int l = 0; l <= n - k - 1; ++l) {
                    double r = 0, ra = 0, r2 = 0, r2a = 0;
                    const double lf = static_cast<double>(factorial(l + 1));
                    for (const auto& tau : X.simplices(l)) {
                        const LinkCache& c = *cache.at(tau);
                        Vec a = restrict_form(c.L, X, k, phi).values;
                        Vec b = restrict_form(c.L, X, k, psi).values;
                        double q = lf * inner(c.L.X, k, a, b);
                        r += q;
                        ra += std::fabs(q);
                        if (k == 0 && n > 1 && l <= n - 2) {
                            double q2 = lf * inner(c.L.X, 1, c.d0 * a, c.d0 * b);
                            r2 += q2;
                            r2a += std::fabs(q2);
                        }
                    }
                    nlohmann::json wl{{"k", k}, {"l", l}, {"trial", t}};
                    rn1.add(ip, r, ra + std::fabs(ip), wl);
                    if (k == 0 && n > 1 && l <= n - 2) rn2.add(dd, r2, r2a + std::fabs(dd), wl);
                }
            }
            if (X.partite())
                for (int j = 0; j <= n; ++j) {
                    double lhs = kf * inner(X, k, side_down[k][j] * phi, phi);
                    part.add(lhs, sp[j], spa[j] + std::fabs(lhs), {{"k", k}, {"side", j}, {"trial", t}});
                }
            if (k == 0) {
                double q = inner(X, 0, down0 * phi, phi);
                Vec dm = Dl[0] * phi;
                double nd = inner(X, -1, dm, dm);
                Vec pr = down0 * phi;
                double np = inner(X, 0, pr, pr);
                d0a.add(q, nd, std::fabs(q) + nd, w);
                d0b.add(nd, np, nd + np, w);
            }
        }
    }
    std::vector<Certificate> out{ln1.finish(), ln1b.finish(), ln2.finish(), ln3.finish(),
                                 rn1.finish()};
    if (n > 1) out.push_back(rn2.finish());
    out.push_back(d0a.finish());
    out.push_back(d0b.finish());
    if (X.partite()) out.push_back(part.finish());
    return out;
}

std::vector<Certificate> operator_algebra(const Complex& X, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = X.n;
    double dd_worst = 0.0;
    nlohmann::json dd_where = nlohmann::json::object();
    WorstCase adj("adjoint.d_delta", "codifferential.adjoint", "eq", 1e-10);
    WorstCase expl("adjoint.explicit_matrix", "codifferential.explicit", "eq", 1e-12);
    std::vector<Mat> D(n + 2);
    for (int k = -1; k <= n - 1; ++k) D[k + 1] = d_matrix(X, k);
    std::vector<Mat> Dl(n + 1);
    for (int k = 0; k <= n; ++k) Dl[k] = delta_matrix(X, k);
    for (int t = 0; t < trials; ++t) {
        for (int k = -1; k <= n - 2; ++k) {
            Vec phi = random_cochain(X, k, rng);
            double e = (D[k + 2] * (D[k + 1] * phi)).cwiseAbs().maxCoeff();
            if (e > dd_worst) { dd_worst = e; dd_where = {{"k", k}, {"trial", t}}; }
        }
        for (int k = -1; k <= n - 1; ++k) {
            Vec psi = random_cochain(X, k, rng);
            Vec phi = random_cochain(X, k + 1, rng);
            Vec dphi = delta(X, k + 1, phi);
            double lhs = inner(X, k + 1, D[k + 1] * psi, phi);
            double rhs = inner(X, k, psi, dphi);
            double scale = (metric(X, k + 1).array() * (D[k + 1] * psi).array().abs() * phi.array().abs()).sum();
            adj.add(lhs, rhs, std::max(scale, std::fabs(lhs)), {{"k", k}, {"trial", t}});
            Vec dm = Dl[k + 1] * phi;
            double diff = (dm - dphi).cwiseAbs().maxCoeff();
            expl.add(diff, 0.0, std::max(1.0, dphi.cwiseAbs().maxCoeff()), {{"k", k + 1}, {"trial", t}});
        }
    }
    std::vector<Certificate> out;
    if (n >= 1)
        out.push_back(make_cert("cochain.dd_zero", "differential.square_zero", "le", dd_worst, 0.0, 1e-14, dd_where));
    out.push_back(adj.finish());
    out.push_back(expl.finish());
    return out;
}

std::string export_matrix(const Mat& A) {
    std::ostringstream os;
    os << A.rows() << ' ' << A.cols() << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) os << (j ? " " : "") << A(i, j);
        os << '\n';
    }
    return os.str();
}

}  // namespace hdx
