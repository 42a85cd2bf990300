#include "hdx/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace hdx {

namespace {

double point_scale(const std::vector<Point>& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

// affine rank of the point set
int affine_rank(const std::vector<Point>& pts, double tol) {
    if (pts.size() <= 1) return 0;
    Eigen::MatrixXd A(pts[0].size(), static_cast<long>(pts.size() - 1));
    for (size_t i = 1; i < pts.size(); ++i) A.col(static_cast<long>(i - 1)) = pts[i] - pts[0];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    int r = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s[i] > tol) ++r;
    return r;
}

bool in_hull(const Point& p, const std::vector<Point>& pts, double tol, double scale) {
    if (pts.empty()) return false;
    if (pts.size() == 1) return (p - pts[0]).norm() <= tol * scale;
    const long m = static_cast<long>(pts.size()) - 1;
    if (affine_rank(pts, 1e-12 * scale) == m) {
        Eigen::MatrixXd A(p.size(), m);
        for (long i = 0; i < m; ++i) A.col(i) = pts[static_cast<size_t>(i + 1)] - pts[0];
        Eigen::VectorXd b = p - pts[0];
        Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
        if ((A * x - b).norm() > tol * scale) return false;
        double sum = x.sum();
        return x.minCoeff() >= -tol && 1.0 - sum >= -tol;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<Point> sub;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) sub.push_back(pts[j]);
        if (in_hull(p, sub, tol, scale)) return true;
    }
    return false;
}

std::vector<Point> facet_points(const Embedding& phi, const Simplex& s) {
    std::vector<Point> v;
    for (int u : s) v.push_back(phi.coords[u]);
    return v;
}

// Line a.x = b through p and q, or nothing if p == q.
bool line_through(const Point& p, const Point& q, Eigen::Vector2d& a, double& b) {
    Eigen::Vector2d d = q - p;
    if (d.norm() < 1e-12) return false;
    a = Eigen::Vector2d(-d[1], d[0]).normalized();
    b = a.dot(p);
    return true;
}

void dedupe(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    std::vector<Point> out;
    for (const auto& p : pts)
        if (out.empty() || (p - out.back()).cwiseAbs().maxCoeff() > 1e-12) out.push_back(p);
    pts.swap(out);
}

}  // namespace

bool Embedding::general_position(double tol) const {
    const int N = static_cast<int>(coords.size());
    if (N < dim + 1) return true;
    std::vector<int> pick(N, 0);
    std::fill(pick.begin(), pick.begin() + dim + 1, 1);
    double scale = point_scale(coords);
    do {
        std::vector<Point> sub;
        for (int i = 0; i < N; ++i)
            if (pick[i]) sub.push_back(coords[i]);
        if (affine_rank(sub, tol * scale) < dim) return false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return true;
}

bool point_in_hull(const Point& p, const std::vector<Point>& pts, double tol) {
    std::vector<Point> all(pts);
    all.push_back(p);
    return in_hull(p, pts, tol, point_scale(all));
}

bool point_in_closed_simplex(const Point& p, const std::vector<Point>& verts, double tol) {
    for (const auto& v : verts)
        if (v.size() != p.size()) throw std::invalid_argument("dimension mismatch");
    return point_in_hull(p, verts, tol);
}

double covered_weight(const Complex& X, const Embedding& phi, const Point& p) {
    double w = 0.0;
    const auto& top = X.simplices(X.n);
    for (size_t i = 0; i < top.size(); ++i)
        if (point_in_closed_simplex(p, facet_points(phi, top[i]))) w += X.weight(X.n, static_cast<int>(i));
    return w;
}

nlohmann::json OverlapResult::to_json() const {
    std::vector<double> bp(best_point.data(), best_point.data() + best_point.size());
    return {{"best_point", bp}, {"covered_weight", covered_weight}, {"total", total},
            {"ratio", ratio}, {"candidates", candidates}, {"mode", mode}};
}

std::vector<Point> arrangement_candidates(const std::vector<Point>& pts_in, int dim) {
    std::vector<Point> pts(pts_in);
    dedupe(pts);
    if (dim == 1) return pts;
    if (dim != 2) throw std::invalid_argument("exact candidates need dim <= 2");
    std::vector<Point> out(pts);
    std::vector<std::pair<Eigen::Vector2d, double>> lines;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Eigen::Vector2d a;
            double b;
            if (line_through(pts[i], pts[j], a, b)) lines.push_back({a, b});
        }
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j) {
            Eigen::Matrix2d M;
            M.row(0) = lines[i].first.transpose();
            M.row(1) = lines[j].first.transpose();
            double det = M.determinant();
            if (std::fabs(det) < 1e-12) continue;
            Eigen::Vector2d x = M.inverse() * Eigen::Vector2d(lines[i].second, lines[j].second);
            out.push_back(x);
        }
    dedupe(out);
    return out;
}

static OverlapResult best_of(const Complex& X, const Embedding& phi, const std::vector<Point>& cand,
                             const std::string& mode) {
    OverlapResult r;
    r.mode = mode;
    r.candidates = cand.size();
    for (double w : X.weights(X.n)) r.total += w;
    r.best_point = cand.empty() ? Point::Zero(phi.dim) : cand[0];
    r.covered_weight = -1.0;
    for (const auto& p : cand) {
        double w = covered_weight(X, phi, p);
        if (w > r.covered_weight) {
            r.covered_weight = w;
            r.best_point = p;
        }
    }
    r.covered_weight = std::max(r.covered_weight, 0.0);
    r.ratio = r.total > 0 ? r.covered_weight / r.total : 0.0;
    return r;
}

OverlapResult overlap_bruteforce(const Complex& X, const Embedding& phi) {
    if (X.n > 2) throw std::invalid_argument("exact overlap search needs n <= 2; use grid mode");
    if (phi.dim != X.n) throw std::invalid_argument("embedding dimension must equal n");
    return best_of(X, phi, arrangement_candidates(phi.coords, X.n), "exact");
}

OverlapResult overlap_grid(const Complex& X, const Embedding& phi, int resolution) {
    if (phi.dim != X.n) throw std::invalid_argument("embedding dimension must equal n");
    if (resolution < 1) throw std::invalid_argument("grid resolution must be positive");
    const int d = phi.dim;
    Point lo = phi.coords[0], hi = phi.coords[0];
    for (const auto& p : phi.coords) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    std::vector<Point> cand(phi.coords);
    std::vector<int> idx(d, 0);
    while (true) {
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / resolution;
        cand.push_back(p);
        int i = 0;
        while (i < d && ++idx[i] > resolution) idx[i++] = 0;
        if (i == d) break;
    }
    return best_of(X, phi, cand, "grid:" + std::to_string(resolution));
}

Threshold overlap_threshold(int n, double A, double E, double omega, double c) {
    Threshold t;
    t.first = omega / (2.0 * (n + 1) * (n + 1));
    const double base = std::pow(c / (2.0 * (n + 1)), n);
    t.second = A * static_cast<double>(factorial(n)) * c / 2.0 * (base - E / A);
    t.applicable = A > 0 && E / A < base;
    t.value = std::min(t.first, t.second);
    return t;
}

Threshold overlap_threshold_partite(int n, double E, double omega, double c) {
    Threshold t;
    t.first = omega / ((n + 1.0) * (n + 1.0));
    const double cn = std::pow(c, n);
    t.second = c * (cn - static_cast<double>(factorial(n + 1)) * E);
    t.applicable = E < cn / static_cast<double>(factorial(n + 1));
    t.value = std::min(t.first, t.second);
    return t;
}

BalancedPartition balanced_partition(const std::vector<double>& m, int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    BalancedPartition r;
    r.sides.assign(n + 1, {});
    r.side_weights.assign(n + 1, 0.0);
    double total = 0.0;
    for (double w : m) total += w;
    std::vector<int> order(m.size());
    for (size_t i = 0; i < m.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return m[a] > m[b]; });
    const double heavy = total / (2.0 * (n + 1));
    if (!order.empty() && m[order[0]] >= heavy) {
        r.heavy = true;
        r.heavy_vertex = order[0];
    }
    for (int u : order) {
        int s = static_cast<int>(std::min_element(r.side_weights.begin(), r.side_weights.end()) -
                                 r.side_weights.begin());
        r.sides[s].push_back(u);
        r.side_weights[s] += m[u];
    }
    return r;
}

double alpha_g(int n, double eps1, double eps2, double x) {
    double g = 0.0;
    for (int i = 0; i <= n; ++i) g += std::pow((1.0 - eps1) * std::pow(eps2, i), 1.0 - x);
    return g;
}

double alpha_constant(int n, double eps1, double eps2) {
    if (!(eps1 > 0 && eps1 <= eps2 && eps2 < 1)) throw std::invalid_argument("need 0 < eps1 <= eps2 < 1");
    const double target = 1.0 - 1e-6;
    if (!(alpha_g(n, eps1, eps2, 0.0) <= target))
        throw std::invalid_argument("g(0) >= 1: no admissible alpha");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (alpha_g(n, eps1, eps2, mid) <= target) lo = mid;
        else hi = mid;
    }
    return lo;
}

double default_eps2(int n, double eps1) { return eps1 + (1.0 - eps1) * std::pow(eps1, n + 1); }

double simplex_probability(const std::vector<DiscreteMeasure>& mu, const Point& p) {
    const size_t k = mu.size();
    std::vector<double> tot(k, 0.0);
    for (size_t i = 0; i < k; ++i)
        for (double w : mu[i].weights) tot[i] += w;
    double prob = 0.0;
    std::vector<size_t> idx(k, 0);
    std::vector<Point> verts(k);
    while (true) {
        double w = 1.0;
        for (size_t i = 0; i < k; ++i) {
            verts[i] = mu[i].points[idx[i]];
            w *= mu[i].weights[idx[i]] / tot[i];
        }
        if (w > 0 && point_in_closed_simplex(p, verts)) prob += w;
        size_t i = 0;
        while (i < k && ++idx[i] == mu[i].points.size()) idx[i++] = 0;
        if (i == k) break;
    }
    return prob;
}

Centerpoint centerpoint_bruteforce(const std::vector<DiscreteMeasure>& mu) {
    if (mu.empty()) throw std::invalid_argument("no measures");
    const int n = static_cast<int>(mu.size()) - 1;
    if (n < 1 || n > 2) throw std::invalid_argument("centerpoint search needs n in {1, 2}");
    std::vector<Point> pts;
    for (const auto& m : mu) {
        if (m.points.size() != m.weights.size() || m.points.empty())
            throw std::invalid_argument("measure needs matching points and weights");
        for (const auto& p : m.points) {
            if (p.size() != n) throw std::invalid_argument("measure dimension must equal n");
            pts.push_back(p);
        }
    }
    Centerpoint best;
    best.probability = -1.0;
    for (const auto& p : arrangement_candidates(pts, n)) {
        double pr = simplex_probability(mu, p);
        if (pr > best.probability) {
            best.probability = pr;
            best.point = p;
        }
    }
    return best;
}

bool separated_family_check(const std::vector<std::vector<Point>>& bodies_in, const Point& O, double tol) {
    std::vector<std::vector<Point>> bodies(bodies_in);
    bodies.push_back({O});
    const int n = static_cast<int>(O.size());
    if (static_cast<int>(bodies.size()) != n + 2) throw std::invalid_argument("need n+1 bodies plus O");
    if (n == 1) {
        // a point meets two of the intervals iff two intervals intersect
        std::vector<std::pair<double, double>> iv;
        for (const auto& b : bodies) {
            double lo = 1e300, hi = -1e300;
            for (const auto& p : b) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
            iv.push_back({lo, hi});
        }
        for (size_t i = 0; i < iv.size(); ++i)
            for (size_t j = i + 1; j < iv.size(); ++j)
                if (iv[i].first <= iv[j].second + tol && iv[j].first <= iv[i].second + tol) return false;
        return true;
    }
    if (n != 2) throw std::invalid_argument("separated family check needs n <= 2");
    std::vector<Point> pts;
    for (const auto& b : bodies) pts.insert(pts.end(), b.begin(), b.end());
    auto stabs = [&](const Eigen::Vector2d& a, double c, const std::vector<Point>& b) {
        bool neg = false, pos = false;
        for (const auto& p : b) {
            double s = a.dot(p) - c;
            if (std::fabs(s) <= tol) return true;
            (s < 0 ? neg : pos) = true;
        }
        return neg && pos;
    };
    auto meets_too_many = [&](const Eigen::Vector2d& a, double c) {
        int hit = 0;
        for (const auto& b : bodies) hit += stabs(a, c, b);
        return hit >= n + 1;
    };
    std::vector<Eigen::Vector2d> dirs;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Eigen::Vector2d a;
            double c;
            if (!line_through(pts[i], pts[j], a, c)) continue;
            if (meets_too_many(a, c)) return false;
            dirs.push_back(a);
        }
    dirs.push_back(Eigen::Vector2d(1, 0));
    dirs.push_back(Eigen::Vector2d(0, 1));
    for (const auto& a : dirs)
        for (const auto& p : pts)
            if (meets_too_many(a, a.dot(p))) return false;
    return true;
}

std::pair<std::size_t, std::size_t> transversal_coverage(const std::vector<std::vector<Point>>& bodies,
                                                         const Point& O) {
    std::size_t hit = 0, total = 0;
    std::vector<size_t> idx(bodies.size(), 0);
    std::vector<Point> verts(bodies.size());
    while (true) {
        for (size_t i = 0; i < bodies.size(); ++i) verts[i] = bodies[i][idx[i]];
        ++total;
        hit += point_in_closed_simplex(O, verts);
        size_t i = 0;
        while (i < bodies.size() && ++idx[i] == bodies[i].size()) idx[i++] = 0;
        if (i == bodies.size()) break;
    }
    return {hit, total};
}

std::vector<Certificate> overlap_checks(const Complex& X, const Embedding& phi, std::uint64_t seed) {
    std::vector<Certificate> out;
    const int n = X.n;
    if (phi.dim != n || static_cast<int>(phi.coords.size()) != X.num_vertices()) {
        out.push_back(not_applicable("overlap", "overlap.embedding", "embedding does not match the complex"));
        return out;
    }
    OverlapResult r = n <= 2 ? overlap_bruteforce(X, phi) : overlap_grid(X, phi, 8);
    out.push_back(make_cert("overlap.ratio_range", "overlap.definition", "le",
                            std::max(-r.ratio, r.ratio - 1.0), 0.0, 1e-12, r.to_json()));

    // every vertex image is covered by all facets through it
    WorstCase heavy("overlap.vertex_cover", "overlap.heavy_vertex", "ge", 1e-12);
    const double nf = static_cast<double>(factorial(n));
    for (int u = 0; u < X.num_vertices(); ++u) {
        double need = X.weight(0, u) / nf;
        heavy.add(covered_weight(X, phi, phi.coords[u]), need, std::max(1.0, need), {{"vertex", X.label[u]}});
    }
    out.push_back(heavy.finish());

    if (n <= 2) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::MatrixXd M(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M(i, j) = g(rng);
        } while (std::fabs(M.determinant()) < 0.1);
        Point t(n);
        for (int i = 0; i < n; ++i) t[i] = g(rng);
        Embedding psi = phi;
        for (auto& p : psi.coords) p = M * p + t;
        OverlapResult s = overlap_bruteforce(X, psi);
        out.push_back(make_cert("overlap.affine_invariance", "overlap.definition", "eq", s.ratio, r.ratio, 1e-9,
                                {{"original", r.to_json()}, {"mapped", s.to_json()}}));
    }
    return out;
}

}  // namespace hdx
