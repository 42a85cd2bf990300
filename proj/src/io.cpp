#include <cmath>
#include <fstream>
#include <sstream>

#include "hdx/harness.hpp"

namespace hdx {

namespace {

std::string strip_comment(const std::string& line) {
    auto p = line.find('#');
    return p == std::string::npos ? line : line.substr(0, p);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> t;
    std::string s;
    while (in >> s) t.push_back(s);
    return t;
}

long parse_int(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
    }
}

double parse_double(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" + s + "'");
    }
}

Complex build_checked(const std::vector<std::vector<int>>& facets, const std::vector<double>& w,
                      const std::vector<int>& partition) {
    if (facets.empty()) throw ParseError("no facets");
    for (double x : w)
        if (!(x > 0)) throw ParseError("facet weights must be positive");
    try {
        return build_complex(facets, w, partition);
    } catch (const ComplexError& e) {
        throw ParseError(e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Complex parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0, n = -1;
    std::vector<std::vector<int>> facets;
    std::vector<double> weights;
    std::vector<int> partition;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = tokens(strip_comment(line));
        if (t.empty()) continue;
        if (t[0] == "dim") {
            if (n != -1 || t.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad dim header");
            n = static_cast<int>(parse_int(t[1], line_no));
            if (n < 0) throw ParseError("dimension must be nonnegative");
            continue;
        }
        if (n < 0) throw ParseError("line " + std::to_string(line_no) + ": missing 'dim n' header");
        if (t[0] == "partite") {
            for (size_t i = 1; i < t.size(); ++i) partition.push_back(static_cast<int>(parse_int(t[i], line_no)));
            continue;
        }
        const size_t k = static_cast<size_t>(n) + 1;
        std::vector<int> f;
        double w = 1.0;
        if (t.size() == k + 1) {
            w = parse_double(t[0], line_no);
            t.erase(t.begin());
        } else if (t.size() != k) {
            throw ParseError("line " + std::to_string(line_no) + ": facet needs " + std::to_string(k) + " vertices");
        }
        for (const auto& s : t) f.push_back(static_cast<int>(parse_int(s, line_no)));
        facets.push_back(f);
        weights.push_back(w);
    }
    if (n < 0) throw ParseError("missing 'dim n' header");
    return build_checked(facets, weights, partition);
}

Complex parse_complex_json(const nlohmann::json& j) {
    try {
        const int n = j.at("dim").get<int>();
        std::vector<std::vector<int>> facets;
        std::vector<double> weights;
        for (const auto& f : j.at("facets")) {
            std::vector<int> v = f.at("verts").get<std::vector<int>>();
            if (static_cast<int>(v.size()) != n + 1) throw ParseError("facet size does not match dim");
            facets.push_back(v);
            weights.push_back(f.contains("w") ? f["w"].get<double>() : 1.0);
        }
        std::vector<int> partition;
        if (j.contains("partition") && !j["partition"].is_null()) partition = j["partition"].get<std::vector<int>>();
        return build_checked(facets, weights, partition);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

Complex load_complex(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("json: ") + e.what());
        }
        return parse_complex_json(j);
    }
    return parse_complex_text(text);
}

std::string write_complex_text(const Complex& X) {
    std::ostringstream out;
    out.precision(17);
    out << "dim " << X.n << "\n";
    if (X.partite()) {
        out << "partite";
        for (int s : X.side) out << ' ' << s;
        out << "\n";
    }
    const auto& top = X.simplices(X.n);
    for (size_t i = 0; i < top.size(); ++i) {
        out << X.weight(X.n, static_cast<int>(i));
        for (int v : top[i]) out << ' ' << X.label[v];
        out << "\n";
    }
    return out.str();
}

nlohmann::json write_complex_json(const Complex& X) {
    nlohmann::json facets = nlohmann::json::array();
    const auto& top = X.simplices(X.n);
    for (size_t i = 0; i < top.size(); ++i) {
        std::vector<int> v;
        for (int u : top[i]) v.push_back(X.label[u]);
        facets.push_back({{"w", X.weight(X.n, static_cast<int>(i))}, {"verts", v}});
    }
    nlohmann::json j = {{"dim", X.n}, {"facets", facets}};
    if (X.partite()) j["partition"] = X.side;
    return j;
}

Embedding load_embedding(const std::string& path, const Complex& X) {
    std::istringstream in(read_file(path));
    std::map<int, int> dense;
    for (int v = 0; v < X.num_vertices(); ++v) dense[X.label[v]] = v;
    Embedding e;
    e.dim = X.n;
    e.coords.assign(X.num_vertices(), Point());
    std::vector<char> seen(X.num_vertices(), 0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = tokens(strip_comment(line));
        if (t.empty()) continue;
        if (static_cast<int>(t.size()) != X.n + 1)
            throw ParseError("line " + std::to_string(line_no) + ": expected a vertex and " + std::to_string(X.n) +
                             " coordinates");
        int label = static_cast<int>(parse_int(t[0], line_no));
        auto it = dense.find(label);
        if (it == dense.end()) throw ParseError("line " + std::to_string(line_no) + ": unknown vertex");
        Point p(X.n);
        for (int i = 0; i < X.n; ++i) p[i] = parse_double(t[static_cast<size_t>(i + 1)], line_no);
        e.coords[it->second] = p;
        seen[it->second] = 1;
    }
    for (int v = 0; v < X.num_vertices(); ++v)
        if (!seen[v]) throw ParseError("embedding misses vertex " + std::to_string(X.label[v]));
    return e;
}

}  // namespace hdx
