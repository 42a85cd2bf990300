#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdx/certificate.hpp"
#include "hdx/complex.hpp"
#include "hdx/overlap.hpp"

namespace hdx {

Complex gen_complete_skeleton(int N, int n);
Complex gen_complete_multipartite(const std::vector<int>& sizes);

struct FlagResult {
    Complex X;
    bool pruned = false;   // non-pure part removed
    bool degenerate = false;
    std::string warning;
};
FlagResult gen_flag_random(int N, double p, int n, std::uint64_t seed);

// Text format: "dim n", optional "partite s_0 ...", then "[w] v_0 ... v_n" per facet.
// JSON mirror: {dim, facets:[{w, verts}], partition?}
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
Complex parse_complex_text(const std::string& text);
Complex parse_complex_json(const nlohmann::json& j);
Complex load_complex(const std::string& path);
std::string write_complex_text(const Complex& X);
nlohmann::json write_complex_json(const Complex& X);
Embedding load_embedding(const std::string& path, const Complex& X);

struct ReportOptions {
    std::uint64_t seed = 0;
    int trials = 64;
    std::uint64_t budget = 10000000;
    std::set<std::string> only;  // empty means every stage
    std::optional<Embedding> embedding;
    int mixing_trials = 64;
};

std::uint64_t budget_from_env();

// Stages: weights, connectivity, operators, identities, descent, gaps, partite,
// walks, cheeger, mixing, overlap.
std::vector<Certificate> run_full_report(const Complex& X, const ReportOptions& opt);
nlohmann::json report_json(const std::string& command, const Complex& X,
                           const std::vector<Certificate>& certs);

}  // namespace hdx
