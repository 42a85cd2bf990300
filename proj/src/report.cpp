#include <cstdlib>
#include <string>

#include "hdx/cheeger.hpp"
#include "hdx/cochains.hpp"
#include "hdx/harness.hpp"
#include "hdx/mixing.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

namespace hdx {

std::uint64_t budget_from_env() {
    const char* s = std::getenv("HDX_BUDGET");
    if (!s || !*s) return 10000000ULL;
    try {
        double v = std::stod(s);
        if (v >= 1) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
    return 10000000ULL;
}

namespace {

void append(std::vector<Certificate>& out, const std::vector<Certificate>& more) {
    out.insert(out.end(), more.begin(), more.end());
}

std::vector<Certificate> connectivity_certs(const Complex& X) {
    ConnectivityReport r = connectivity_report(X);
    std::vector<Certificate> out;
    nlohmann::json w = {{"connected", r.connected},
                        {"links_connected", r.links_connected},
                        {"gallery_connected", r.gallery_connected},
                        {"disconnected_links", r.disconnected_links}};
    if (r.connected && r.links_connected)
        out.push_back(make_cert("connectivity.gallery", "links.gallery_connectivity", "eq",
                                r.gallery_connected ? 1.0 : 0.0, 1.0, 0.0, w));
    else
        out.push_back(not_applicable("connectivity.gallery", "links.gallery_connectivity",
                                     "complex or some link disconnected"));
    return out;
}

}  // namespace

std::vector<Certificate> run_full_report(const Complex& X, const ReportOptions& opt) {
    std::vector<Certificate> out;
    auto want = [&](const std::string& s) { return opt.only.empty() || opt.only.count(s) > 0; };
    auto stage = [&](const std::string& name, const std::function<std::vector<Certificate>()>& f) {
        if (!want(name)) return;
        try {
            append(out, f());
        } catch (const BudgetError& e) {
            out.push_back(not_applicable(name, name + ".budget", e.what()));
        }
    };
    stage("weights", [&] { return weight_identities(X); });
    stage("connectivity", [&] { return connectivity_certs(X); });
    stage("operators", [&] {
        auto a = operator_algebra(X, opt.trials, opt.seed);
        append(a, hodge_checks(X));
        return a;
    });
    stage("identities", [&] { return identity_suite(X, opt.trials, opt.seed); });
    stage("descent", [&] { return verify_descent(X); });
    stage("gaps", [&] { return verify_global_gaps(X); });
    if (X.partite()) stage("partite", [&] { return partite_spectral_suite(X); });
    stage("walks", [&] { return walk_identities(X, opt.trials, opt.seed, opt.budget); });
    stage("cheeger", [&] { return verify_cheeger(X, opt.budget, opt.trials, opt.seed); });
    stage("mixing", [&] {
        MixingOptions m;
        m.trials = opt.mixing_trials;
        m.seed = opt.seed;
        m.budget = opt.budget;
        return mixing_suite(X, m);
    });
    if (opt.embedding) stage("overlap", [&] { return overlap_checks(X, *opt.embedding, opt.seed); });
    return out;
}

nlohmann::json report_json(const std::string& command, const Complex& X, const std::vector<Certificate>& certs) {
    nlohmann::json fvec = nlohmann::json::array();
    for (int k = 0; k <= X.n; ++k) fvec.push_back(X.count(k));
    int pass = 0, fail = 0, na = 0;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : certs) {
        list.push_back(c.to_json());
        if (c.status == Status::pass) ++pass;
        else if (c.status == Status::fail) ++fail;
        else ++na;
    }
    return {{"schema", 1},
            {"command", command},
            {"complex", {{"dim", X.n}, {"f_vector", fvec}, {"partite", X.partite()}}},
            {"summary", {{"pass", pass}, {"fail", fail}, {"not_applicable", na}}},
            {"certificates", list}};
}

}  // namespace hdx
