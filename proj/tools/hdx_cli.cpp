#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hdx/cheeger.hpp"
#include "hdx/harness.hpp"
#include "hdx/mixing.hpp"
#include "hdx/overlap.hpp"
#include "hdx/spectra.hpp"

using namespace hdx;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// complete:N:n | multipartite:s0,s1,... | flag:N:p:n[:seed]
Complex from_generator(const std::string& spec) {
    auto t = split(spec, ':');
    try {
        if (t.size() == 3 && t[0] == "complete") return gen_complete_skeleton(std::stoi(t[1]), std::stoi(t[2]));
        if (t.size() == 2 && t[0] == "multipartite") {
            std::vector<int> sizes;
            for (const auto& s : split(t[1], ',')) sizes.push_back(std::stoi(s));
            return gen_complete_multipartite(sizes);
        }
        if ((t.size() == 4 || t.size() == 5) && t[0] == "flag") {
            std::uint64_t seed = t.size() == 5 ? std::stoull(t[4]) : 0;
            FlagResult r = gen_flag_random(std::stoi(t[1]), std::stod(t[2]), std::stoi(t[3]), seed);
            if (!r.warning.empty()) std::cerr << "warning: " << r.warning << "\n";
            return r.X;
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ParseError("bad generator spec '" + spec + "'");
}

Complex input(const std::string& path, const std::string& gen) {
    if (!gen.empty()) return from_generator(gen);
    if (path.empty()) throw ParseError("need a complex file or --gen");
    return load_complex(path);
}

// "0,1;2;3,4" -> {{0,1},{2},{3,4}} in original labels
SubsetFamily parse_family(const std::string& s, const Complex& X) {
    std::map<int, int> dense;
    for (int v = 0; v < X.num_vertices(); ++v) dense[X.label[v]] = v;
    SubsetFamily U;
    for (const auto& part : split(s, ';')) {
        std::vector<int> set;
        for (const auto& v : split(part, ',')) {
            if (v.empty()) continue;
            auto it = dense.find(std::stoi(v));
            if (it == dense.end()) throw ParseError("unknown vertex " + v);
            set.push_back(it->second);
        }
        U.push_back(set);
    }
    return U;
}

nlohmann::json labelled(const SubsetFamily& U, const Complex& X) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : U) {
        std::vector<int> v;
        for (int u : s) v.push_back(X.label[u]);
        j.push_back(v);
    }
    return j;
}

int emit(const nlohmann::json& j, bool ok) {
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hdx: weighted simplicial complexes, link spectra and certificates"};
    app.require_subcommand(1);

    std::string path, gen, format = "text", out_path;
    std::uint64_t seed = 0;
    int trials = 64;

    auto* g = app.add_subcommand("generate", "write a generated complex");
    g->add_option("spec", gen, "complete:N:n | multipartite:s0,s1,... | flag:N:p:n[:seed]")->required();
    g->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    g->add_option("-o,--output", out_path, "output file (default stdout)");

    auto add_input = [&](CLI::App* c) {
        c->add_option("complex", path, "complex file (text or json)");
        c->add_option("--gen", gen, "generator spec instead of a file");
    };

    auto* an = app.add_subcommand("analyze", "spectra, link profile and descent table");
    add_input(an);

    std::vector<std::string> only;
    std::string embedding_path;
    auto* ve = app.add_subcommand("verify", "run every certificate stage");
    add_input(ve);
    ve->add_option("--seed", seed, "random seed");
    ve->add_option("--trials", trials, "random trials per identity");
    ve->add_option("--only", only, "restrict to these stages")
        ->delimiter(',')
        ->check(CLI::IsMember({"weights", "connectivity", "operators", "identities", "descent", "gaps", "partite",
                               "walks", "cheeger", "mixing", "overlap"}));
    ve->add_option("--embedding", embedding_path, "embedding file for the overlap stage");

    int k = 0, sample = 0;
    bool exhaustive = false;
    std::string family;
    auto* ch = app.add_subcommand("cheeger", "h^k by enumeration or sampling");
    add_input(ch);
    ch->add_option("--k", k, "degree")->required();
    auto* ex_flag = ch->add_flag("--exhaustive", exhaustive, "enumerate every family (default)");
    ch->add_option("--sample", sample, "sample this many families instead")->excludes(ex_flag);
    ch->add_option("--seed", seed, "random seed");
    ch->add_option("--family", family, "also report h_inner/h_out for U, e.g. 0,1;2");

    int l = 1;
    bool partite = false, mix_exhaustive = false;
    auto* mi = app.add_subcommand("mixing", "mixing inequalities for one l");
    add_input(mi);
    mi->add_option("--l", l, "number of sets minus one")->required();
    mi->add_flag("--partite", partite, "use the partite statement");
    mi->add_flag("--exhaustive", mix_exhaustive, "enumerate families within the budget");
    mi->add_option("--trials", trials, "random families");
    mi->add_option("--seed", seed, "random seed");

    int grid = 0;
    double omega = -1, cconst = -1;
    auto* ov = app.add_subcommand("overlap", "best covering point of an embedding");
    add_input(ov);
    ov->add_option("--embedding", embedding_path, "embedding file")->required();
    ov->add_option("--grid", grid, "grid resolution instead of exact search");
    ov->add_option("--omega", omega, "constant omega(n) for the threshold");
    ov->add_option("--c", cconst, "constant c(n) for the threshold");
    ov->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::uint64_t budget = budget_from_env();

    try {
        if (*g) {
            Complex X = from_generator(gen);
            std::string text = format == "json" ? write_complex_json(X).dump(2) + "\n" : write_complex_text(X);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw ParseError("cannot write " + out_path);
                f << text;
            }
            return 0;
        }
        Complex X = input(path, gen);
        if (*an) {
            nlohmann::json j = {{"schema", 1}, {"command", "analyze"}, {"dim", X.n}};
            nlohmann::json spectra = nlohmann::json::array();
            for (int d = 0; d <= X.n; ++d) {
                nlohmann::json row{{"k", d}};
                if (d < X.n) row["up"] = laplacian_spectrum(X, d, LaplacianKind::up).eigenvalues;
                row["down"] = laplacian_spectrum(X, d, LaplacianKind::down).eigenvalues;
                spectra.push_back(row);
            }
            j["spectra"] = spectra;
            nlohmann::json prof = nlohmann::json::array();
            for (const auto& r : descent_profile(X))
                prof.push_back({{"k", r.k},
                                {"lambda", r.observed.lambda},
                                {"kappa", r.observed.kappa},
                                {"disconnected", r.observed.disconnected},
                                {"predicted_lo", r.predicted_lo},
                                {"predicted_hi", r.predicted_hi}});
            j["link_profile"] = prof;
            ConnectivityReport c = connectivity_report(X);
            j["connected"] = c.connected;
            j["links_connected"] = c.links_connected;
            return emit(j, true);
        }
        if (*ve) {
            ReportOptions opt;
            opt.seed = seed;
            opt.trials = trials;
            opt.budget = budget;
            opt.only = std::set<std::string>(only.begin(), only.end());
            if (!embedding_path.empty()) opt.embedding = load_embedding(embedding_path, X);
            auto certs = run_full_report(X, opt);
            return emit(report_json("verify", X, certs), all_ok(certs));
        }
        if (*ch) {
            CheegerReport r = sample > 0 ? h_k_sampled(X, k, sample, seed) : h_k_exhaustive(X, k, budget);
            nlohmann::json j = r.to_json();
            j["witness"] = labelled(r.witness, X);
            nlohmann::json out = {{"schema", 1}, {"command", "cheeger"}, {"report", j}};
            if (!family.empty()) {
                SubsetFamily U = parse_family(family, X);
                if (static_cast<int>(U.size()) != k + 1) throw ParseError("family must have k+1 sets");
                bool degen = false;
                out["family"] = {{"sets", labelled(U, X)},
                                 {"h_inner", h_inner(X, U)},
                                 {"h_out", h_out(X, U, &degen)},
                                 {"degenerate", degen}};
            }
            return emit(out, r.pass);
        }
        if (*mi) {
            MixingOptions opt;
            opt.exhaustive = mix_exhaustive;
            opt.trials = trials;
            opt.seed = seed;
            opt.budget = budget;
            auto certs = verify_mixing(X, l, partite, opt);
            return emit(report_json("mixing", X, certs), all_ok(certs));
        }
        if (*ov) {
            Embedding phi = load_embedding(embedding_path, X);
            OverlapResult r = grid > 0 ? overlap_grid(X, phi, grid) : overlap_bruteforce(X, phi);
            nlohmann::json j = {{"schema", 1}, {"command", "overlap"}, {"result", r.to_json()},
                                {"general_position", phi.general_position()}};
            std::vector<Certificate> certs = overlap_checks(X, phi, seed);
            if (omega > 0 && cconst > 0) {
                ProfileRow top = link_profile(X, X.n - 2);
                bool part = X.partite();
                MixingConstants mc = mixing_constants(X.n, X.n, top.lambda, top.kappa, part);
                Threshold t = part ? overlap_threshold_partite(X.n, mc.E, omega, cconst)
                                   : overlap_threshold(X.n, mc.A, mc.E, omega, cconst);
                nlohmann::json w = {{"threshold", t.value}, {"first", t.first}, {"second", t.second},
                                    {"constants", mc.to_json()}};
                if (t.applicable && mc.applicable && !top.disconnected)
                    certs.push_back(make_cert("overlap.threshold", "overlap.mixing_implies_overlap", "ge", r.ratio,
                                              t.value, 1e-9, w));
                else
                    certs.push_back(not_applicable("overlap.threshold", "overlap.mixing_implies_overlap",
                                                   "mixing constants outside the applicable range"));
            }
            nlohmann::json list = nlohmann::json::array();
            for (const auto& c : certs) list.push_back(c.to_json());
            j["certificates"] = list;
            return emit(j, all_ok(certs));
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
