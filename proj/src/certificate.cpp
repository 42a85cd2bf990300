#include "hdx/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace hdx {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "not-applicable";
    }
}

static bool holds(const std::string& rel, double lhs, double rhs, double tol) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
        if (rel == "le") return lhs <= rhs;
        if (rel == "ge") return lhs >= rhs;
        return lhs == rhs;
    }
    if (rel == "le") return lhs <= rhs + tol;
    if (rel == "ge") return lhs + tol >= rhs;
    return std::fabs(lhs - rhs) <= tol;
}

Certificate make_cert(std::string name, std::string anchor, std::string relation,
                      double lhs, double rhs, double tol, nlohmann::json witness) {
    Certificate c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.relation = std::move(relation);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tol = tol;
    c.status = holds(c.relation, lhs, rhs, tol) ? Status::pass : Status::fail;
    c.witness = std::move(witness);
    return c;
}

Certificate not_applicable(std::string name, std::string anchor, std::string reason) {
    Certificate c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.relation = "none";
    c.status = Status::not_applicable;
    c.witness = {{"reason", std::move(reason)}};
    return c;
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["anchor"] = anchor;
    j["relation"] = relation;
    auto num = [](double x) -> nlohmann::json {
        if (std::isfinite(x)) return x;
        return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    };
    j["lhs"] = num(lhs);
    j["rhs"] = num(rhs);
    j["tol"] = tol;
    j["status"] = status_name(status);
    j["witness"] = witness;
    return j;
}

void WorstCase::add(double lhs, double rhs, double scale, nlohmann::json witness) {
    double tol = rel_ * std::max(scale, 1e-300);
    double viol;
    if (relation_ == "le") viol = lhs - rhs;
    else if (relation_ == "ge") viol = rhs - lhs;
    else viol = std::fabs(lhs - rhs);
    double score = tol > 0 ? viol / tol : viol;
    if (std::isnan(score)) score = 1e300;
    ++count_;
    if (count_ == 1 || score > worst_) {
        worst_ = score;
        lhs_ = lhs;
        rhs_ = rhs;
        tol_ = tol;
        witness_ = std::move(witness);
    }
}

Certificate WorstCase::finish() const {
    if (count_ == 0) return not_applicable(name_, anchor_, "no instances");
    nlohmann::json w = nlohmann::json::object();
    if (witness_.is_object()) w = witness_;
    else if (!witness_.is_null()) w["instance"] = witness_;
    w["instances"] = count_;
    return make_cert(name_, anchor_, relation_, lhs_, rhs_, tol_, w);
}

bool all_ok(const std::vector<Certificate>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Certificate& c) { return c.ok(); });
}

}  // namespace hdx
