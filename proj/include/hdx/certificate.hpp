#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hdx {

enum class Status { pass, fail, not_applicable };

const char* status_name(Status s);

// lhs REL rhs, with tol an absolute slack.
struct Certificate {
    std::string name;
    std::string anchor;
    std::string relation;  // "le", "ge", "eq"
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    Status status = Status::not_applicable;
    nlohmann::json witness = nlohmann::json::object();

    bool ok() const { return status != Status::fail; }
    nlohmann::json to_json() const;
};

Certificate make_cert(std::string name, std::string anchor, std::string relation,
                      double lhs, double rhs, double tol,
                      nlohmann::json witness = nlohmann::json::object());
Certificate not_applicable(std::string name, std::string anchor, std::string reason);

// Keeps the instance closest to violating (or most violating) a relation.
class WorstCase {
public:
    WorstCase(std::string name, std::string anchor, std::string relation, double rel_tol)
        : name_(std::move(name)), anchor_(std::move(anchor)),
          relation_(std::move(relation)), rel_(rel_tol) {}

    // scale: magnitude the relative tolerance is measured against
    void add(double lhs, double rhs, double scale, nlohmann::json witness = {});
    Certificate finish() const;
    int count() const { return count_; }

private:
    std::string name_, anchor_, relation_;
    double rel_;
    int count_ = 0;
    double worst_ = -1e300;
    double lhs_ = 0, rhs_ = 0, tol_ = 0;
    nlohmann::json witness_;
};

bool all_ok(const std::vector<Certificate>& cs);

}  // namespace hdx
