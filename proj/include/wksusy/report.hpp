#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wksusy/graded_fock.hpp"

namespace wksusy {

struct RelationCheck {
    std::string relation;
    double residual = 0.0;
    bool pass = true;
};

class RelationReport {
public:
    void add(std::string relation, const Residual& r) { checks_.push_back({std::move(relation), r.residual, r.pass}); }
    void add(std::string relation, double residual, bool pass) {
        checks_.push_back({std::move(relation), residual, pass});
    }
    void append(const RelationReport& other, const std::string& prefix = {}) {
        for (const auto& c : other.checks_) checks_.push_back({prefix + c.relation, c.residual, c.pass});
    }

    const std::vector<RelationCheck>& checks() const noexcept { return checks_; }
    bool all_pass() const {
        for (const auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks_) m = std::max(m, c.residual);
        return m;
    }
    /// Lookup by exact name; throws if absent.
    const RelationCheck& at(const std::string& relation) const {
        for (const auto& c : checks_)
            if (c.relation == relation) return c;
        throw IndexError("no check named '" + relation + "'");
    }
    bool contains(const std::string& relation) const {
        for (const auto& c : checks_)
            if (c.relation == relation) return true;
        return false;
    }

private:
    std::vector<RelationCheck> checks_;
};

}  // namespace wksusy
