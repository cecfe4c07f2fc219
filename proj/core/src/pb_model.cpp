#include "mps/pb_model.hpp"

#include <algorithm>
#include <unordered_set>

namespace mps {

std::int64_t constraint_activity(const LinConstraint& c, const Assignment& a) {
    std::int64_t lhs = 0;
    for (const LinTerm& t : c.terms) {
        if (a[static_cast<size_t>(t.var)])
            lhs += t.coeff;
    }
    return lhs;
}

bool satisfies(const LinConstraint& c, const Assignment& a) {
    const std::int64_t lhs = constraint_activity(c, a);
    switch (c.cmp) {
    case Cmp::LessEq: return lhs <= c.rhs;
    case Cmp::GreaterEq: return lhs >= c.rhs;
    case Cmp::Eq: return lhs == c.rhs;
    }
    return false;
}

VarId PBModel::add_var(std::string name, std::int64_t objective_coeff) {
    if (name.empty())
        throw Error("variable name must not be empty");
    for (const std::string& existing : names_)
        if (existing == name)
            throw Error("duplicate variable name: " + name);
    names_.push_back(std::move(name));
    objective_.push_back(objective_coeff);
    return static_cast<VarId>(names_.size()) - 1;
}

void PBModel::add_constraint(LinConstraint c) {
    std::unordered_set<VarId> seen;
    for (const LinTerm& t : c.terms) {
        if (t.var < 0 || t.var >= var_count())
            throw Error("constraint references unknown variable id " + std::to_string(t.var));
        if (!seen.insert(t.var).second)
            throw Error("variable appears twice in one constraint: " + var_name(t.var));
    }
    // Canonical term order keeps structural comparison and text export
    // independent of the order in which callers assembled the constraint.
    std::sort(c.terms.begin(), c.terms.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    constraints_.push_back(std::move(c));
}

std::int64_t PBModel::objective_value(const Assignment& a) const {
    std::int64_t value = 0;
    for (VarId v = 0; v < var_count(); ++v)
        if (a[static_cast<size_t>(v)])
            value += objective_[static_cast<size_t>(v)];
    return value;
}

void PBModel::set_lazy_separator(LazySeparator sep, std::vector<std::string> family_names) {
    separator_ = std::move(sep);
    families_ = std::move(family_names);
}

bool structurally_equal(const PBModel& a, const PBModel& b) {
    return a.var_names() == b.var_names() && a.objective() == b.objective() &&
           a.constraints() == b.constraints();
}

} // namespace mps
