#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mps/errors.hpp"

namespace mps {

using VarId = int;

/// Comparator of a linear constraint.
enum class Cmp {
    LessEq,
    GreaterEq,
    Eq,
};

struct LinTerm {
    std::int64_t coeff;
    VarId var;

    bool operator==(const LinTerm&) const = default;
};

/// Integer linear constraint  sum(coeff_i * x_i)  cmp  rhs  over binary vars.
struct LinConstraint {
    std::vector<LinTerm> terms;
    Cmp cmp = Cmp::LessEq;
    std::int64_t rhs = 0;

    bool operator==(const LinConstraint&) const = default;
};

/// A full 0/1 assignment, one value per variable id.
using Assignment = std::vector<std::uint8_t>;

/// Evaluates the left-hand side of `c` under `a`.
std::int64_t constraint_activity(const LinConstraint& c, const Assignment& a);

/// True iff `a` satisfies `c`.
bool satisfies(const LinConstraint& c, const Assignment& a);

/// Callback invoked on integral assignments that satisfy every explicit
/// constraint; returns constraints of the lazily separated families that the
/// assignment violates (empty means the assignment is fully feasible).
using LazySeparator = std::function<std::vector<LinConstraint>(const Assignment&)>;

/// A 0/1 linear maximization model with optional lazily separated constraint
/// families. All coefficients are integers; variable names are unique and
/// encode what each variable stands for.
class PBModel {
public:
    /// Adds a binary variable and returns its id. Throws Error on a duplicate
    /// or empty name.
    VarId add_var(std::string name, std::int64_t objective_coeff = 0);

    /// Adds an explicit constraint. Throws Error when a term references an
    /// unknown variable or when a variable appears twice.
    void add_constraint(LinConstraint c);

    int var_count() const { return static_cast<int>(names_.size()); }
    const std::string& var_name(VarId v) const { return names_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& var_names() const { return names_; }
    std::int64_t objective_coeff(VarId v) const { return objective_[static_cast<size_t>(v)]; }
    const std::vector<std::int64_t>& objective() const { return objective_; }
    const std::vector<LinConstraint>& constraints() const { return constraints_; }

    /// Objective value of a full assignment (maximization sense).
    std::int64_t objective_value(const Assignment& a) const;

    /// Lazily separated families; empty separator means the explicit
    /// constraints are the whole model.
    void set_lazy_separator(LazySeparator sep, std::vector<std::string> family_names);
    const LazySeparator& lazy_separator() const { return separator_; }
    const std::vector<std::string>& lazy_families() const { return families_; }

private:
    std::vector<std::string> names_;
    std::vector<std::int64_t> objective_;
    std::vector<LinConstraint> constraints_;
    LazySeparator separator_;
    std::vector<std::string> families_;
};

/// Structural equality of the explicit parts: names, objective, constraints.
/// Lazy separators are ignored (callbacks are not comparable).
bool structurally_equal(const PBModel& a, const PBModel& b);

} // namespace mps
