#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "mps/pb_model.hpp"

namespace mps {

enum class SolveStatus {
    Optimal,     ///< search tree exhausted, incumbent is a maximum
    TimeLimit,   ///< stopped on wall time; incumbent (if any) is feasible
    NodeLimit,   ///< stopped on branch-and-bound node budget
    MemoryLimit, ///< stopped on estimated memory footprint
    Infeasible,  ///< search tree exhausted without finding any feasible point
};

const char* to_string(SolveStatus s);

struct SolveStats {
    std::int64_t bnb_nodes = 0;
    std::int64_t lazy_constraints_added = 0;
    std::int64_t separator_calls = 0;
    double wall_time_sec = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    /// Best feasible assignment found; empty when none exists.
    Assignment incumbent;
    /// Objective of the incumbent; meaningless when incumbent is empty.
    std::int64_t objective_value = std::numeric_limits<std::int64_t>::min();
    /// Upper bound on the optimum. Equals objective_value when status is
    /// Optimal with an incumbent; equals SolveOptions::lower_bound when a
    /// completed search found nothing better than the caller's bound.
    std::int64_t dual_bound = std::numeric_limits<std::int64_t>::min();
    /// False when the caller's warm start was rejected (logged, not fatal).
    bool warm_start_accepted = false;
    SolveStats stats;
};

/// Local bounds of every variable at the current branch-and-bound node:
/// lower(v) == upper(v) means v is fixed to that value.
class NodeBounds {
public:
    NodeBounds(const std::vector<std::uint8_t>& fixed, const std::vector<std::uint8_t>& value)
        : fixed_(fixed), value_(value) {}

    bool is_free(VarId v) const { return !fixed_[static_cast<size_t>(v)]; }
    int lower(VarId v) const { return fixed_[static_cast<size_t>(v)] ? value_[static_cast<size_t>(v)] : 0; }
    int upper(VarId v) const { return fixed_[static_cast<size_t>(v)] ? value_[static_cast<size_t>(v)] : 1; }

private:
    const std::vector<std::uint8_t>& fixed_;
    const std::vector<std::uint8_t>& value_;
};

struct BranchDecision {
    VarId var;
    bool value;
};

/// A two-way branch: the solver explores the `first` child before `second`.
/// Either list may fix several variables at once, but each must fix at least
/// one variable that is free at the current node.
struct BranchPlan {
    std::vector<BranchDecision> first;
    std::vector<BranchDecision> second;
};

/// Chooses how to split the current node. The default rule (empty callback)
/// branches on the free variable with the largest objective coefficient
/// (ties by lowest id), trying value 1 first. A custom callback may return
/// std::nullopt to fall back to the default rule at that node.
struct BranchRule {
    std::function<std::optional<BranchPlan>(const NodeBounds&)> custom;
};

struct SolveLimits {
    double time_sec = std::numeric_limits<double>::infinity();
    std::int64_t nodes = std::numeric_limits<std::int64_t>::max();
    std::int64_t memory_bytes = std::numeric_limits<std::int64_t>::max();
};

struct SolveProgress {
    std::int64_t bnb_nodes;
    std::int64_t best_objective; ///< INT64_MIN while no incumbent exists
    std::int64_t dual_bound;
    double wall_time_sec;
};

struct SolveOptions {
    BranchRule rule;
    SolveLimits limits;
    /// Full assignment used as the initial incumbent. Validated against all
    /// constraints (including the lazy families via one separator call); on
    /// failure it is skipped and `warm_start_accepted` stays false.
    std::optional<Assignment> warm_start;
    /// Objective value of a feasible solution the caller holds outside the
    /// solver. Subtrees that cannot strictly beat it are pruned; a search
    /// that completes without finding anything better returns Optimal with
    /// an empty incumbent and dual_bound == lower_bound, certifying the
    /// caller's solution. Must be attained by a genuinely feasible solution,
    /// or the true optimum may be pruned.
    std::int64_t lower_bound = std::numeric_limits<std::int64_t>::min();
    /// Invoked whenever a new incumbent is found and at every return from a
    /// search node (throttled to every 1024 nodes).
    std::function<void(const SolveProgress&)> on_progress;
};

/// Exact depth-first branch-and-bound over binary variables with integer bound
/// propagation, objective pruning, and lazy constraint separation on integral
/// leaves. Constraints returned by the separator must be violated by the
/// triggering assignment and must never cut off a previously accepted
/// incumbent; both are asserted and raise SeparatorContractViolation.
SolveResult solve(const PBModel& model, const SolveOptions& options = {});

} // namespace mps
