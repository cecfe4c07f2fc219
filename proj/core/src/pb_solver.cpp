#include "mps/pb_solver.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

namespace mps {

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::MemoryLimit: return "memory_limit";
    case SolveStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

constexpr std::int64_t kMinusInf = std::numeric_limits<std::int64_t>::min();

/// Incrementally maintained activity bounds of one constraint: the minimum
/// achievable lhs is sum_fixed + neg_free, the maximum sum_fixed + pos_free.
struct ConsState {
    std::int64_t sum_fixed = 0;
    std::int64_t pos_free = 0;
    std::int64_t neg_free = 0;
    std::int64_t max_abs = 0;
};

struct Occurrence {
    int cons;
    std::int64_t coeff;
};

class Search {
public:
    Search(const PBModel& model, const SolveOptions& opt)
        : model_(model), opt_(opt), nvars_(model.var_count()) {
        cons_ = model.constraints();
        fixed_.assign(static_cast<size_t>(nvars_), 0);
        value_.assign(static_cast<size_t>(nvars_), 0);
        occ_.resize(static_cast<size_t>(nvars_));
        state_.reserve(cons_.size());
        for (size_t ci = 0; ci < cons_.size(); ++ci)
            state_.push_back(initial_state(cons_[ci], static_cast<int>(ci)));
        in_queue_.assign(cons_.size(), 0);
        for (VarId v = 0; v < nvars_; ++v)
            if (model.objective_coeff(v) > 0)
                obj_pos_free_ += model.objective_coeff(v);
        branch_order_.resize(static_cast<size_t>(nvars_));
        for (VarId v = 0; v < nvars_; ++v)
            branch_order_[static_cast<size_t>(v)] = v;
        std::stable_sort(branch_order_.begin(), branch_order_.end(), [&](VarId a, VarId b) {
            return model.objective_coeff(a) > model.objective_coeff(b);
        });
        estimated_bytes_ = 1024 + static_cast<std::int64_t>(nvars_) * 64;
        for (const LinConstraint& c : cons_)
            estimated_bytes_ += constraint_bytes(c);
    }

    SolveResult run() {
        start_ = std::chrono::steady_clock::now();
        cutoff_ = opt_.lower_bound;
        for (size_t ci = 0; ci < cons_.size(); ++ci)
            enqueue(static_cast<int>(ci));
        const bool root_feasible = propagate();
        root_ub_ = obj_fixed_ + obj_pos_free_;
        try_warm_start();
        if (has_best_)
            report_progress();
        if (root_feasible)
            dfs();

        SolveResult result;
        result.stats = stats_;
        result.stats.wall_time_sec = elapsed();
        result.warm_start_accepted = warm_accepted_;
        if (has_best_) {
            result.incumbent = best_assignment_;
            result.objective_value = best_value_;
            // The incumbent was approved by the separator when recorded; make
            // sure no later lazy constraint contradicts it.
            for (const LinConstraint& c : cons_)
                if (!satisfies(c, best_assignment_))
                    throw SeparatorContractViolation(
                        "lazily added constraint cuts off an accepted incumbent");
        }
        if (stop_) {
            result.status = *stop_;
            result.dual_bound = root_ub_;
        } else if (has_best_) {
            result.status = SolveStatus::Optimal;
            result.dual_bound = cutoff_; // == best_value_ unless lower_bound exceeded it
        } else if (opt_.lower_bound != kMinusInf) {
            // Complete search, nothing beats the caller's external solution:
            // that solution is optimal.
            result.status = SolveStatus::Optimal;
            result.dual_bound = opt_.lower_bound;
        } else {
            result.status = SolveStatus::Infeasible;
            result.dual_bound = kMinusInf;
        }
        return result;
    }

private:
    static std::int64_t constraint_bytes(const LinConstraint& c) {
        return static_cast<std::int64_t>(c.terms.size()) *
                   static_cast<std::int64_t>(sizeof(LinTerm) + sizeof(Occurrence)) +
               128;
    }

    ConsState initial_state(const LinConstraint& c, int ci) {
        ConsState st;
        for (const LinTerm& t : c.terms) {
            occ_[static_cast<size_t>(t.var)].push_back({ci, t.coeff});
            if (fixed_[static_cast<size_t>(t.var)]) {
                if (value_[static_cast<size_t>(t.var)])
                    st.sum_fixed += t.coeff;
            } else if (t.coeff > 0) {
                st.pos_free += t.coeff;
            } else {
                st.neg_free += t.coeff;
            }
            st.max_abs = std::max(st.max_abs, t.coeff >= 0 ? t.coeff : -t.coeff);
        }
        return st;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void report_progress() {
        if (!opt_.on_progress)
            return;
        SolveProgress p;
        p.bnb_nodes = stats_.bnb_nodes;
        p.best_objective = has_best_ ? best_value_ : kMinusInf;
        p.dual_bound = root_ub_;
        p.wall_time_sec = elapsed();
        opt_.on_progress(p);
    }

    void try_warm_start() {
        if (!opt_.warm_start)
            return;
        const Assignment& w = *opt_.warm_start;
        if (static_cast<int>(w.size()) != nvars_)
            return;
        for (std::uint8_t b : w)
            if (b > 1)
                return;
        for (const LinConstraint& c : cons_)
            if (!satisfies(c, w))
                return;
        if (model_.lazy_separator()) {
            ++stats_.separator_calls;
            std::vector<LinConstraint> cuts = model_.lazy_separator()(w);
            for (const LinConstraint& c : cuts)
                if (satisfies(c, w))
                    throw SeparatorContractViolation(
                        "separator returned a constraint the assignment satisfies");
            if (!cuts.empty())
                return; // warm start violates a lazy family; skipped
        }
        has_best_ = true;
        warm_accepted_ = true;
        best_assignment_ = w;
        best_value_ = model_.objective_value(w);
        cutoff_ = std::max(cutoff_, best_value_);
    }

    void enqueue(int ci) {
        if (!in_queue_[static_cast<size_t>(ci)]) {
            in_queue_[static_cast<size_t>(ci)] = 1;
            queue_.push_back(ci);
        }
    }

    void clear_queue() {
        for (int ci : queue_)
            in_queue_[static_cast<size_t>(ci)] = 0;
        queue_.clear();
    }

    /// Fixes v to val, updating constraint states. Returns false when v is
    /// already fixed to the opposite value.
    bool fix(VarId v, bool val) {
        const size_t sv = static_cast<size_t>(v);
        if (fixed_[sv])
            return value_[sv] == static_cast<std::uint8_t>(val);
        fixed_[sv] = 1;
        value_[sv] = val ? 1 : 0;
        trail_.push_back(v);
        ++num_fixed_;
        const std::int64_t oc = model_.objective_coeff(v);
        if (oc > 0)
            obj_pos_free_ -= oc;
        if (val)
            obj_fixed_ += oc;
        for (const Occurrence& o : occ_[sv]) {
            ConsState& st = state_[static_cast<size_t>(o.cons)];
            if (val)
                st.sum_fixed += o.coeff;
            if (o.coeff > 0)
                st.pos_free -= o.coeff;
            else
                st.neg_free -= o.coeff;
            enqueue(o.cons);
        }
        return true;
    }

    void unfix_to(size_t mark) {
        while (trail_.size() > mark) {
            const VarId v = trail_.back();
            trail_.pop_back();
            const size_t sv = static_cast<size_t>(v);
            const bool val = value_[sv] != 0;
            for (const Occurrence& o : occ_[sv]) {
                ConsState& st = state_[static_cast<size_t>(o.cons)];
                if (val)
                    st.sum_fixed -= o.coeff;
                if (o.coeff > 0)
                    st.pos_free += o.coeff;
                else
                    st.neg_free += o.coeff;
            }
            const std::int64_t oc = model_.objective_coeff(v);
            if (oc > 0)
                obj_pos_free_ += oc;
            if (val)
                obj_fixed_ -= oc;
            fixed_[sv] = 0;
            --num_fixed_;
        }
        clear_queue();
    }

    /// Processes the dirty-constraint queue to a fixpoint: detects violated
    /// activity bounds and fixes variables forced by a single constraint.
    /// Returns false on conflict (queue is left empty either way).
    bool propagate() {
        while (!queue_.empty()) {
            const int ci = queue_.back();
            queue_.pop_back();
            in_queue_[static_cast<size_t>(ci)] = 0;
            const LinConstraint& c = cons_[static_cast<size_t>(ci)];
            const ConsState& st = state_[static_cast<size_t>(ci)];
            const bool need_le = c.cmp != Cmp::GreaterEq;
            const bool need_ge = c.cmp != Cmp::LessEq;
            std::int64_t min_act = st.sum_fixed + st.neg_free;
            std::int64_t max_act = st.sum_fixed + st.pos_free;
            if ((need_le && min_act > c.rhs) || (need_ge && max_act < c.rhs)) {
                clear_queue();
                return false;
            }
            const bool scan_le = need_le && min_act + st.max_abs > c.rhs;
            const bool scan_ge = need_ge && max_act - st.max_abs < c.rhs;
            if (!scan_le && !scan_ge)
                continue;
            for (const LinTerm& t : c.terms) {
                if (fixed_[static_cast<size_t>(t.var)])
                    continue;
                bool forced = false;
                bool forced_value = false;
                if (need_le && t.coeff > 0 && min_act + t.coeff > c.rhs) {
                    forced = true;
                    forced_value = false;
                } else if (need_le && t.coeff < 0 && min_act - t.coeff > c.rhs) {
                    forced = true;
                    forced_value = true;
                } else if (need_ge && t.coeff > 0 && max_act - t.coeff < c.rhs) {
                    forced = true;
                    forced_value = true;
                } else if (need_ge && t.coeff < 0 && max_act + t.coeff < c.rhs) {
                    forced = true;
                    forced_value = false;
                }
                if (!forced)
                    continue;
                if (!fix(t.var, forced_value)) {
                    clear_queue();
                    return false;
                }
                min_act = st.sum_fixed + st.neg_free;
                max_act = st.sum_fixed + st.pos_free;
                if ((need_le && min_act > c.rhs) || (need_ge && max_act < c.rhs)) {
                    clear_queue();
                    return false;
                }
            }
        }
        return true;
    }

    bool limits_hit() {
        if (stats_.bnb_nodes >= opt_.limits.nodes) {
            stop_ = SolveStatus::NodeLimit;
            return true;
        }
        if (elapsed() > opt_.limits.time_sec) {
            stop_ = SolveStatus::TimeLimit;
            return true;
        }
        if (estimated_bytes_ > opt_.limits.memory_bytes) {
            stop_ = SolveStatus::MemoryLimit;
            return true;
        }
        return false;
    }

    BranchPlan default_branch() const {
        for (VarId v : branch_order_) {
            if (!fixed_[static_cast<size_t>(v)])
                return BranchPlan{{{v, true}}, {{v, false}}};
        }
        // Unreachable: callers only branch while a free variable exists.
        throw Error("branch requested with no free variable");
    }

    BranchPlan choose_branch() {
        if (opt_.rule.custom) {
            NodeBounds bounds(fixed_, value_);
            if (std::optional<BranchPlan> plan = opt_.rule.custom(bounds)) {
                // Each child must fix a currently-free variable, otherwise the
                // rule could loop forever on an unchanged node.
                for (const std::vector<BranchDecision>* child : {&plan->first, &plan->second}) {
                    bool progress = false;
                    for (const BranchDecision& d : *child) {
                        if (d.var < 0 || d.var >= nvars_)
                            throw Error("branch rule returned an unknown variable id");
                        progress = progress || !fixed_[static_cast<size_t>(d.var)];
                    }
                    if (!progress)
                        throw Error("branch rule fixed no free variable");
                }
                return *std::move(plan);
            }
        }
        return default_branch();
    }

    /// Full integral assignment: run the separator, then possibly record a new
    /// incumbent. The leaf is cut off when the separator produced constraints.
    void handle_leaf() {
        if (model_.lazy_separator()) {
            ++stats_.separator_calls;
            std::vector<LinConstraint> cuts = model_.lazy_separator()(value_);
            if (!cuts.empty()) {
                for (LinConstraint& c : cuts) {
                    if (satisfies(c, value_))
                        throw SeparatorContractViolation(
                            "separator returned a constraint the assignment satisfies");
                    install_constraint(std::move(c));
                }
                return;
            }
        }
        const std::int64_t val = obj_fixed_;
        if (!has_best_ || val > best_value_) {
            has_best_ = true;
            best_value_ = val;
            best_assignment_ = value_;
            cutoff_ = std::max(cutoff_, val);
            report_progress();
        }
    }

    void install_constraint(LinConstraint c) {
        const int ci = static_cast<int>(cons_.size());
        estimated_bytes_ += constraint_bytes(c);
        cons_.push_back(std::move(c));
        state_.push_back(initial_state(cons_.back(), ci));
        in_queue_.push_back(0);
        ++stats_.lazy_constraints_added;
    }

    /// Depth-first search below the current partial assignment. Returns false
    /// when a stop limit fired (the tree is then incompletely explored).
    bool dfs() {
        if (limits_hit())
            return false;
        ++stats_.bnb_nodes;
        if ((stats_.bnb_nodes & 1023) == 0)
            report_progress();
        if (obj_fixed_ + obj_pos_free_ <= cutoff_)
            return true; // cannot beat the incumbent / the caller's bound
        if (num_fixed_ == nvars_) {
            handle_leaf();
            return true;
        }

        const BranchPlan plan = choose_branch();
        for (const std::vector<BranchDecision>* child : {&plan.first, &plan.second}) {
            const size_t mark = trail_.size();
            const size_t ncons_before = cons_.size();
            bool ok = true;
            // A decision may have become a no-op through cuts learned under an
            // earlier sibling; a contradiction simply prunes this child.
            for (const BranchDecision& d : *child) {
                if (!fix(d.var, d.value)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                ok = propagate();
            if (ok && !dfs()) {
                unfix_to(mark);
                return false;
            }
            unfix_to(mark);
            if (cons_.size() > ncons_before) {
                // Cuts learned below: re-check them against this node's partial
                // assignment so they prune the remaining sibling (and, via the
                // callers' identical check, the rest of the path).
                for (size_t ci = ncons_before; ci < cons_.size(); ++ci)
                    enqueue(static_cast<int>(ci));
                if (!propagate())
                    return true; // node is cut off by the learned constraints
            }
        }
        return true;
    }

    const PBModel& model_;
    const SolveOptions& opt_;
    const int nvars_;

    std::vector<LinConstraint> cons_; ///< explicit constraints plus lazy cuts
    std::vector<ConsState> state_;
    std::vector<std::vector<Occurrence>> occ_;
    std::vector<std::uint8_t> fixed_;
    Assignment value_;
    std::vector<VarId> trail_;
    std::vector<int> queue_;
    std::vector<std::uint8_t> in_queue_;
    int num_fixed_ = 0;

    std::int64_t obj_fixed_ = 0;
    std::int64_t obj_pos_free_ = 0;
    std::vector<VarId> branch_order_;

    bool has_best_ = false;
    bool warm_accepted_ = false;
    Assignment best_assignment_;
    std::int64_t best_value_ = kMinusInf;
    std::int64_t cutoff_ = kMinusInf; ///< max(best_value_, options.lower_bound)
    std::int64_t root_ub_ = kMinusInf;

    std::optional<SolveStatus> stop_;
    std::int64_t estimated_bytes_ = 0;
    SolveStats stats_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace

SolveResult solve(const PBModel& model, const SolveOptions& options) {
    Search search(model, options);
    return search.run();
}

} // namespace mps
