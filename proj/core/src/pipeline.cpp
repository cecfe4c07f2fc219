#include "mps/pipeline.hpp"

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "mps/errors.hpp"
#include "mps/formulation.hpp"
#include "mps/heuristics.hpp"
#include "mps/preprocess.hpp"

namespace mps {

const char* formulation_name(Formulation f) {
    switch (f) {
    case Formulation::Kuratowski:
        return "kuratowski";
    case Formulation::FacialWalks:
        return "facialwalks";
    case Formulation::Schnyder:
        return "schnyder";
    case Formulation::LeftRight:
        return "leftright";
    }
    return "unknown";
}

std::optional<Formulation> parse_formulation(std::string_view name) {
    for (const Formulation f : all_formulations)
        if (name == formulation_name(f))
            return f;
    return std::nullopt;
}

namespace {

PBModel build_model(const WeightedGraph& g, const PipelineConfig& cfg) {
    switch (cfg.formulation) {
    case Formulation::Kuratowski:
        return build_kuratowski_model(g, cfg.kuratowski);
    case Formulation::FacialWalks:
        return build_facialwalk_model(g, cfg.facialwalks);
    case Formulation::Schnyder:
        return build_schnyder_model(g, cfg.schnyder);
    case Formulation::LeftRight:
        return build_leftright_model(g, cfg.leftright);
    }
    throw Error("unknown formulation");
}

/// Planar selections have at most 3n - 6 edges, so the cardinality row
/// sum(s_e) <= 3n - 6 is valid for every formulation. The subdivision-based
/// model carries it natively; for the others it is added here, solve-side,
/// where it lets propagation refute dense selections without ever touching
/// the auxiliary variables. Skipped when it cannot bind (m <= 3n - 6).
void add_selection_cap(PBModel& model, const WeightedGraph& g, Formulation f) {
    if (f == Formulation::Kuratowski)
        return;
    const std::int64_t cap = 3 * static_cast<std::int64_t>(g.node_count()) - 6;
    if (g.node_count() < 3 || g.edge_count() <= cap)
        return;
    LinConstraint row;
    row.cmp = Cmp::LessEq;
    row.rhs = cap;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        row.terms.push_back({1, e});
    model.add_constraint(std::move(row));
}

std::optional<Assignment> make_warm_start(const WeightedGraph& g, const EdgeSelection& sel,
                                          const PipelineConfig& cfg) {
    switch (cfg.formulation) {
    case Formulation::Kuratowski: {
        // the model has only the selection block, so the bits are the point
        Assignment a(static_cast<size_t>(g.edge_count()), 0);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            a[static_cast<size_t>(e)] = sel.contains(e) ? 1 : 0;
        return a;
    }
    case Formulation::FacialWalks:
        return facialwalk_warm_start(g, sel, cfg.facialwalks);
    case Formulation::Schnyder:
        return std::nullopt;
    case Formulation::LeftRight:
        return leftright_warm_start(g, sel);
    }
    return std::nullopt;
}

} // namespace

PipelineResult solve_mps(const WeightedGraph& g, const PipelineConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto elapsed_sec = [&start] {
        return std::chrono::duration<double>(clock::now() - start).count();
    };

    const NpcReduction red = reduce(g);
    PipelineResult out;
    out.core_count = static_cast<int>(red.cores.size());
    out.objective = red.secured_weight;
    out.dual_bound = red.secured_weight;

    std::vector<EdgeSelection> core_selections;
    core_selections.reserve(red.cores.size());
    std::int64_t nodes_left = cfg.limits.nodes;

    for (const CoreLift& core : red.cores) {
        const EdgeSelection heuristic = cactus_heuristic(core.core, cfg.heuristic_seed);
        const std::int64_t heuristic_weight = selection_weight(core.core, heuristic);

        const double time_left = cfg.limits.time_sec - elapsed_sec();
        if (time_left <= 0.0 || nodes_left <= 0) {
            if (out.status == SolveStatus::Optimal)
                out.status =
                    time_left <= 0.0 ? SolveStatus::TimeLimit : SolveStatus::NodeLimit;
            core_selections.push_back(heuristic);
            out.objective += heuristic_weight;
            out.dual_bound += core.core.total_weight();
            continue;
        }

        PBModel model = build_model(core.core, cfg);
        add_selection_cap(model, core.core, cfg.formulation);
        SolveOptions opts;
        opts.limits = cfg.limits;
        opts.limits.time_sec = time_left;
        opts.limits.nodes = nodes_left;
        if (cfg.warm_start)
            opts.warm_start = make_warm_start(core.core, heuristic, cfg);
        if (!opts.warm_start)
            // Cold solves still know the heuristic's value: pruning below it
            // costs nothing because the heuristic selection is kept as the
            // floor either way.
            opts.lower_bound = heuristic_weight;
        if (cfg.formulation == Formulation::LeftRight && cfg.leftright.dfs_branching)
            opts.rule = dfs_branch_rule(core.core);

        const SolveResult r = solve(model, opts);
        nodes_left -= r.stats.bnb_nodes;
        out.stats.bnb_nodes += r.stats.bnb_nodes;
        out.stats.lazy_constraints_added += r.stats.lazy_constraints_added;
        out.stats.separator_calls += r.stats.separator_calls;
        out.stats.wall_time_sec += r.stats.wall_time_sec;
        if (opts.warm_start.has_value() && !r.warm_start_accepted)
            out.warm_starts_accepted = false;
        if (r.status == SolveStatus::Infeasible)
            throw Error(std::string("core model for ") + formulation_name(cfg.formulation) +
                        " came back infeasible; every core admits a planar selection");
        if (r.status != SolveStatus::Optimal && out.status == SolveStatus::Optimal)
            out.status = r.status;

        EdgeSelection sel;
        std::int64_t value;
        if (!r.incumbent.empty()) {
            sel = selection_from_assignment(core.core, r.incumbent);
            value = r.objective_value;
        } else {
            sel = heuristic;
            value = heuristic_weight;
        }
        if (value < heuristic_weight) { // cold or rejected starts keep the floor
            sel = heuristic;
            value = heuristic_weight;
        }
        core_selections.push_back(std::move(sel));
        out.objective += value;
        out.dual_bound += r.status == SolveStatus::Optimal ? value : r.dual_bound;
    }

    out.selection = lift(g, red, core_selections);
    return out;
}

} // namespace mps
