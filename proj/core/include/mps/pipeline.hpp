#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "mps/form_facialwalks.hpp"
#include "mps/form_kuratowski.hpp"
#include "mps/form_leftright.hpp"
#include "mps/form_schnyder.hpp"
#include "mps/graph.hpp"
#include "mps/pb_solver.hpp"

namespace mps {

/// The four interchangeable 0-1 encodings of "the selection is planar".
enum class Formulation { Kuratowski, FacialWalks, Schnyder, LeftRight };

inline constexpr Formulation all_formulations[] = {
    Formulation::Kuratowski,
    Formulation::FacialWalks,
    Formulation::Schnyder,
    Formulation::LeftRight,
};

/// "kuratowski", "facialwalks", "schnyder" or "leftright".
const char* formulation_name(Formulation f);

/// Inverse of formulation_name; nullopt for unknown names.
std::optional<Formulation> parse_formulation(std::string_view name);

struct PipelineConfig {
    Formulation formulation = Formulation::Kuratowski;
    /// Whole-instance budget, consumed sequentially by the core solves.
    SolveLimits limits;
    /// Seed each core solve with the planar heuristic's selection. The
    /// Schnyder model has no warm-start encoding and always starts cold.
    bool warm_start = true;
    std::uint64_t heuristic_seed = 0;
    KuratowskiConfig kuratowski;
    FacialWalkConfig facialwalks;
    SchnyderConfig schnyder;
    LeftRightConfig leftright;
};

struct PipelineResult {
    /// Optimal iff every core solved to optimality; otherwise the first
    /// limit that was hit.
    SolveStatus status = SolveStatus::Optimal;
    /// Weight of `selection`: the reduction's secured weight plus the best
    /// planar selection found on each core.
    std::int64_t objective = 0;
    /// Valid upper bound on the maximum planar subgraph weight; equals
    /// `objective` iff status is Optimal.
    std::int64_t dual_bound = 0;
    /// Planar selection on the original graph, lifted from the cores.
    EdgeSelection selection;
    /// Sums over all core solves (reduction and heuristic time excluded).
    SolveStats stats;
    int core_count = 0;
    /// False if any attempted warm start was rejected by the solver.
    bool warm_starts_accepted = true;
};

/// End-to-end maximum planar subgraph solve: reduce to biconnected
/// non-planar cores, compute a heuristic planar selection per core for the
/// warm start and as an incumbent floor, build the configured model, solve
/// under the remaining time/node budget, and lift the per-core selections
/// back to the original graph (which re-verifies their planarity). Cores the
/// budget never reaches keep their heuristic selection and contribute their
/// full weight to the dual bound.
PipelineResult solve_mps(const WeightedGraph& g, const PipelineConfig& cfg = {});

} // namespace mps
