#include "mps/formulation.hpp"

#include <string>

#include "mps/errors.hpp"

namespace mps {

void add_selection_vars(PBModel& model, const WeightedGraph& g) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const WeightedEdge& we = g.edge(e);
        model.add_var("s_" + std::to_string(we.u) + "_" + std::to_string(we.v), we.w);
    }
}

EdgeSelection selection_from_assignment(const WeightedGraph& g, const Assignment& a) {
    if (a.size() < static_cast<size_t>(g.edge_count()))
        throw LengthMismatch("assignment shorter than the selection-variable block");
    EdgeSelection sel(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        sel.set(e, a[static_cast<size_t>(e)] != 0);
    return sel;
}

} // namespace mps
