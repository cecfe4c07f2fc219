#include "mps/form_kuratowski.hpp"

#include "mps/formulation.hpp"
#include <algorithm>

#include "mps/kuratowski.hpp"
#include "mps/planarity.hpp"

namespace mps {

namespace {

void validate(const KuratowskiConfig& cfg) {
    if (cfg.max_constraints_per_round < 1 ||
        cfg.max_constraints_per_round > cfg.max_extractions_per_round)
        throw Error("require 1 <= max_constraints_per_round <= max_extractions_per_round");
}

} // namespace

PBModel build_kuratowski_model(const WeightedGraph& g, const KuratowskiConfig& cfg) {
    validate(cfg);
    PBModel m;
    add_selection_vars(m, g);
    if (g.node_count() >= 3) {
        LinConstraint euler;
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            euler.terms.push_back({1, e});
        euler.cmp = Cmp::LessEq;
        euler.rhs = euler_cap(g);
        m.add_constraint(std::move(euler));
    }
    m.set_lazy_separator(
        [g, cfg](const Assignment& a) { return separate_kuratowski(g, a, cfg); }, {"kuratowski"});
    return m;
}

std::vector<LinConstraint> separate_kuratowski(const WeightedGraph& g, const Assignment& assignment,
                                               const KuratowskiConfig& cfg) {
    validate(cfg);
    const EdgeSelection sel = selection_from_assignment(g, assignment);
    if (test_planarity(g, sel).planar)
        return {};
    std::vector<KuratowskiSubdivision> subs =
        extract_kuratowskis(g, sel, cfg.max_extractions_per_round);
    if (cfg.keep_most_violated) {
        // At integral points every subdivision constraint is violated by
        // exactly 1, so rank by support size, then lexicographic edge ids.
        std::stable_sort(subs.begin(), subs.end(),
                         [](const KuratowskiSubdivision& a, const KuratowskiSubdivision& b) {
                             if (a.edges.size() != b.edges.size())
                                 return a.edges.size() < b.edges.size();
                             return a.edges < b.edges;
                         });
    }
    if (static_cast<int>(subs.size()) > cfg.max_constraints_per_round)
        subs.resize(static_cast<size_t>(cfg.max_constraints_per_round));
    std::vector<LinConstraint> cuts;
    cuts.reserve(subs.size());
    for (const KuratowskiSubdivision& k : subs) {
        LinConstraint c;
        for (EdgeId e : k.edges)
            c.terms.push_back({1, e});
        c.cmp = Cmp::LessEq;
        c.rhs = static_cast<std::int64_t>(k.edges.size()) - 1;
        cuts.push_back(std::move(c));
    }
    return cuts;
}

} // namespace mps
