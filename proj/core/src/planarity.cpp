#include "mps/planarity.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mps {
namespace {

constexpr int kNone = -1;

/// State of the left-right planarity test for one graph + selection.
///
/// Follows the structure of the standard presentation of the algorithm:
/// an orientation DFS computing lowpoints and nesting depths, a testing DFS
/// maintaining a stack of conflict pairs of back-edge intervals, and an
/// embedding DFS that turns the computed edge sides into rotation lists.
class LeftRightTester {
public:
    LeftRightTester(const WeightedGraph& g, const EdgeSelection& sel) : g_(g), sel_(sel) {
        const size_t n = static_cast<size_t>(g.node_count());
        const size_t a2 = static_cast<size_t>(g.arc_count());
        height_.assign(n, kNone);
        parent_arc_.assign(n, kNone);
        lowpt_.assign(a2, 0);
        lowpt2_.assign(a2, 0);
        nesting_depth_.assign(a2, 0);
        oriented_.assign(static_cast<size_t>(g.edge_count()), 0);
        ref_.assign(a2, kNone);
        side_.assign(a2, 1);
        lowpt_arc_.assign(a2, kNone);
        stack_bottom_.assign(a2, 0);
        out_arcs_.assign(n, {});
    }

    bool run() {
        const int n = g_.node_count();
        // Orientation phase, one DFS per component.
        for (NodeId v = 0; v < n; ++v) {
            if (height_[static_cast<size_t>(v)] != kNone) continue;
            if (!has_selected_edge(v)) {
                height_[static_cast<size_t>(v)] = 0;
                roots_.push_back(v);
                continue;
            }
            height_[static_cast<size_t>(v)] = 0;
            roots_.push_back(v);
            dfs_orient(v);
        }
        // Heuristic cutoff: a planar graph has at most 3n - 6 edges.
        if (n >= 3) {
            int m_sel = 0;
            for (EdgeId e = 0; e < g_.edge_count(); ++e)
                if (sel_.contains(e)) ++m_sel;
            if (m_sel > 3 * n - 6) return false;
        }
        // Testing phase with adjacency ordered by nesting depth.
        for (NodeId v = 0; v < n; ++v) {
            auto& arcs = out_arcs_[static_cast<size_t>(v)];
            std::stable_sort(arcs.begin(), arcs.end(), [&](ArcId a, ArcId b) {
                return nesting_depth_[static_cast<size_t>(a)] < nesting_depth_[static_cast<size_t>(b)];
            });
        }
        for (NodeId r : roots_)
            if (!dfs_test(r)) return false;
        return true;
    }

    CombinatorialEmbedding build_embedding() {
        const int n = g_.node_count();
        // Fold the computed sides into signed nesting depths and re-sort.
        for (NodeId v = 0; v < n; ++v)
            for (ArcId a : out_arcs_[static_cast<size_t>(v)])
                nesting_depth_[static_cast<size_t>(a)] *= resolve_sign(a);
        for (NodeId v = 0; v < n; ++v) {
            auto& arcs = out_arcs_[static_cast<size_t>(v)];
            std::stable_sort(arcs.begin(), arcs.end(), [&](ArcId a, ArcId b) {
                return nesting_depth_[static_cast<size_t>(a)] < nesting_depth_[static_cast<size_t>(b)];
            });
        }
        // Rotation lists as doubly linked cycles over arcs (keyed by the arc
        // whose tail is the rotation's node).
        const size_t a2 = static_cast<size_t>(g_.arc_count());
        next_.assign(a2, kNone);
        prev_.assign(a2, kNone);
        first_.assign(static_cast<size_t>(n), kNone);
        for (NodeId v = 0; v < n; ++v) {
            ArcId previous = kNone;
            for (ArcId a : out_arcs_[static_cast<size_t>(v)]) {
                if (previous == kNone)
                    init_rotation(v, a);
                else
                    insert_after(previous, a);
                previous = a;
            }
        }
        left_ref_.assign(static_cast<size_t>(n), kNone);
        right_ref_.assign(static_cast<size_t>(n), kNone);
        for (NodeId r : roots_) dfs_embed(r);

        CombinatorialEmbedding emb;
        emb.rotation.assign(static_cast<size_t>(n), {});
        for (NodeId v = 0; v < n; ++v) {
            ArcId start = first_[static_cast<size_t>(v)];
            if (start == kNone) continue;
            ArcId a = start;
            do {
                emb.rotation[static_cast<size_t>(v)].push_back(a);
                a = next_[static_cast<size_t>(a)];
            } while (a != start);
        }
        return emb;
    }

private:
    struct Interval {
        ArcId low = kNone;
        ArcId high = kNone;
        bool empty() const { return low == kNone && high == kNone; }
    };
    struct ConflictPair {
        Interval left, right;
    };

    bool has_selected_edge(NodeId v) const {
        for (EdgeId e : g_.incident_edges(v))
            if (sel_.contains(e)) return true;
        return false;
    }

    void dfs_orient(NodeId v) {
        const ArcId e = parent_arc_[static_cast<size_t>(v)];
        const auto nbs = g_.neighbors(v);
        const auto eids = g_.incident_edges(v);
        for (size_t i = 0; i < nbs.size(); ++i) {
            const EdgeId eid = eids[i];
            if (!sel_.contains(eid) || oriented_[static_cast<size_t>(eid)]) continue;
            oriented_[static_cast<size_t>(eid)] = 1;
            const NodeId w = nbs[i];
            const ArcId a = g_.arc_from(eid, v);
            out_arcs_[static_cast<size_t>(v)].push_back(a);
            lowpt_[static_cast<size_t>(a)] = height_[static_cast<size_t>(v)];
            lowpt2_[static_cast<size_t>(a)] = height_[static_cast<size_t>(v)];
            if (height_[static_cast<size_t>(w)] == kNone) { // tree arc
                parent_arc_[static_cast<size_t>(w)] = a;
                height_[static_cast<size_t>(w)] = height_[static_cast<size_t>(v)] + 1;
                dfs_orient(w);
            } else { // back arc
                lowpt_[static_cast<size_t>(a)] = height_[static_cast<size_t>(w)];
            }
            nesting_depth_[static_cast<size_t>(a)] = 2 * lowpt_[static_cast<size_t>(a)];
            if (lowpt2_[static_cast<size_t>(a)] < height_[static_cast<size_t>(v)])
                ++nesting_depth_[static_cast<size_t>(a)]; // chordal adjustment
            if (e != kNone) {
                const size_t ei = static_cast<size_t>(e), ai = static_cast<size_t>(a);
                if (lowpt_[ai] < lowpt_[ei]) {
                    lowpt2_[ei] = std::min(lowpt_[ei], lowpt2_[ai]);
                    lowpt_[ei] = lowpt_[ai];
                } else if (lowpt_[ai] > lowpt_[ei]) {
                    lowpt2_[ei] = std::min(lowpt2_[ei], lowpt_[ai]);
                } else {
                    lowpt2_[ei] = std::min(lowpt2_[ei], lowpt2_[ai]);
                }
            }
        }
    }

    bool dfs_test(NodeId v) {
        const ArcId e = parent_arc_[static_cast<size_t>(v)];
        const auto& arcs = out_arcs_[static_cast<size_t>(v)];
        for (ArcId a : arcs) {
            stack_bottom_[static_cast<size_t>(a)] = stack_.size();
            const NodeId w = g_.arc_head(a);
            if (a == parent_arc_[static_cast<size_t>(w)]) { // tree arc
                if (!dfs_test(w)) return false;
            } else { // back arc
                lowpt_arc_[static_cast<size_t>(a)] = a;
                ConflictPair p;
                p.right = {a, a};
                stack_.push_back(p);
            }
            if (lowpt_[static_cast<size_t>(a)] < height_[static_cast<size_t>(v)]) { // a has a return edge
                if (a == arcs.front()) {
                    lowpt_arc_[static_cast<size_t>(e)] = lowpt_arc_[static_cast<size_t>(a)];
                } else if (!add_constraints(a, e)) {
                    return false;
                }
            }
        }
        if (e != kNone) {
            const NodeId u = g_.arc_tail(e);
            trim_back_edges(u);
            if (lowpt_[static_cast<size_t>(e)] < height_[static_cast<size_t>(u)]) { // e has a return edge
                const ArcId hl = stack_.back().left.high;
                const ArcId hr = stack_.back().right.high;
                if (hl != kNone && (hr == kNone || lowpt_[static_cast<size_t>(hl)] > lowpt_[static_cast<size_t>(hr)]))
                    ref_[static_cast<size_t>(e)] = hl;
                else
                    ref_[static_cast<size_t>(e)] = hr;
            }
        }
        return true;
    }

    bool interval_conflicting(const Interval& i, ArcId b) const {
        return i.high != kNone && lowpt_[static_cast<size_t>(i.high)] > lowpt_[static_cast<size_t>(b)];
    }
    void set_ref(ArcId key, ArcId value) {
        if (key != kNone) ref_[static_cast<size_t>(key)] = value;
    }

    bool add_constraints(ArcId a, ArcId e) {
        ConflictPair p;
        // Merge the return edges of a into p.right.
        while (true) {
            ConflictPair q = stack_.back();
            stack_.pop_back();
            if (!q.left.empty()) std::swap(q.left, q.right);
            if (!q.left.empty()) return false; // not planar
            if (q.right.low != kNone &&
                lowpt_[static_cast<size_t>(q.right.low)] > lowpt_[static_cast<size_t>(e)]) {
                if (p.right.empty())
                    p.right.high = q.right.high;
                else
                    set_ref(p.right.low, q.right.high);
                p.right.low = q.right.low;
            } else { // align
                set_ref(q.right.low, lowpt_arc_[static_cast<size_t>(e)]);
            }
            if (stack_.size() == stack_bottom_[static_cast<size_t>(a)]) break;
        }
        // Merge conflicting return edges of earlier siblings into p.left.
        while (!stack_.empty() &&
               (interval_conflicting(stack_.back().left, a) || interval_conflicting(stack_.back().right, a))) {
            ConflictPair q = stack_.back();
            stack_.pop_back();
            if (interval_conflicting(q.right, a)) std::swap(q.left, q.right);
            if (interval_conflicting(q.right, a)) return false; // not planar
            // Merge the part of q.right below lowpt(a) into p.right.
            set_ref(p.right.low, q.right.high);
            if (q.right.low != kNone) p.right.low = q.right.low;
            if (p.left.empty())
                p.left.high = q.left.high;
            else
                set_ref(p.left.low, q.left.high);
            p.left.low = q.left.low;
        }
        if (!(p.left.empty() && p.right.empty())) stack_.push_back(p);
        return true;
    }

    int pair_lowest(const ConflictPair& p) const {
        const int l = p.left.low == kNone ? std::numeric_limits<int>::max()
                                          : lowpt_[static_cast<size_t>(p.left.low)];
        const int r = p.right.low == kNone ? std::numeric_limits<int>::max()
                                           : lowpt_[static_cast<size_t>(p.right.low)];
        return std::min(l, r);
    }

    void trim_back_edges(NodeId u) {
        // Drop entire conflict pairs that return no higher than u.
        while (!stack_.empty() && pair_lowest(stack_.back()) == height_[static_cast<size_t>(u)]) {
            ConflictPair p = stack_.back();
            stack_.pop_back();
            if (p.left.low != kNone) side_[static_cast<size_t>(p.left.low)] = -1;
        }
        if (stack_.empty()) return;
        // Trim the topmost remaining pair on both sides.
        ConflictPair p = stack_.back();
        stack_.pop_back();
        while (p.left.high != kNone && g_.arc_head(p.left.high) == u)
            p.left.high = ref_[static_cast<size_t>(p.left.high)];
        if (p.left.high == kNone && p.left.low != kNone) { // just emptied
            set_ref(p.left.low, p.right.low);
            side_[static_cast<size_t>(p.left.low)] = -1;
            p.left.low = kNone;
        }
        while (p.right.high != kNone && g_.arc_head(p.right.high) == u)
            p.right.high = ref_[static_cast<size_t>(p.right.high)];
        if (p.right.high == kNone && p.right.low != kNone) {
            set_ref(p.right.low, p.left.low);
            side_[static_cast<size_t>(p.right.low)] = -1;
            p.right.low = kNone;
        }
        stack_.push_back(p);
    }

    int resolve_sign(ArcId a) {
        // Iteratively collapse the ref chain so each arc's side is absolute.
        std::vector<ArcId> chain;
        ArcId cur = a;
        while (cur != kNone && ref_[static_cast<size_t>(cur)] != kNone) {
            chain.push_back(cur);
            cur = ref_[static_cast<size_t>(cur)];
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const size_t i = static_cast<size_t>(*it);
            side_[i] = static_cast<std::int8_t>(side_[i] * side_[static_cast<size_t>(ref_[i])]);
            ref_[i] = kNone;
        }
        return side_[static_cast<size_t>(a)];
    }

    // --- rotation list plumbing (arcs keyed at their tail node) ---

    void init_rotation(NodeId v, ArcId a) {
        first_[static_cast<size_t>(v)] = a;
        next_[static_cast<size_t>(a)] = a;
        prev_[static_cast<size_t>(a)] = a;
    }
    void insert_after(ArcId ref, ArcId a) {
        const ArcId nx = next_[static_cast<size_t>(ref)];
        next_[static_cast<size_t>(ref)] = a;
        prev_[static_cast<size_t>(a)] = ref;
        next_[static_cast<size_t>(a)] = nx;
        prev_[static_cast<size_t>(nx)] = a;
    }
    void insert_before(ArcId ref, ArcId a) {
        insert_after(prev_[static_cast<size_t>(ref)], a);
    }
    void insert_first(NodeId v, ArcId a) {
        const ArcId start = first_[static_cast<size_t>(v)];
        if (start == kNone) {
            init_rotation(v, a);
        } else {
            insert_before(start, a);
            first_[static_cast<size_t>(v)] = a;
        }
    }
    /// Rotation entry of node v for the edge of arc `towards` (i.e. the arc of
    /// that edge whose tail is v).
    ArcId entry_at(NodeId v, ArcId arc_with_head_v) const {
        return WeightedGraph::reverse_arc(arc_with_head_v);
    }

    void dfs_embed(NodeId v) {
        for (ArcId a : out_arcs_[static_cast<size_t>(v)]) {
            const NodeId w = g_.arc_head(a);
            if (a == parent_arc_[static_cast<size_t>(w)]) { // tree arc
                insert_first(w, entry_at(w, a));
                left_ref_[static_cast<size_t>(v)] = a;
                right_ref_[static_cast<size_t>(v)] = a;
                dfs_embed(w);
            } else { // back arc into ancestor w
                const ArcId entry = entry_at(w, a);
                if (side_[static_cast<size_t>(a)] == 1) {
                    insert_after(right_ref_[static_cast<size_t>(w)], entry);
                } else {
                    insert_before(left_ref_[static_cast<size_t>(w)], entry);
                    left_ref_[static_cast<size_t>(w)] = entry;
                }
            }
        }
    }

    const WeightedGraph& g_;
    const EdgeSelection& sel_;
    std::vector<int> height_;
    std::vector<ArcId> parent_arc_;
    std::vector<int> lowpt_, lowpt2_, nesting_depth_;
    std::vector<std::uint8_t> oriented_;
    std::vector<ArcId> ref_;
    std::vector<std::int8_t> side_;
    std::vector<ArcId> lowpt_arc_;
    std::vector<size_t> stack_bottom_;
    std::vector<std::vector<ArcId>> out_arcs_;
    std::vector<ConflictPair> stack_;
    std::vector<NodeId> roots_;
    // embedding phase
    std::vector<ArcId> next_, prev_;
    std::vector<ArcId> first_;
    std::vector<ArcId> left_ref_, right_ref_;
};

} // namespace

PlanarityResult test_planarity(const WeightedGraph& g, const EdgeSelection& sel) {
    if (sel.size() != g.edge_count())
        throw LengthMismatch("selection covers " + std::to_string(sel.size()) + " edges, graph has " +
                             std::to_string(g.edge_count()));
    LeftRightTester tester(g, sel);
    PlanarityResult res;
    res.planar = tester.run();
    if (res.planar) res.embedding = tester.build_embedding();
    return res;
}

PlanarityResult test_planarity(const WeightedGraph& g) {
    return test_planarity(g, EdgeSelection::all_of(g));
}

bool is_planar(const WeightedGraph& g, const EdgeSelection& sel) { return test_planarity(g, sel).planar; }
bool is_planar(const WeightedGraph& g) { return test_planarity(g).planar; }

FaceCensus trace_faces(const WeightedGraph& g, const EdgeSelection& sel, const CombinatorialEmbedding& emb) {
    const size_t a2 = static_cast<size_t>(g.arc_count());
    // Position of each arc within its tail's rotation.
    std::vector<int> pos(a2, kNone);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& rot = emb.rotation[static_cast<size_t>(v)];
        for (size_t i = 0; i < rot.size(); ++i) pos[static_cast<size_t>(rot[i])] = static_cast<int>(i);
    }
    FaceCensus census;
    std::vector<std::uint8_t> visited(a2, 0);
    for (ArcId start = 0; start < g.arc_count(); ++start) {
        if (!sel.contains(WeightedGraph::arc_edge(start)) || visited[static_cast<size_t>(start)]) continue;
        std::vector<ArcId> walk;
        ArcId a = start;
        do {
            visited[static_cast<size_t>(a)] = 1;
            walk.push_back(a);
            const NodeId h = g.arc_head(a);
            const auto& rot = emb.rotation[static_cast<size_t>(h)];
            const ArcId back = WeightedGraph::reverse_arc(a);
            const int i = pos[static_cast<size_t>(back)];
            a = rot[static_cast<size_t>((i + 1) % static_cast<int>(rot.size()))];
        } while (a != start);
        census.faces.push_back(std::move(walk));
    }
    return census;
}

FaceCensus verify_embedding(const WeightedGraph& g, const EdgeSelection& sel, const CombinatorialEmbedding& emb) {
    if (static_cast<int>(emb.rotation.size()) != g.node_count())
        throw InconsistentRotation("rotation lists cover " + std::to_string(emb.rotation.size()) +
                                   " nodes, graph has " + std::to_string(g.node_count()));
    const size_t a2 = static_cast<size_t>(g.arc_count());
    std::vector<std::uint8_t> seen(a2, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (ArcId a : emb.rotation[static_cast<size_t>(v)]) {
            if (a < 0 || a >= g.arc_count())
                throw InconsistentRotation("arc id out of range at node " + std::to_string(v));
            if (g.arc_tail(a) != v)
                throw InconsistentRotation("arc " + std::to_string(a) + " listed at node " + std::to_string(v) +
                                           " but its tail is " + std::to_string(g.arc_tail(a)));
            if (!sel.contains(WeightedGraph::arc_edge(a)))
                throw InconsistentRotation("rotation contains unselected edge " +
                                           std::to_string(WeightedGraph::arc_edge(a)));
            if (seen[static_cast<size_t>(a)])
                throw InconsistentRotation("arc " + std::to_string(a) + " appears twice");
            seen[static_cast<size_t>(a)] = 1;
        }
    }
    for (ArcId a = 0; a < g.arc_count(); ++a)
        if (sel.contains(WeightedGraph::arc_edge(a)) && !seen[static_cast<size_t>(a)])
            throw InconsistentRotation("selected arc " + std::to_string(a) + " missing from rotation");

    return trace_faces(g, sel, emb);
}

bool embedding_is_planar(const WeightedGraph& g, const EdgeSelection& sel, const FaceCensus& census) {
    const int n = g.node_count();
    std::vector<int> comp(static_cast<size_t>(n), kNone);
    int comp_count = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[static_cast<size_t>(s)] != kNone) continue;
        std::vector<NodeId> stack{s};
        comp[static_cast<size_t>(s)] = comp_count;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            const auto nbs = g.neighbors(v);
            const auto eids = g.incident_edges(v);
            for (size_t i = 0; i < nbs.size(); ++i) {
                if (!sel.contains(eids[i])) continue;
                if (comp[static_cast<size_t>(nbs[i])] == kNone) {
                    comp[static_cast<size_t>(nbs[i])] = comp_count;
                    stack.push_back(nbs[i]);
                }
            }
        }
        ++comp_count;
    }
    std::vector<int> nodes_in(static_cast<size_t>(comp_count), 0);
    std::vector<int> edges_in(static_cast<size_t>(comp_count), 0);
    std::vector<int> faces_in(static_cast<size_t>(comp_count), 0);
    for (NodeId v = 0; v < n; ++v) ++nodes_in[static_cast<size_t>(comp[static_cast<size_t>(v)])];
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (sel.contains(e)) ++edges_in[static_cast<size_t>(comp[static_cast<size_t>(g.edge(e).u)])];
    for (const auto& face : census.faces)
        ++faces_in[static_cast<size_t>(comp[static_cast<size_t>(g.arc_tail(face.front()))])];
    for (int c = 0; c < comp_count; ++c) {
        if (edges_in[static_cast<size_t>(c)] == 0) continue; // isolated nodes have no faces
        if (nodes_in[static_cast<size_t>(c)] - edges_in[static_cast<size_t>(c)] + faces_in[static_cast<size_t>(c)] != 2)
            return false;
    }
    return true;
}

} // namespace mps
