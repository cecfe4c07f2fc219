#include "mpscli/generator.hpp"

#include <set>
#include <utility>
#include <vector>

#include "mps/errors.hpp"

namespace mps {

namespace {

/// splitmix64-seeded xorshift; self-contained so the pairing is identical
/// on every platform (std::shuffle sequences are implementation-defined).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) {
        state = seed + 0x9e3779b97f4a7c15ull;
        state = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9ull;
        state = (state ^ (state >> 27)) * 0x94d049bb133111ebull;
        state ^= state >> 31;
        if (state == 0)
            state = 0x2545f4914f6cdd1dull;
    }
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    /// uniform in [0, bound) by rejection
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }
};

} // namespace

WeightedGraph gen_random_regular(int n, int d, std::uint64_t seed) {
    if (n < 0 || d < 0 || d >= n || (static_cast<std::int64_t>(n) * d) % 2 != 0)
        throw InfeasibleDegree("no simple " + std::to_string(d) + "-regular graph on " +
                               std::to_string(n) + " nodes");
    const int stubs = n * d;
    Rng rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<NodeId> pool(static_cast<size_t>(stubs));
        for (int i = 0; i < stubs; ++i)
            pool[static_cast<size_t>(i)] = static_cast<NodeId>(i / std::max(d, 1));
        // Fisher-Yates with the portable generator
        for (int i = stubs - 1; i > 0; --i)
            std::swap(pool[static_cast<size_t>(i)],
                      pool[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        std::set<std::pair<NodeId, NodeId>> seen;
        std::vector<EdgeInput> edges;
        bool ok = true;
        for (int i = 0; i < stubs; i += 2) {
            const NodeId u = std::min(pool[static_cast<size_t>(i)],
                                      pool[static_cast<size_t>(i + 1)]);
            const NodeId v = std::max(pool[static_cast<size_t>(i)],
                                      pool[static_cast<size_t>(i + 1)]);
            if (u == v || !seen.insert({u, v}).second) {
                ok = false;
                break;
            }
            edges.push_back({u, v, 1});
        }
        if (ok)
            return build_graph(n, edges);
    }
    throw Error("pairing model failed to produce a simple graph; degree too close to n");
}

} // namespace mps
