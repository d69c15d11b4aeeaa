#pragma once

#include <unordered_set>
#include <vector>

#include "multigraph.hpp"

namespace spedge {

/// True iff g has no subdivision of K4. Runs the confluent reduction on the
/// underlying simple graph: delete vertices of degree at most one, suppress
/// degree-two vertices (merging the parallel pair this may create), and
/// accept when nothing is left. Disconnected inputs are handled per component.
inline bool is_series_parallel(const multigraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::unordered_set<vertex_id>> adj(n);
    for (const auto& c : g.classes()) {
        adj[c.u].insert(c.v);
        adj[c.v].insert(c.u);
    }
    std::vector<char> gone(n, 0);
    std::vector<vertex_id> work;
    work.reserve(n);
    for (vertex_id v = 0; v < n; ++v)
        if (adj[v].size() <= 2) work.push_back(v);

    std::size_t remaining = n;
    while (!work.empty()) {
        vertex_id v = work.back();
        work.pop_back();
        if (gone[v] || adj[v].size() > 2) continue;
        gone[v] = 1;
        --remaining;
        if (adj[v].size() == 2) {
            auto it = adj[v].begin();
            vertex_id x = *it++;
            vertex_id y = *it;
            adj[x].erase(v);
            adj[y].erase(v);
            adj[x].insert(y);
            adj[y].insert(x);
            if (adj[x].size() <= 2) work.push_back(x);
            if (adj[y].size() <= 2) work.push_back(y);
        } else if (adj[v].size() == 1) {
            vertex_id x = *adj[v].begin();
            adj[x].erase(v);
            if (adj[x].size() <= 2) work.push_back(x);
        }
        adj[v].clear();
    }
    return remaining == 0;
}

}  // namespace spedge
