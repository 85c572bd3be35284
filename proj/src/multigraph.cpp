#include "cubization/multigraph.hpp"

#include <algorithm>
#include <queue>

#include "cubization/errors.hpp"

namespace cubization {

void Multigraph::build_adjacency() {
    adj_offset.assign(vertex_count + 1, 0);
    for (const Dart& d : darts) ++adj_offset[d.source + 1];
    for (int v = 0; v < vertex_count; ++v) adj_offset[v + 1] += adj_offset[v];
    adj_darts.assign(darts.size(), -1);
    std::vector<int> cur(adj_offset.begin(), adj_offset.end() - 1);
    for (int d = 0; d < dart_count(); ++d) adj_darts[cur[darts[d].source]++] = d;
}

Multigraph Multigraph::from_edges(int vertices, const std::vector<EdgeSpec>& edges) {
    if (vertices <= 0) throw ValidationError("graph needs at least one vertex");
    Multigraph g;
    g.vertex_count = vertices;
    std::vector<std::string> labels;
    auto label_id = [&](const std::string& s) {
        if (s.empty()) return -1;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i);
        labels.push_back(s);
        return static_cast<int>(labels.size() - 1);
    };
    for (const EdgeSpec& e : edges) {
        if (e.u < 0 || e.u >= vertices || e.v < 0 || e.v >= vertices)
            throw ValidationError("edge endpoint out of range");
        int id = static_cast<int>(g.darts.size());
        int eidx = static_cast<int>(g.edge_dart.size());
        int sym = label_id(e.label);
        g.darts.push_back({e.u, e.v, sym, id + 1, eidx});
        g.darts.push_back({e.v, e.u, sym, id, eidx});
        g.edge_dart.push_back(id);
    }
    g.symbol_names = std::move(labels);
    g.build_adjacency();
    return g;
}

Multigraph build_cayley(const FiniteGroup& group, const GeneratorSet& gens) {
    gens.validate(group);
    const int n = group.order, s2 = gens.size();
    Multigraph g;
    g.vertex_count = n;
    g.symbol_count = s2;
    g.symbol_names = gens.symbols;
    g.darts.resize(static_cast<std::size_t>(n) * s2);
    for (int v = 0; v < n; ++v) {
        for (int s = 0; s < s2; ++s) {
            int id = v * s2 + s;
            int w = group.mult(v, gens.to_element[s]);
            g.darts[id] = {v, w, s, w * s2 + gens.partner[s], -1};
        }
    }
    // Canonical edge indexing: ascending over lexicographically smaller darts.
    for (int d = 0; d < g.dart_count(); ++d) {
        if (d <= g.darts[d].opposite) {
            int e = static_cast<int>(g.edge_dart.size());
            g.darts[d].edge = e;
            g.darts[g.darts[d].opposite].edge = e;
            g.edge_dart.push_back(d);
        }
    }
    g.build_adjacency();
    structural_require(is_connected(g), "Cayley graph of a generating set must be connected");
    return g;
}

bool is_connected(const Multigraph& g) {
    if (g.vertex_count == 0) return true;
    std::vector<char> seen(g.vertex_count, 0);
    std::queue<int> q;
    seen[0] = 1;
    q.push(0);
    int n = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int i = g.adj_offset[u]; i < g.adj_offset[u + 1]; ++i) {
            int w = g.darts[g.adj_darts[i]].target;
            if (!seen[w]) {
                seen[w] = 1;
                ++n;
                q.push(w);
            }
        }
    }
    return n == g.vertex_count;
}

SpanningTree spanning_tree(const Multigraph& g) {
    if (!is_connected(g)) throw ValidationError("spanning tree needs a connected graph");
    SpanningTree t;
    t.parent_dart.assign(g.vertex_count, -1);
    t.edge_in_tree.assign(g.edge_count(), 0);
    std::vector<char> seen(g.vertex_count, 0);
    seen[0] = 1;
    t.order.push_back(0);
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        int u = t.order[head];
        for (int i = g.adj_offset[u]; i < g.adj_offset[u + 1]; ++i) {
            int d = g.adj_darts[i];
            int w = g.darts[d].target;
            if (!seen[w]) {
                seen[w] = 1;
                t.parent_dart[w] = d;
                t.edge_in_tree[g.darts[d].edge] = 1;
                t.order.push_back(w);
            }
        }
    }
    return t;
}

int cycle_rank(const Multigraph& g) {
    structural_require(is_connected(g), "cycle rank defined here for connected graphs only");
    return g.edge_count() - g.vertex_count + 1;
}

std::vector<int> bridges(const Multigraph& g) {
    const int n = g.vertex_count;
    std::vector<int> disc(n, -1), low(n, 0), it(n, 0), entry_edge(n, -1);
    std::vector<char> skipped(n, 0);  // entering edge skipped exactly once
    std::vector<int> out;
    int timer = 0;

    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<int> stack{root};
        disc[root] = low[root] = timer++;
        it[root] = g.adj_offset[root];
        while (!stack.empty()) {
            int u = stack.back();
            if (it[u] < g.adj_offset[u + 1]) {
                int d = g.adj_darts[it[u]++];
                int e = g.darts[d].edge;
                int w = g.darts[d].target;
                if (e == entry_edge[u] && !skipped[u]) {
                    skipped[u] = 1;
                    continue;
                }
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    entry_edge[w] = e;
                    skipped[w] = 0;
                    it[w] = g.adj_offset[w];
                    stack.push_back(w);
                } else {
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back();
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] > disc[p]) out.push_back(entry_edge[u]);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GraphAutomorphism left_mult(const FiniteGroup& group, int g) {
    structural_require(g >= 0 && g < group.order, "element index out of range");
    GraphAutomorphism a;
    a.vertex_map.resize(group.order);
    for (int v = 0; v < group.order; ++v) a.vertex_map[v] = group.mult(g, v);
    return a;
}

GraphAutomorphism compose(const GraphAutomorphism& outer, const GraphAutomorphism& inner) {
    GraphAutomorphism r;
    r.vertex_map.resize(inner.vertex_map.size());
    for (std::size_t v = 0; v < inner.vertex_map.size(); ++v)
        r.vertex_map[v] = outer.vertex_map[inner.vertex_map[v]];
    return r;
}

}  // namespace cubization
