#pragma once

// Network optimization kernel: integral min-cost max-flow by successive
// shortest paths with node potentials, Hopcroft-Karp bipartite matching, and
// min-cost left-saturating bipartite matching on top of the flow routine.

#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliquesched/errors.hpp"

namespace cliquesched::netopt {

using Flow = std::int64_t;
using FlowCost = std::int64_t;

struct Arc {
    int tail = 0;
    int head = 0;
    Flow capacity = 0;
    FlowCost cost = 0;
};

class FlowNetwork {
public:
    FlowNetwork() = default;
    FlowNetwork(int node_count, int source, int sink) : node_count_(node_count), source_(source), sink_(sink) {
        if (source == sink) throw std::invalid_argument("source and sink must differ");
        check_node(source);
        check_node(sink);
    }

    int add_node() { return node_count_++; }

    /// Returns the index of the new arc.
    int add_arc(int tail, int head, Flow capacity, FlowCost cost = 0) {
        check_node(tail);
        check_node(head);
        if (capacity < 0) throw std::invalid_argument("arc capacity must be non-negative");
        if (cost < 0) throw std::invalid_argument("arc cost must be non-negative");
        arcs_.push_back({tail, head, capacity, cost});
        return static_cast<int>(arcs_.size()) - 1;
    }

    int node_count() const { return node_count_; }
    int source() const { return source_; }
    int sink() const { return sink_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int a) const { return arcs_[static_cast<std::size_t>(a)]; }

private:
    void check_node(int v) const {
        if (v < 0 || v >= node_count_) throw std::out_of_range("node index out of range");
    }

    int node_count_ = 0;
    int source_ = 0;
    int sink_ = 1;
    std::vector<Arc> arcs_;
};

struct FlowResult {
    Flow value = 0;
    FlowCost cost = 0;
    std::vector<Flow> flow; // per arc, same indexing as FlowNetwork::arcs()
};

/// Number of optimality certificates verified so far (self-check builds only).
inline std::atomic<std::uint64_t> self_checks_performed{0};

/// Number of min_cost_max_flow calls so far.
inline std::atomic<std::uint64_t> flow_solves{0};

namespace detail {

// Residual graph: arc a has forward edge 2a and backward edge 2a+1.
struct Residual {
    std::vector<std::vector<int>> out; // edge ids leaving each node, insertion order
    std::vector<int> to;
    std::vector<Flow> cap;
    std::vector<FlowCost> cost;

    Residual(const FlowNetwork& net, const std::vector<Flow>* flow) : out(static_cast<std::size_t>(net.node_count())) {
        const auto& arcs = net.arcs();
        to.resize(arcs.size() * 2);
        cap.resize(arcs.size() * 2);
        cost.resize(arcs.size() * 2);
        for (std::size_t a = 0; a < arcs.size(); ++a) {
            const Arc& arc = arcs[a];
            const Flow f = flow ? (*flow)[a] : 0;
            to[2 * a] = arc.head;
            cap[2 * a] = arc.capacity - f;
            cost[2 * a] = arc.cost;
            to[2 * a + 1] = arc.tail;
            cap[2 * a + 1] = f;
            cost[2 * a + 1] = -arc.cost;
            out[static_cast<std::size_t>(arc.tail)].push_back(static_cast<int>(2 * a));
            out[static_cast<std::size_t>(arc.head)].push_back(static_cast<int>(2 * a + 1));
        }
    }
};

inline bool has_negative_cycle(const Residual& r, int node_count) {
    // Bellman-Ford from a virtual root connected to every node with cost 0.
    std::vector<FlowCost> dist(static_cast<std::size_t>(node_count), 0);
    for (int round = 0; round < node_count; ++round) {
        bool changed = false;
        for (int u = 0; u < node_count; ++u)
            for (int e : r.out[static_cast<std::size_t>(u)]) {
                auto ue = static_cast<std::size_t>(e);
                if (r.cap[ue] <= 0) continue;
                auto v = static_cast<std::size_t>(r.to[ue]);
                if (dist[static_cast<std::size_t>(u)] + r.cost[ue] < dist[v]) {
                    dist[v] = dist[static_cast<std::size_t>(u)] + r.cost[ue];
                    changed = true;
                }
            }
        if (!changed) return false;
    }
    return true;
}

inline bool sink_reachable(const Residual& r, int node_count, int source, int sink) {
    std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
    std::vector<int> stack{source};
    seen[static_cast<std::size_t>(source)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u == sink) return true;
        for (int e : r.out[static_cast<std::size_t>(u)]) {
            auto ue = static_cast<std::size_t>(e);
            int v = r.to[ue];
            if (r.cap[ue] > 0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
    }
    return false;
}

} // namespace detail

/// True iff the residual network of `result` contains a negative-cost cycle,
/// i.e. the flow is not cost-minimal for its value.
inline bool residual_has_negative_cycle(const FlowNetwork& net, const FlowResult& result) {
    detail::Residual r(net, &result.flow);
    return detail::has_negative_cycle(r, net.node_count());
}

/// Verifies capacity, conservation, reported value/cost, cost optimality and,
/// unless `limit_reached`, maximality. Throws std::logic_error on failure.
inline void check_flow_certificate(const FlowNetwork& net, const FlowResult& result, bool limit_reached) {
    const auto& arcs = net.arcs();
    if (result.flow.size() != arcs.size()) throw std::logic_error("flow vector size mismatch");
    std::vector<Flow> balance(static_cast<std::size_t>(net.node_count()), 0);
    FlowCost cost = 0;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const Flow f = result.flow[a];
        if (f < 0 || f > arcs[a].capacity) throw std::logic_error("flow violates arc capacity");
        balance[static_cast<std::size_t>(arcs[a].tail)] -= f;
        balance[static_cast<std::size_t>(arcs[a].head)] += f;
        cost += f * arcs[a].cost;
    }
    for (int v = 0; v < net.node_count(); ++v) {
        if (v == net.source() || v == net.sink()) continue;
        if (balance[static_cast<std::size_t>(v)] != 0) throw std::logic_error("flow conservation violated");
    }
    if (-balance[static_cast<std::size_t>(net.source())] != result.value) throw std::logic_error("flow value mismatch");
    if (cost != result.cost) throw std::logic_error("flow cost mismatch");
    detail::Residual r(net, &result.flow);
    if (detail::has_negative_cycle(r, net.node_count())) throw std::logic_error("residual network has a negative cycle");
    if (!limit_reached && detail::sink_reachable(r, net.node_count(), net.source(), net.sink()))
        throw std::logic_error("flow is not maximum");
    ++self_checks_performed;
}

/// Maximum flow (capped at `limit` when given) of minimum cost.
/// Successive shortest paths; Dijkstra with a binary heap on reduced costs.
/// Ties among equal-distance nodes are broken by node index.
inline FlowResult min_cost_max_flow(const FlowNetwork& net, std::optional<Flow> limit = std::nullopt) {
    ++flow_solves;
    const int n = net.node_count();
    const int s = net.source();
    const int t = net.sink();
    detail::Residual r(net, nullptr);
    constexpr FlowCost kInf = std::numeric_limits<FlowCost>::max() / 4;

    std::vector<FlowCost> potential(static_cast<std::size_t>(n), 0);
    std::vector<FlowCost> dist(static_cast<std::size_t>(n));
    std::vector<int> via(static_cast<std::size_t>(n));
    FlowResult result;
    const Flow cap_limit = limit.value_or(std::numeric_limits<Flow>::max());

    while (result.value < cap_limit) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(via.begin(), via.end(), -1);
        using Entry = std::pair<FlowCost, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        dist[static_cast<std::size_t>(s)] = 0;
        heap.emplace(0, s);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            auto uu = static_cast<std::size_t>(u);
            if (d != dist[uu]) continue;
            for (int e : r.out[uu]) {
                auto ue = static_cast<std::size_t>(e);
                if (r.cap[ue] <= 0) continue;
                auto v = static_cast<std::size_t>(r.to[ue]);
                const FlowCost nd = d + r.cost[ue] + potential[uu] - potential[v];
                if (nd < dist[v]) {
                    dist[v] = nd;
                    via[v] = e;
                    heap.emplace(nd, static_cast<int>(v));
                }
            }
        }
        if (dist[static_cast<std::size_t>(t)] >= kInf) break;
        for (std::size_t v = 0; v < potential.size(); ++v)
            if (dist[v] < kInf) potential[v] += dist[v];

        Flow push = cap_limit - result.value;
        for (int v = t; v != s;) {
            auto e = static_cast<std::size_t>(via[static_cast<std::size_t>(v)]);
            push = std::min(push, r.cap[e]);
            v = r.to[e ^ 1U];
        }
        for (int v = t; v != s;) {
            auto e = static_cast<std::size_t>(via[static_cast<std::size_t>(v)]);
            r.cap[e] -= push;
            r.cap[e ^ 1U] += push;
            result.cost += push * r.cost[e];
            v = r.to[e ^ 1U];
        }
        result.value += push;
    }

    result.flow.resize(net.arcs().size());
    for (std::size_t a = 0; a < net.arcs().size(); ++a) result.flow[a] = r.cap[2 * a + 1];

#ifdef CLIQUESCHED_SELF_CHECK
    check_flow_certificate(net, result, limit.has_value() && result.value >= *limit);
#endif
    return result;
}

struct Matching {
    std::vector<int> left_to_right; // -1 when unmatched
    std::vector<int> right_to_left;
    int size = 0;
};

/// Maximum-cardinality bipartite matching (Hopcroft-Karp). Edges are (left, right)
/// pairs; adjacency follows input order, so the result is deterministic.
inline Matching max_bipartite_matching(int left_size, int right_size, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(left_size));
    for (auto [l, r] : edges) {
        if (l < 0 || l >= left_size || r < 0 || r >= right_size) throw std::out_of_range("matching edge out of range");
        adj[static_cast<std::size_t>(l)].push_back(r);
    }
    Matching m;
    m.left_to_right.assign(static_cast<std::size_t>(left_size), -1);
    m.right_to_left.assign(static_cast<std::size_t>(right_size), -1);
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> layer(static_cast<std::size_t>(left_size));

    auto bfs = [&] {
        std::queue<int> q;
        bool found = false;
        for (int l = 0; l < left_size; ++l) {
            if (m.left_to_right[static_cast<std::size_t>(l)] < 0) {
                layer[static_cast<std::size_t>(l)] = 0;
                q.push(l);
            } else {
                layer[static_cast<std::size_t>(l)] = kInf;
            }
        }
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj[static_cast<std::size_t>(l)]) {
                int next = m.right_to_left[static_cast<std::size_t>(r)];
                if (next < 0) {
                    found = true;
                } else if (layer[static_cast<std::size_t>(next)] == kInf) {
                    layer[static_cast<std::size_t>(next)] = layer[static_cast<std::size_t>(l)] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    };

    std::function<bool(int)> dfs = [&](int l) {
        for (int r : adj[static_cast<std::size_t>(l)]) {
            int next = m.right_to_left[static_cast<std::size_t>(r)];
            if (next < 0 || (layer[static_cast<std::size_t>(next)] == layer[static_cast<std::size_t>(l)] + 1 && dfs(next))) {
                m.left_to_right[static_cast<std::size_t>(l)] = r;
                m.right_to_left[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        layer[static_cast<std::size_t>(l)] = kInf;
        return false;
    };

    while (bfs())
        for (int l = 0; l < left_size; ++l)
            if (m.left_to_right[static_cast<std::size_t>(l)] < 0 && dfs(l)) ++m.size;
    return m;
}

struct WeightedEdge {
    int left = 0;
    int right = 0;
    FlowCost cost = 0;
};

struct Assignment {
    std::vector<int> left_to_right;
    FlowCost cost = 0;
};

/// Minimum-cost matching that saturates the left side; throws NoPerfectMatching.
inline Assignment min_cost_perfect_matching(int left_size, int right_size, const std::vector<WeightedEdge>& edges) {
    if (left_size > right_size) throw NoPerfectMatching("left side larger than right side");
    // nodes: source, sink, left block, right block
    FlowNetwork net(2 + left_size + right_size, 0, 1);
    auto left_node = [](int l) { return 2 + l; };
    auto right_node = [&](int r) { return 2 + left_size + r; };
    for (int l = 0; l < left_size; ++l) net.add_arc(0, left_node(l), 1);
    std::vector<int> edge_arc;
    edge_arc.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.left < 0 || e.left >= left_size || e.right < 0 || e.right >= right_size)
            throw std::out_of_range("matching edge out of range");
        edge_arc.push_back(net.add_arc(left_node(e.left), right_node(e.right), 1, e.cost));
    }
    for (int r = 0; r < right_size; ++r) net.add_arc(right_node(r), 1, 1);

    FlowResult fr = min_cost_max_flow(net);
    if (fr.value < left_size)
        throw NoPerfectMatching("only " + std::to_string(fr.value) + " of " + std::to_string(left_size) +
                                " left vertices can be matched");
    Assignment out;
    out.left_to_right.assign(static_cast<std::size_t>(left_size), -1);
    out.cost = fr.cost;
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (fr.flow[static_cast<std::size_t>(edge_arc[k])] > 0)
            out.left_to_right[static_cast<std::size_t>(edges[k].left)] = edges[k].right;
    return out;
}

} // namespace cliquesched::netopt
