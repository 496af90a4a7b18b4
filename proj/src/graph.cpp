#include "twopl/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace twopl {

NodeId ConstraintGraph::intern(const Item& item) {
    auto [it, inserted] = index_.try_emplace(item, static_cast<NodeId>(nodes_.size()));
    if (inserted) {
        nodes_.push_back(item);
        out_.emplace_back();
        in_.emplace_back();
    }
    return it->second;
}

ArcId ConstraintGraph::add_arc(const Item& from, const Item& to, Reason reason) {
    NodeId a = intern(from);
    NodeId b = intern(to);
    ArcId id = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({a, b, reason, true});
    out_[a].push_back(id);
    in_[b].push_back(id);
    ++active_count_;
    return id;
}

std::optional<NodeId> ConstraintGraph::find(const Item& item) const {
    auto it = index_.find(item);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Inequality ConstraintGraph::arc_inequality(ArcId id) const {
    const Arc& a = arcs_[id];
    return {nodes_[a.from], nodes_[a.to], a.reason};
}

void ConstraintGraph::remove_arc(ArcId id) {
    if (arcs_[id].active) {
        arcs_[id].active = false;
        --active_count_;
    }
}

bool ConstraintGraph::has_active_arc(NodeId from, NodeId to) const {
    for (ArcId id : out_[from])
        if (arcs_[id].active && arcs_[id].to == to) return true;
    return false;
}

std::size_t GroupedOrder::item_count() const {
    std::size_t n = 0;
    for (const auto& group : groups) n += group.size();
    return n;
}

ConstraintGraph build_graph(const InequalitySystem& sys) {
    ConstraintGraph g;
    for (const Inequality& ineq : sys.inequalities) g.add_arc(ineq.lhs, ineq.rhs, ineq.reason);
    return g;
}

namespace {

// Shortest path tree from source over active arcs; neighbours expand in arc
// creation order so parent choices are reproducible.
struct BfsResult {
    std::vector<int> dist;
    std::vector<ArcId> parent_arc;
    std::vector<NodeId> discovery;  // nodes in discovery order
};

BfsResult bfs_from(const ConstraintGraph& g, NodeId source) {
    BfsResult r;
    r.dist.assign(g.node_count(), -1);
    r.parent_arc.assign(g.node_count(), -1);
    std::deque<NodeId> queue;
    r.dist[source] = 0;
    r.discovery.push_back(source);
    queue.push_back(source);
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (ArcId id : g.out_arcs(u)) {
            const Arc& arc = g.arc(id);
            if (!arc.active || r.dist[arc.to] >= 0) continue;
            r.dist[arc.to] = r.dist[u] + 1;
            r.parent_arc[arc.to] = id;
            r.discovery.push_back(arc.to);
            queue.push_back(arc.to);
        }
    }
    return r;
}

}  // namespace

bool is_acyclic(const ConstraintGraph& g) {
    std::vector<int> indeg(g.node_count(), 0);
    for (const Arc& a : g.arcs())
        if (a.active) ++indeg[a.to];
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v)
        if (indeg[v] == 0) stack.push_back(v);
    std::size_t seen = 0;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        ++seen;
        for (ArcId id : g.out_arcs(u)) {
            const Arc& a = g.arc(id);
            if (a.active && --indeg[a.to] == 0) stack.push_back(a.to);
        }
    }
    return seen == g.node_count();
}

std::optional<std::vector<ArcId>> find_minimal_cycle(const ConstraintGraph& g) {
    std::optional<std::vector<ArcId>> best;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();

    for (NodeId source = 0; source < static_cast<NodeId>(g.node_count()); ++source) {
        if (best_len == 2) break;  // cannot improve on a 2-cycle
        BfsResult bfs = bfs_from(g, source);

        // The shortest back-path: first discovered node that closes on the
        // source with the fewest arcs.
        NodeId close_from = -1;
        ArcId close_arc = -1;
        std::size_t close_len = best_len;
        for (NodeId u : bfs.discovery) {
            std::size_t len = static_cast<std::size_t>(bfs.dist[u]) + 1;
            if (len >= close_len) continue;
            for (ArcId id : g.out_arcs(u)) {
                const Arc& a = g.arc(id);
                if (a.active && a.to == source) {
                    close_from = u;
                    close_arc = id;
                    close_len = len;
                    break;
                }
            }
        }
        if (close_arc < 0) continue;

        std::vector<ArcId> cycle;
        for (NodeId v = close_from; v != source; v = g.arc(bfs.parent_arc[v]).from)
            cycle.push_back(bfs.parent_arc[v]);
        std::reverse(cycle.begin(), cycle.end());
        cycle.push_back(close_arc);
        best = std::move(cycle);
        best_len = close_len;
    }
    return best;
}

ArcId select_removal_arc(const ConstraintGraph& g, const std::vector<ArcId>& cycle) {
    for (ArcId id : cycle) {
        const Arc& a = g.arc(id);
        if (a.reason != Reason::TwoPhase) continue;
        const Request* lock = as_request(g.item(a.from));
        const Request* unlock = as_request(g.item(a.to));
        if (lock && unlock && lock->txn == unlock->txn && is_lock(lock->kind) &&
            is_unlock(unlock->kind) && lock->op_time > unlock->op_time)
            return id;
    }
    return cycle.front();
}

RepairReport repair(ConstraintGraph& g) {
    RepairReport report;
    while (auto cycle = find_minimal_cycle(g)) {
        std::vector<Inequality> trace;
        trace.reserve(cycle->size());
        for (ArcId id : *cycle) trace.push_back(g.arc_inequality(id));
        report.cycles.push_back(std::move(trace));

        ArcId target = select_removal_arc(g, *cycle);
        report.removed.push_back(g.arc_inequality(target));
        g.remove_arc(target);
        ++report.iterations;
    }
    return report;
}

GroupedOrder grouped_topological_sort(const ConstraintGraph& g) {
    std::vector<int> indeg(g.node_count(), 0);
    for (const Arc& a : g.arcs())
        if (a.active) ++indeg[a.to];

    std::vector<NodeId> layer;
    for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v)
        if (indeg[v] == 0) layer.push_back(v);

    GroupedOrder order;
    std::size_t placed = 0;
    while (!layer.empty()) {
        std::vector<Item> group;
        group.reserve(layer.size());
        for (NodeId v : layer) group.push_back(g.item(v));
        order.groups.push_back(std::move(group));
        placed += layer.size();

        std::vector<NodeId> next;
        for (NodeId u : layer)
            for (ArcId id : g.out_arcs(u)) {
                const Arc& a = g.arc(id);
                if (a.active && --indeg[a.to] == 0) next.push_back(a.to);
            }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }
    if (placed != g.node_count())
        throw std::invalid_argument("grouped_topological_sort: graph is cyclic");
    return order;
}

}  // namespace twopl
