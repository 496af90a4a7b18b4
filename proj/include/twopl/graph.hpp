#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twopl/constraints.hpp"

namespace twopl {

using NodeId = int;
using ArcId = int;

struct Arc {
    NodeId from = 0;
    NodeId to = 0;
    Reason reason = Reason::TimeChain;
    bool active = true;
};

// Directed graph over the items of an inequality system. Nodes and arcs keep
// their creation order; repair deactivates arcs instead of erasing them so
// ids stay stable.
class ConstraintGraph {
public:
    NodeId intern(const Item& item);
    ArcId add_arc(const Item& from, const Item& to, Reason reason);

    std::size_t node_count() const { return nodes_.size(); }
    const Item& item(NodeId id) const { return nodes_[id]; }
    const std::vector<Item>& items() const { return nodes_; }
    std::optional<NodeId> find(const Item& item) const;

    const Arc& arc(ArcId id) const { return arcs_[id]; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t active_arc_count() const { return active_count_; }
    Inequality arc_inequality(ArcId id) const;

    const std::vector<ArcId>& out_arcs(NodeId id) const { return out_[id]; }
    const std::vector<ArcId>& in_arcs(NodeId id) const { return in_[id]; }

    void remove_arc(ArcId id);
    bool has_active_arc(NodeId from, NodeId to) const;

private:
    std::vector<Item> nodes_;
    std::map<Item, NodeId> index_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<std::vector<ArcId>> in_;
    std::size_t active_count_ = 0;
};

struct RepairReport {
    std::vector<Inequality> removed;              // in removal order
    std::vector<std::vector<Inequality>> cycles;  // minimal cycle found per iteration
    int iterations = 0;

    bool has_culprit() const { return !removed.empty(); }
    const Inequality& culprit() const { return removed.front(); }
};

// A layered order: items within a group are mutually unordered, every arc of
// the graph goes from an earlier group to a later one.
struct GroupedOrder {
    std::vector<std::vector<Item>> groups;

    std::size_t item_count() const;
};

ConstraintGraph build_graph(const InequalitySystem& sys);

bool is_acyclic(const ConstraintGraph& g);

// Shortest cycle by arc count, or nullopt when acyclic. BFS runs from every
// node in insertion order; ties go to the earliest source, then to the first
// discovered closing node. The cycle is reported starting at the BFS source.
std::optional<std::vector<ArcId>> find_minimal_cycle(const ConstraintGraph& g);

// First arc of the cycle that is a two-phase arc whose lock serves a later
// operation than its unlock; falls back to the cycle's first arc.
ArcId select_removal_arc(const ConstraintGraph& g, const std::vector<ArcId>& cycle);

// Removes one arc per minimal cycle until the graph is acyclic.
RepairReport repair(ConstraintGraph& g);

// Earliest-layer grouping of an acyclic graph; throws std::invalid_argument
// on cyclic input.
GroupedOrder grouped_topological_sort(const ConstraintGraph& g);

}  // namespace twopl
