#include "twopl/layout.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace twopl {

namespace {

std::vector<int> group_assignment(const GroupedOrder& order, const ConstraintGraph& g) {
    std::vector<int> group(g.node_count(), -1);
    for (std::size_t i = 0; i < order.groups.size(); ++i)
        for (const Item& item : order.groups[i]) {
            auto id = g.find(item);
            if (!id) throw std::invalid_argument("push_locks_right: item not in graph");
            group[*id] = static_cast<int>(i);
        }
    for (int assigned : group)
        if (assigned < 0) throw std::invalid_argument("push_locks_right: order misses graph nodes");
    return group;
}

void check_order(const std::vector<int>& group, const ConstraintGraph& g) {
    for (const Arc& a : g.arcs())
        if (a.active && group[a.from] >= group[a.to])
            throw std::logic_error("grouped order violates an arc");
}

}  // namespace

GroupedOrder push_locks_right(const GroupedOrder& order, const ConstraintGraph& g) {
    std::vector<int> group = group_assignment(order, g);
    check_order(group, g);
    if (order.groups.empty()) return order;
    const int last = static_cast<int>(order.groups.size()) - 1;

    std::vector<NodeId> sequence;
    for (const auto& grp : order.groups)
        for (const Item& item : grp) sequence.push_back(*g.find(item));

    for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) {
        NodeId node = *it;
        if (!is_lock_item(g.item(node))) continue;
        int min_succ = std::numeric_limits<int>::max();
        for (ArcId id : g.out_arcs(node))
            if (g.arc(id).active) min_succ = std::min(min_succ, group[g.arc(id).to]);
        group[node] = min_succ == std::numeric_limits<int>::max() ? last : min_succ - 1;
    }

    // Rebuild groups, compacting any that went empty; node insertion order
    // fixes the order inside each group.
    std::vector<std::vector<NodeId>> byg(order.groups.size());
    for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) byg[group[v]].push_back(v);
    GroupedOrder out;
    for (auto& members : byg) {
        if (members.empty()) continue;
        std::vector<Item> grp;
        grp.reserve(members.size());
        for (NodeId v : members) grp.push_back(g.item(v));
        out.groups.push_back(std::move(grp));
    }
    check_order(group_assignment(out, g), g);
    return out;
}

std::vector<Column> assign_columns(const GroupedOrder& order, const Schedule& s) {
    std::vector<Column> columns;
    for (const auto& group : order.groups) {
        // Time point first, then requests in their stored order (an SL always
        // precedes its upgrade XL there).
        std::vector<const Item*> sequence;
        for (const Item& item : group)
            if (is_time_point(item)) sequence.push_back(&item);
        for (const Item& item : group)
            if (is_request(item)) sequence.push_back(&item);

        bool open = false;
        bool has_time = false;
        std::string time_resource;
        std::set<std::string> request_resources;
        auto open_column = [&] {
            columns.push_back({static_cast<int>(columns.size()), {}});
            has_time = false;
            time_resource.clear();
            request_resources.clear();
            open = true;
        };

        for (const Item* item : sequence) {
            if (const TimePoint* tp = std::get_if<TimePoint>(item)) {
                const std::string& res = s.ops[tp->t - 1].resource;
                if (!open || has_time || request_resources.count(res)) open_column();
                has_time = true;
                time_resource = res;
            } else {
                const Request& r = std::get<Request>(*item);
                if (!open || (has_time && time_resource == r.resource)) open_column();
                request_resources.insert(r.resource);
            }
            columns.back().entries.push_back(*item);
        }
    }
    return columns;
}

std::map<int, int> compute_plateaus(const std::vector<Column>& columns,
                                    const std::vector<Inequality>& removed) {
    std::set<int> disqualified;
    for (const Inequality& ineq : removed) {
        for (const Item* side : {&ineq.lhs, &ineq.rhs})
            if (is_lock_item(*side)) disqualified.insert(as_request(*side)->txn);
    }

    std::map<int, int> boundary;
    for (const Column& col : columns)
        for (const Item& item : col.entries)
            if (is_lock_item(item)) boundary[as_request(item)->txn] = col.index;

    for (int txn : disqualified) boundary.erase(txn);
    return boundary;
}

TableLayout build_layout(const Schedule& s, const ConstraintGraph& g, const GroupedOrder& order,
                         const RepairReport& report, Mode mode) {
    TableLayout layout;
    layout.mode = mode;
    layout.member = report.removed.empty();

    GroupedOrder pushed = push_locks_right(order, g);
    layout.columns = assign_columns(pushed, s);
    layout.plateaus = compute_plateaus(layout.columns, report.removed);
    if (report.has_culprit()) {
        layout.culprit_items.push_back(report.culprit().lhs);
        layout.culprit_items.push_back(report.culprit().rhs);
    }

    std::set<std::string> seen;
    for (const Operation& op : s.ops)
        if (seen.insert(op.resource).second) layout.resource_rows.push_back(op.resource);

    return layout;
}

}  // namespace twopl
