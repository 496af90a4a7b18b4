#pragma once

#include <map>
#include <string>
#include <vector>

#include "twopl/graph.hpp"

namespace twopl {

struct Column {
    int index = 0;
    std::vector<Item> entries;
};

struct TableLayout {
    std::vector<Column> columns;
    std::vector<std::string> resource_rows;  // first-appearance order
    std::map<int, int> plateaus;             // txn -> column whose right edge carries the line
    std::vector<Item> culprit_items;         // empty, or the endpoints of the first removed arc
    Mode mode = Mode::Standard;
    bool member = true;
};

// Relocates every lock to the latest group allowed by its neighbours in g;
// other items keep their groups. Idempotent.
GroupedOrder push_locks_right(const GroupedOrder& order, const ConstraintGraph& g);

// Emits groups left to right, splitting a group whenever a column would hold
// two time points or a time point together with a request on the operation's
// resource. Within a split the time point goes first.
std::vector<Column> assign_columns(const GroupedOrder& order, const Schedule& s);

// Plateau boundary per transaction: the column holding its last lock.
// Transactions owning a lock that ends up on a removed arc are left out.
std::map<int, int> compute_plateaus(const std::vector<Column>& columns,
                                    const std::vector<Inequality>& removed);

TableLayout build_layout(const Schedule& s, const ConstraintGraph& g, const GroupedOrder& order,
                         const RepairReport& report, Mode mode);

}  // namespace twopl
