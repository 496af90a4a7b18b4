#pragma once

#include "twopl/layout.hpp"

namespace twopl {

// Everything produced by one end-to-end run: the inequality system, the
// repaired (acyclic) graph, the removal report, the grouped orders and the
// final table layout.
struct Analysis {
    Schedule schedule;
    Mode mode = Mode::Standard;
    InequalitySystem system;
    ConstraintGraph graph;  // residual graph after repair
    RepairReport report;
    GroupedOrder order;         // earliest-layer grouping of the residual graph
    GroupedOrder pushed_order;  // after push_locks_right
    TableLayout layout;

    bool member() const { return report.removed.empty(); }
};

Analysis analyze(const Schedule& s, Mode mode = Mode::Standard);

}  // namespace twopl
