#include "twopl/analysis.hpp"

namespace twopl {

Analysis analyze(const Schedule& s, Mode mode) {
    Analysis a;
    a.schedule = s;
    a.mode = mode;
    a.system = build_inequalities(s, mode);
    a.graph = build_graph(a.system);
    a.report = repair(a.graph);
    a.order = grouped_topological_sort(a.graph);
    a.pushed_order = push_locks_right(a.order, a.graph);
    a.layout = build_layout(s, a.graph, a.order, a.report, mode);
    return a;
}

}  // namespace twopl
