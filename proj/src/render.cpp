#include "twopl/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace twopl {

namespace {

using nlohmann::json;

const char* kLatexPreamble = R"(\documentclass{article}
\usepackage{tabularray}
\usepackage{xcolor}
\usepackage{tikz}
\newcommand{\txncolor}[1]{\ifcase0#1 black\or blue\or red\or teal\or violet\or olive\or brown\else black\fi}
\newcommand{\SLarrow}[1]{\textcolor{\txncolor{#1}}{$\uparrow$}}
\newcommand{\XLarrow}[1]{\textcolor{\txncolor{#1}}{$\Uparrow$}}
\newcommand{\gradedXLarrow}[1]{\textcolor{\txncolor{#1}}{$\uparrow\!\!\Uparrow$}}
\newcommand{\SUarrow}[1]{\textcolor{\txncolor{#1}}{$\downarrow$}}
\newcommand{\XUarrow}[1]{\textcolor{\txncolor{#1}}{$\Downarrow$}}
\newcommand{\redcircled}[1]{\tikz[baseline=(X.base)]{\node[draw=red,thick,circle,inner sep=0.5pt] (X) {#1};}}
\begin{document}
)";

// (txn, resource) groups that hold both an SL and an XL: their XL renders as
// a lock upgrade.
std::set<std::pair<int, std::string>> upgrade_groups(const InequalitySystem& sys) {
    std::set<std::pair<int, std::string>> sl;
    for (const Request& r : sys.requests)
        if (r.kind == RequestKind::SL) sl.insert({r.txn, r.resource});
    std::set<std::pair<int, std::string>> out;
    for (const Request& r : sys.requests)
        if (r.kind == RequestKind::XL && sl.count({r.txn, r.resource}))
            out.insert({r.txn, r.resource});
    return out;
}

bool is_upgrade(const Request& r, const std::set<std::pair<int, std::string>>& upgrades) {
    return r.kind == RequestKind::XL && upgrades.count({r.txn, r.resource}) > 0;
}

bool is_culprit(const Item& item, const std::vector<Item>& culprits) {
    return std::find(culprits.begin(), culprits.end(), item) != culprits.end();
}

std::string latex_request(const Request& r, bool upgrade) {
    std::string macro;
    switch (r.kind) {
        case RequestKind::SL: macro = "\\SLarrow"; break;
        case RequestKind::XL: macro = upgrade ? "\\gradedXLarrow" : "\\XLarrow"; break;
        case RequestKind::SU: macro = "\\SUarrow"; break;
        case RequestKind::XU: macro = "\\XUarrow"; break;
    }
    return macro + "{" + std::to_string(r.txn) + "}";
}

std::string latex_item_math(const Item& item) {
    if (const TimePoint* tp = std::get_if<TimePoint>(&item)) return std::to_string(tp->t);
    const Request& r = std::get<Request>(item);
    return kind_label(r.kind) + "_{" + std::to_string(r.txn) + "}^{" + r.resource + "[" +
           std::to_string(r.op_time) + "]}";
}

std::string latex_inequality(const Inequality& ineq) {
    return "$" + latex_item_math(ineq.lhs) + "<" + latex_item_math(ineq.rhs) + "$";
}

std::string text_request(const Request& r, bool upgrade) {
    std::string tok = upgrade ? "^" : "";
    tok += kind_label(r.kind) + std::to_string(r.txn);
    return tok;
}

std::string text_op(const Operation& op) {
    return (op.kind == OpKind::Read ? "r" : "w") + std::to_string(op.txn);
}

// Plateau boundaries grouped by column, labels in ascending txn order.
std::map<int, std::vector<int>> plateaus_by_column(const TableLayout& layout) {
    std::map<int, std::vector<int>> by_col;
    for (const auto& [txn, col] : layout.plateaus) by_col[col].push_back(txn);
    for (auto& [col, txns] : by_col) std::sort(txns.begin(), txns.end());
    return by_col;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

void append_trace_text(std::string& out, const Analysis& a) {
    out += "\n";
    int iteration = 0;
    for (const auto& cycle : a.report.cycles) {
        ++iteration;
        std::vector<std::string> arcs;
        for (const Inequality& ineq : cycle)
            arcs.push_back(item_label(ineq.lhs) + " < " + item_label(ineq.rhs));
        out += "cycle " + std::to_string(iteration) + ": " + join(arcs, ", ") + "\n";
        const Inequality& removed = a.report.removed[iteration - 1];
        out += "removed " + std::to_string(iteration) + ": " + item_label(removed.lhs) + " < " +
               item_label(removed.rhs) + "\n";
    }
    if (a.report.cycles.empty()) out += "no cycles\n";
}

void append_inequalities_text(std::string& out, const Analysis& a) {
    out += "\ninequalities (" + std::to_string(a.system.inequalities.size()) + "):\n";
    for (const Inequality& ineq : a.system.inequalities)
        out += item_label(ineq.lhs) + " < " + item_label(ineq.rhs) + "  [" +
               reason_label(ineq.reason) + "]\n";
}

json inequality_json(const Inequality& ineq) {
    return json{{"lhs", item_label(ineq.lhs)},
                {"rhs", item_label(ineq.rhs)},
                {"reason", reason_label(ineq.reason)}};
}

}  // namespace

std::string render_latex(const Analysis& a, const RenderOptions& opts) {
    const TableLayout& layout = a.layout;
    const Schedule& s = a.schedule;
    auto upgrades = upgrade_groups(a.system);

    std::string out = kLatexPreamble;
    out += "\n\\SetTblrInner{colsep=0pt}\n";
    out += "\\begin{tblr}{cells ={c},\n";
    out += "column{1}={5mm},rows={6mm},vline{2}={black},\n";
    out += "hlines={black},hline{Z}={0pt}";
    for (const auto& [col, txns] : plateaus_by_column(layout)) {
        std::vector<std::string> labels;
        for (int txn : txns) labels.push_back(std::to_string(txn));
        std::string pos = std::to_string(col + 3);  // line after this column
        out += ",\nvline{" + pos + "}={gray,dashed},\n";
        out += "vline{" + pos + "} = {Z}{text=\\clap{" + join(labels, ",") + "}}";
    }
    out += "\n}";

    // Header row: operation times at their columns.
    for (const Column& col : layout.columns) {
        out += "&";
        for (const Item& item : col.entries)
            if (const TimePoint* tp = std::get_if<TimePoint>(&item)) out += std::to_string(tp->t);
    }
    out += "\\\\\n";

    for (const std::string& resource : layout.resource_rows) {
        out += "$" + resource + "$";
        for (const Column& col : layout.columns) {
            out += "&";
            for (const Item& item : col.entries) {
                if (const TimePoint* tp = std::get_if<TimePoint>(&item)) {
                    const Operation& op = s.ops[tp->t - 1];
                    if (op.resource == resource)
                        out += std::string("$") + (op.kind == OpKind::Read ? "r" : "w") + "_{" +
                               std::to_string(op.txn) + "}$";
                } else {
                    const Request& r = std::get<Request>(item);
                    if (r.resource != resource) continue;
                    std::string glyph = latex_request(r, is_upgrade(r, upgrades));
                    if (is_culprit(item, layout.culprit_items))
                        glyph = "\\redcircled{" + glyph + "}";
                    out += glyph;
                }
            }
        }
        out += "\\\\\n";
    }
    out += "&\n\\end{tblr}\n";

    out += "\n\\medskip\n\\noindent\\textit{Legend}\\\\\n";
    out += "\\SLarrow{}: read lock request\\\\\n";
    out += "\\XLarrow{}: write lock request\\\\\n";
    out += "\\gradedXLarrow{}: lock upgrade\\\\\n";
    out += "\\SUarrow{}\\,\\XUarrow{}: unlock request\n";

    if (opts.include_inequalities) {
        out += "\n\\medskip\n\\noindent\\textit{Inequalities (" +
               std::to_string(a.system.inequalities.size()) + ")}\\\\\n";
        for (const Inequality& ineq : a.system.inequalities)
            out += latex_inequality(ineq) + "\\\\\n";
    }
    if (opts.include_trace) {
        out += "\n\\medskip\n\\noindent\\textit{Repair trace}\\\\\n";
        int iteration = 0;
        for (const auto& cycle : a.report.cycles) {
            ++iteration;
            std::vector<std::string> arcs;
            for (const Inequality& ineq : cycle) arcs.push_back(latex_inequality(ineq));
            out += "cycle " + std::to_string(iteration) + ": " + join(arcs, ", ") + "\\\\\n";
            out += "removed: " + latex_inequality(a.report.removed[iteration - 1]) + "\\\\\n";
        }
        if (a.report.cycles.empty()) out += "no cycles\\\\\n";
    }

    out += "\\end{document}\n";
    return out;
}

std::string render_text(const Analysis& a, const RenderOptions& opts) {
    const TableLayout& layout = a.layout;
    const Schedule& s = a.schedule;
    auto upgrades = upgrade_groups(a.system);
    auto plateau_cols = plateaus_by_column(layout);

    const std::size_t ncols = layout.columns.size();
    std::vector<std::vector<std::string>> rows;

    // Header: resource label column, then the operation times.
    std::vector<std::string> header(ncols + 1);
    for (const Column& col : layout.columns)
        for (const Item& item : col.entries)
            if (const TimePoint* tp = std::get_if<TimePoint>(&item))
                header[col.index + 1] = std::to_string(tp->t);
    rows.push_back(std::move(header));

    for (const std::string& resource : layout.resource_rows) {
        std::vector<std::string> row(ncols + 1);
        row[0] = resource;
        for (const Column& col : layout.columns) {
            std::vector<std::string> parts;
            for (const Item& item : col.entries) {
                if (const TimePoint* tp = std::get_if<TimePoint>(&item)) {
                    const Operation& op = s.ops[tp->t - 1];
                    if (op.resource == resource) parts.push_back(text_op(op));
                } else {
                    const Request& r = std::get<Request>(item);
                    if (r.resource != resource) continue;
                    std::string tok = text_request(r, is_upgrade(r, upgrades));
                    if (is_culprit(item, layout.culprit_items)) {
                        tok += "!";
                        if (opts.color) tok = "\x1b[31m" + tok + "\x1b[0m";
                    }
                    parts.push_back(tok);
                }
            }
            row[col.index + 1] = join(parts, ",");
        }
        rows.push_back(std::move(row));
    }

    if (!plateau_cols.empty()) {
        std::vector<std::string> footer(ncols + 1);
        for (const auto& [col, txns] : plateau_cols) {
            std::vector<std::string> marks;
            for (int txn : txns) marks.push_back("|" + std::to_string(txn));
            footer[col + 1] = join(marks, ",");
        }
        rows.push_back(std::move(footer));
    }

    // ANSI escapes must not count toward the column widths.
    auto visible_width = [](const std::string& cell) {
        std::size_t w = 0;
        bool esc = false;
        for (char c : cell) {
            if (esc) {
                if (c == 'm') esc = false;
            } else if (c == '\x1b') {
                esc = true;
            } else {
                ++w;
            }
        }
        return w;
    };

    std::vector<std::size_t> widths(ncols + 1, 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], visible_width(row[i]));

    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += ' ';
            line += row[i];
            line.append(widths[i] - visible_width(row[i]), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }

    if (opts.include_trace) append_trace_text(out, a);
    if (opts.include_inequalities) append_inequalities_text(out, a);
    return out;
}

std::string render_json(const Analysis& a, const RenderOptions& opts) {
    json doc;
    doc["schedule"] = format_schedule(a.schedule);
    doc["mode"] = a.mode == Mode::Strict ? "strict" : "standard";
    doc["member"] = a.member();
    doc["inequality_count"] = a.system.inequalities.size();

    json requests = json::array();
    for (const Request& r : a.system.requests) requests.push_back(item_label(r));
    doc["requests"] = std::move(requests);

    json removed = json::array();
    for (const Inequality& ineq : a.report.removed) removed.push_back(inequality_json(ineq));
    doc["removed"] = std::move(removed);

    if (a.report.has_culprit())
        doc["culprit"] = json::array(
            {item_label(a.report.culprit().lhs), item_label(a.report.culprit().rhs)});
    else
        doc["culprit"] = nullptr;

    json groups = json::array();
    for (const auto& group : a.pushed_order.groups) {
        json g = json::array();
        for (const Item& item : group) g.push_back(item_label(item));
        groups.push_back(std::move(g));
    }
    doc["groups"] = std::move(groups);

    json columns = json::array();
    for (const Column& col : a.layout.columns) {
        json c = json::array();
        for (const Item& item : col.entries) c.push_back(item_label(item));
        columns.push_back(std::move(c));
    }
    doc["columns"] = std::move(columns);

    json plateaus = json::object();
    for (const auto& [txn, col] : a.layout.plateaus) plateaus[std::to_string(txn)] = col;
    doc["plateaus"] = std::move(plateaus);

    if (opts.include_inequalities) {
        json ineqs = json::array();
        for (const Inequality& ineq : a.system.inequalities)
            ineqs.push_back(inequality_json(ineq));
        doc["inequalities"] = std::move(ineqs);
    }
    if (opts.include_trace) {
        json trace = json::array();
        for (const auto& cycle : a.report.cycles) {
            json c = json::array();
            for (const Inequality& ineq : cycle) c.push_back(inequality_json(ineq));
            trace.push_back(std::move(c));
        }
        doc["trace"] = std::move(trace);
    }

    return doc.dump() + "\n";
}

std::string render(const Analysis& a, const RenderOptions& opts) {
    switch (opts.format) {
        case RenderFormat::Latex: return render_latex(a, opts);
        case RenderFormat::Json: return render_json(a, opts);
        case RenderFormat::Text: break;
    }
    return render_text(a, opts);
}

}  // namespace twopl
