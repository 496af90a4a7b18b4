// Acceptance suite: runs every acceptance check at its stated tolerance and
// prints one PASS/FAIL line per criterion. Usage: test_acceptance <analyze-cli>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "test_support.hpp"
#include "twopl/render.hpp"

using namespace twopl;
using nlohmann::json;

namespace {

const char* kS1 = "r1(y) r2(z) w2(z) r1(x) w2(y) r2(x) w2(x) r1(z)";
const char* kS2 = "r4(x) w3(x) r4(z) w4(y) r2(x) r1(x) w2(z) w3(y) r2(y) w1(x) w1(y)";

std::string g_cli_path;

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

struct CommandResult {
    std::string output;
    int exit_code = -1;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<std::vector<std::string>> kPaperS2Groups = {
    {"SL4^x[1]"},
    {"SL4^z[3]", "XL4^y[4]", "t1"},
    {"SU4^x[1]"},
    {"XL3^x[2]"},
    {"t2"},
    {"t3"},
    {"SU4^z[3]", "t4"},
    {"XU4^y[4]", "XL2^z[7]"},
    {"XL3^y[8]"},
    {"XU3^x[2]"},
    {"SL2^x[5]"},
    {"t5", "SL1^x[6]"},
    {"t6"},
    {"t7"},
    {"t8"},
    {"XU3^y[8]"},
    {"SL2^y[9]"},
    {"SU2^x[5]", "t9", "XU2^z[7]"},
    {"XL1^x[10]", "SU2^y[9]"},
    {"XL1^y[11]", "t10"},
    {"t11", "XU1^x[10]"},
    {"XU1^y[11]"},
};

void criterion_1(Checker& c) {
    auto start = std::chrono::steady_clock::now();
    c.require(build_inequalities(parse_schedule(kS1)).inequalities.size() == 48,
              "S1 must yield exactly 48 inequalities");
    c.require(build_inequalities(parse_schedule(kS2)).inequalities.size() == 72,
              "S2 must yield exactly 72 inequalities");
    c.require(seconds_since(start) < 1.0, "counts must be computed in under 1 s");
}

void criterion_2(Checker& c) {
    ConstraintGraph g = build_graph(build_inequalities(parse_schedule(kS1)));
    auto arc_present = [&](const std::string& lhs, const std::string& rhs) {
        for (const Arc& a : g.arcs())
            if (item_label(g.item(a.from)) == lhs && item_label(g.item(a.to)) == rhs) return true;
        return false;
    };
    c.require(!test::graph_member(parse_schedule(kS1)), "S1 must be a non-member");
    c.require(arc_present("XU2^z[3]", "SL1^z[8]"), "missing arc XU2^z[3] < SL1^z[8]");
    c.require(arc_present("SL1^z[8]", "SU1^x[4]"), "missing arc SL1^z[8] < SU1^x[4]");
    c.require(arc_present("SU1^x[4]", "XL2^x[7]"), "missing arc SU1^x[4] < XL2^x[7]");
    c.require(arc_present("XL2^x[7]", "XU2^z[3]"), "missing arc XL2^x[7] < XU2^z[3]");
    auto cycle = find_minimal_cycle(g);
    c.require(cycle.has_value() && cycle->size() == 4, "minimal cycle must have 4 arcs");
    c.require(!test::short_cycle_exists(g, 3), "no cycle of length <= 3 may exist");
}

void criterion_3(Checker& c) {
    ConstraintGraph g = build_graph(build_inequalities(parse_schedule(kS1)));
    RepairReport report = repair(g);
    c.require(report.removed.size() == 2, "exactly 2 arcs must be removed");
    for (const Inequality& ineq : report.removed) {
        const Request* lock = as_request(ineq.lhs);
        const Request* unlock = as_request(ineq.rhs);
        bool preferred = ineq.reason == Reason::TwoPhase && lock && unlock &&
                         is_lock(lock->kind) && is_unlock(unlock->kind) &&
                         lock->op_time > unlock->op_time;
        c.require(preferred, "removed arc must be two-phase with lock op_time > unlock op_time");
    }
    c.require(is_acyclic(g), "residual graph must be acyclic");

    Analysis a = analyze(parse_schedule(kS1));
    c.require(a.layout.culprit_items.size() == 2 && report.has_culprit() &&
                  a.layout.culprit_items[0] == report.culprit().lhs &&
                  a.layout.culprit_items[1] == report.culprit().rhs,
              "culprit items must be the endpoints of the first removed arc");

    // independent re-run of the repair loop on a fresh graph
    ConstraintGraph fresh = build_graph(build_inequalities(parse_schedule(kS1)));
    std::vector<Inequality> removed;
    while (auto cycle = find_minimal_cycle(fresh)) {
        ArcId target = select_removal_arc(fresh, *cycle);
        removed.push_back(fresh.arc_inequality(target));
        fresh.remove_arc(target);
    }
    c.require(removed == report.removed, "independent repair run must agree");
    c.require(is_acyclic(fresh), "independent residual must be satisfiable (acyclic)");
}

void criterion_4(Checker& c) {
    Analysis a = analyze(parse_schedule(kS2));
    c.require(a.member(), "S2 must be a member");
    c.require(a.order.item_count() == 32, "linearization must contain exactly 32 items");
    std::size_t requests = 0, time_points = 0;
    for (const auto& group : a.order.groups)
        for (const Item& item : group) (is_request(item) ? requests : time_points) += 1;
    c.require(requests == 21 && time_points == 11, "items must split 21 requests + 11 times");
    c.require(test::check_grouped_order(a.order, a.graph) == "",
              "linearization must respect every arc of the graph");
    c.require(test::check_grouped_order(a.pushed_order, a.graph) == "",
              "pushed linearization must respect every arc of the graph");

    std::map<std::string, std::size_t> paper_group;
    for (std::size_t i = 0; i < kPaperS2Groups.size(); ++i)
        for (const std::string& label : kPaperS2Groups[i]) paper_group[label] = i;
    bool compatible = paper_group.size() == 32;
    for (const Arc& arc : a.graph.arcs()) {
        auto lhs = paper_group.find(item_label(a.graph.item(arc.from)));
        auto rhs = paper_group.find(item_label(a.graph.item(arc.to)));
        if (lhs == paper_group.end() || rhs == paper_group.end() || lhs->second >= rhs->second)
            compatible = false;
    }
    c.require(compatible, "published 22-group sequence must be order-compatible");
}

void criterion_5(Checker& c) {
    auto start = std::chrono::steady_clock::now();
    std::vector<Operation> alphabet;
    for (int txn = 1; txn <= 2; ++txn)
        for (const char* res : {"x", "y"})
            for (OpKind kind : {OpKind::Read, OpKind::Write})
                alphabet.push_back({kind, txn, res, 0});

    long mismatches = 0;
    long total = 0;
    std::size_t combos = 1;
    for (int i = 0; i < 4; ++i) combos *= alphabet.size();
    for (std::size_t code = 0; code < combos; ++code) {
        Schedule s;
        std::size_t rest = code;
        for (int t = 1; t <= 4; ++t, rest /= alphabet.size()) {
            Operation op = alphabet[rest % alphabet.size()];
            op.time = t;
            s.ops.push_back(op);
        }
        ++total;
        if (test::graph_member(s) != test::oracle_is_two_phase(s)) ++mismatches;
    }
    c.require(total == 4096, "sweep must cover all 4096 schedules");

    std::mt19937 rng(50001);
    for (int i = 0; i < 500; ++i) {
        int n = std::uniform_int_distribution<int>(5, 6)(rng);
        Schedule s = test::random_schedule(rng, 2, 2, n);
        if (test::graph_member(s) != test::oracle_is_two_phase(s)) ++mismatches;
    }
    c.require(mismatches == 0,
              "graph membership must equal the semantic oracle (mismatches: " +
                  std::to_string(mismatches) + ")");
    c.require(seconds_since(start) < 60.0, "oracle sweep must finish in under 60 s");
}

void criterion_6(Checker& c) {
    std::mt19937 rng(60001);
    int members = 0;
    for (int i = 0; i < 200; ++i) {
        int n = std::uniform_int_distribution<int>(1, 10)(rng);
        Schedule s = test::random_serial_schedule(rng, 3, 3, n);
        if (test::graph_member(s)) ++members;
    }
    c.require(members == 200, "all 200 serial schedules must be members (got " +
                                  std::to_string(members) + ")");
}

void criterion_7(Checker& c) {
    Schedule s = parse_schedule("w1(x) r2(x) w1(y)");
    c.require(test::graph_member(s, Mode::Standard), "schedule must be a member in standard mode");
    c.require(!test::graph_member(s, Mode::Strict), "schedule must be a non-member in strict mode");
    Analysis strict = analyze(s, Mode::Strict);
    c.require(!strict.report.removed.empty(), "strict repair loop must remove at least one arc");
}

void criterion_8(Checker& c) {
    const std::string golden_dir = GOLDEN_DIR;
    struct Golden {
        const char* schedule;
        const char* file;
        std::size_t circles;
        std::vector<std::string> labels;
        std::vector<std::string> absent;
    };
    const std::vector<Golden> goldens = {
        {kS1, "s1.tex", 2, {"text=\\clap{2}"}, {"text=\\clap{1}"}},
        {kS2,
         "s2.tex",
         0,
         {"text=\\clap{4}", "text=\\clap{3}", "text=\\clap{2}", "text=\\clap{1}"},
         {}},
    };
    for (const Golden& golden : goldens) {
        std::string expected = read_file(golden_dir + "/" + golden.file);
        c.require(!expected.empty(), std::string("golden file missing: ") + golden.file);
        std::string actual = render_latex(analyze(parse_schedule(golden.schedule)));
        c.require(actual == expected, std::string("latex output must byte-match ") + golden.file);

        std::size_t circles = 0;
        for (std::size_t pos = expected.find("\\redcircled{"); pos != std::string::npos;
             pos = expected.find("\\redcircled{", pos + 1))
            ++circles;
        c.require(circles == golden.circles,
                  std::string(golden.file) + ": unexpected number of red circles");
        for (const std::string& label : golden.labels)
            c.require(expected.find(label) != std::string::npos,
                      std::string(golden.file) + " must contain " + label);
        for (const std::string& label : golden.absent)
            c.require(expected.find(label) == std::string::npos,
                      std::string(golden.file) + " must not contain " + label);
    }

    for (const char* schedule : {kS1, kS2}) {
        std::string rendered = render_json(analyze(parse_schedule(schedule)));
        json doc = json::parse(rendered, nullptr, false);
        c.require(!doc.is_discarded(), "json output must parse");
        c.require(doc.is_object() && doc["member"].is_boolean() &&
                      doc["inequality_count"].is_number_unsigned() && doc["mode"].is_string() &&
                      doc["schedule"].is_string() && doc["requests"].is_array() &&
                      doc["removed"].is_array() && doc["groups"].is_array() &&
                      doc["columns"].is_array() && doc["plateaus"].is_object() &&
                      (doc["culprit"].is_null() || doc["culprit"].is_array()),
                  "json output must follow the documented schema");
        c.require(doc.dump() + "\n" == rendered, "json output must round-trip byte-identically");
    }
}

void criterion_9(Checker& c) {
    if (g_cli_path.empty()) {
        c.require(false, "path to the analyze binary was not supplied");
        return;
    }
    struct Run {
        const char* schedule;
        int expected_exit;
    };
    const std::vector<Run> runs = {{kS1, 1}, {kS2, 0}};
    for (const Run& run : runs) {
        for (const char* format : {"latex", "text", "json"}) {
            std::string command = "'" + g_cli_path + "' '" + run.schedule + "' --format " +
                                  format + " 2>/dev/null";
            CommandResult first = run_command(command);
            c.require(first.exit_code == run.expected_exit,
                      std::string("unexpected exit code for format ") + format);
            c.require(!first.output.empty(), "output must not be empty");
            for (int i = 1; i < 10; ++i) {
                CommandResult again = run_command(command);
                if (again.output != first.output || again.exit_code != first.exit_code) {
                    c.require(false, std::string("output must be byte-identical across runs (") +
                                         format + ")");
                    break;
                }
            }
        }
    }
    CommandResult empty = run_command("'" + g_cli_path + "' '' --format json 2>/dev/null");
    c.require(empty.exit_code == 0, "empty schedule must exit 0");
    c.require(empty.output.find("\"member\":true") != std::string::npos,
              "empty schedule must be a member");
    CommandResult bad = run_command("'" + g_cli_path + "' 'r1(x) x2(y)' 2>/dev/null");
    c.require(bad.exit_code == 2, "parse errors must exit 2");
    CommandResult no_input = run_command("'" + g_cli_path + "' 2>/dev/null");
    c.require(no_input.exit_code == 2, "missing input must exit 2");
}

void criterion_10(Checker& c) {
    std::mt19937 rng(100001);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        int n = std::uniform_int_distribution<int>(0, 10)(rng);
        Schedule s = test::random_schedule(rng, 3, 3, n);
        std::string violation = test::check_layout_invariants(analyze(s));
        if (!violation.empty()) {
            c.require(false, violation + " on \"" + format_schedule(s) + "\"");
            return;
        }
        ++checked;
    }
    c.require(checked == 500, "all 500 random layouts must be checked");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
        {"inequality counts for S1 (48) and S2 (72)", criterion_1},
        {"S1 verdict and 4-arc minimal cycle", criterion_2},
        {"S1 repair removes exactly 2 preferred arcs", criterion_3},
        {"S2 verdict, 32-item linearization, paper order-compatibility", criterion_4},
        {"graph membership equals brute-force oracle (4096 + 500 schedules)", criterion_5},
        {"200 random serial schedules are members", criterion_6},
        {"strict mode flips the hand-derived example", criterion_7},
        {"renderer goldens and json schema/round-trip", criterion_8},
        {"deterministic CLI output and exit codes", criterion_9},
        {"layout invariants on 500 random schedules", criterion_10},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker checker;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("exception: ") + e.what());
        }
        double elapsed = seconds_since(start);
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
        if (checker.failures.empty()) {
            std::cout << "PASS criterion " << i + 1 << " (" << timing << "): "
                      << criteria[i].first << "\n";
        } else {
            ++failed;
            std::cout << "FAIL criterion " << i + 1 << " (" << timing << "): "
                      << criteria[i].first << "\n";
            for (const std::string& failure : checker.failures)
                std::cout << "    - " << failure << "\n";
        }
    }
    if (failed != 0) std::cout << failed << " criterion(s) failed\n";
    return failed == 0 ? 0 : 1;
}
