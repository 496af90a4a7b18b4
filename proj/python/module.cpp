#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "twopl/render.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using namespace twopl;

Mode parse_mode(const std::string& name) {
    if (name == "standard") return Mode::Standard;
    if (name == "strict") return Mode::Strict;
    throw py::value_error("mode must be 'standard' or 'strict'");
}

RenderOptions make_options(RenderFormat format, bool inequalities, bool trace) {
    RenderOptions opts;
    opts.format = format;
    opts.include_inequalities = inequalities;
    opts.include_trace = trace;
    return opts;
}

// Thin value wrapper exposing the analysis as python-friendly views.
struct AnalysisResult {
    Analysis a;

    bool member() const { return a.member(); }
    std::size_t inequality_count() const { return a.system.inequalities.size(); }

    std::vector<std::string> requests() const {
        std::vector<std::string> out;
        for (const Request& r : a.system.requests) out.push_back(item_label(r));
        return out;
    }

    std::vector<std::tuple<std::string, std::string, std::string>> removed() const {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const Inequality& ineq : a.report.removed)
            out.emplace_back(item_label(ineq.lhs), item_label(ineq.rhs),
                             reason_label(ineq.reason));
        return out;
    }

    std::optional<std::pair<std::string, std::string>> culprit() const {
        if (!a.report.has_culprit()) return std::nullopt;
        return std::make_pair(item_label(a.report.culprit().lhs),
                              item_label(a.report.culprit().rhs));
    }

    std::vector<std::vector<std::string>> groups() const {
        std::vector<std::vector<std::string>> out;
        for (const auto& group : a.pushed_order.groups) {
            std::vector<std::string> g;
            for (const Item& item : group) g.push_back(item_label(item));
            out.push_back(std::move(g));
        }
        return out;
    }

    std::vector<std::vector<std::string>> columns() const {
        std::vector<std::vector<std::string>> out;
        for (const Column& col : a.layout.columns) {
            std::vector<std::string> c;
            for (const Item& item : col.entries) c.push_back(item_label(item));
            out.push_back(std::move(c));
        }
        return out;
    }

    std::map<int, int> plateaus() const { return a.layout.plateaus; }

    std::string latex(bool inequalities, bool trace) const {
        return render_latex(a, make_options(RenderFormat::Latex, inequalities, trace));
    }
    std::string text(bool inequalities, bool trace) const {
        return render_text(a, make_options(RenderFormat::Text, inequalities, trace));
    }
    std::string json(bool inequalities, bool trace) const {
        return render_json(a, make_options(RenderFormat::Json, inequalities, trace));
    }
};

}  // namespace

PYBIND11_MODULE(_twopl, m) {
    m.doc() = "Two-phase locking membership analysis of database schedules";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Operation>(m, "Operation")
        .def_property_readonly(
            "kind", [](const Operation& op) { return op.kind == OpKind::Read ? "r" : "w"; })
        .def_readonly("txn", &Operation::txn)
        .def_readonly("resource", &Operation::resource)
        .def_readonly("time", &Operation::time)
        .def("__repr__", [](const Operation& op) {
            Schedule s{{op}};
            return "Operation(" + format_schedule(s) + ")";
        });

    py::class_<Schedule>(m, "Schedule")
        .def("__len__", [](const Schedule& s) { return s.size(); })
        .def("__str__", &format_schedule)
        .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; })
        .def("__repr__",
             [](const Schedule& s) { return "Schedule(\"" + format_schedule(s) + "\")"; })
        .def_readonly("ops", &Schedule::ops);

    m.def("parse", &parse_schedule, "text"_a, "Parse schedule notation like 'r1(y) r2(z)'.");
    m.def("format", &format_schedule, "schedule"_a, "Canonical schedule notation.");

    py::class_<AnalysisResult>(m, "AnalysisResult")
        .def_property_readonly("member", &AnalysisResult::member)
        .def_property_readonly("inequality_count", &AnalysisResult::inequality_count)
        .def_property_readonly("requests", &AnalysisResult::requests)
        .def_property_readonly("removed", &AnalysisResult::removed)
        .def_property_readonly("culprit", &AnalysisResult::culprit)
        .def_property_readonly("groups", &AnalysisResult::groups)
        .def_property_readonly("columns", &AnalysisResult::columns)
        .def_property_readonly("plateaus", &AnalysisResult::plateaus)
        .def("latex", &AnalysisResult::latex, "inequalities"_a = false, "trace"_a = false)
        .def("text", &AnalysisResult::text, "inequalities"_a = false, "trace"_a = false)
        .def("json", &AnalysisResult::json, "inequalities"_a = false, "trace"_a = false);

    m.def(
        "analyze",
        [](const std::string& text, const std::string& mode) {
            return AnalysisResult{analyze(parse_schedule(text), parse_mode(mode))};
        },
        "schedule"_a, "mode"_a = "standard",
        "Analyze a schedule; returns the membership verdict with its explanation.");
    m.def(
        "analyze",
        [](const Schedule& s, const std::string& mode) {
            return AnalysisResult{analyze(s, parse_mode(mode))};
        },
        "schedule"_a, "mode"_a = "standard");
}
