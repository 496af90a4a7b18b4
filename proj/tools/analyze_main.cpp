#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twopl/render.hpp"

namespace {

constexpr int kExitMember = 0;
constexpr int kExitNonMember = 1;
constexpr int kExitError = 2;

int fail(const std::string& message) {
    std::cerr << "analyze: " << message << "\n";
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decides 2PL membership of a schedule and renders the lock/unlock timeline"};

    std::string schedule_text;
    std::string file_path;
    bool from_stdin = false;
    std::string mode_name = "standard";
    std::string format_name = "text";
    std::string output_path;
    bool include_inequalities = false;
    bool include_trace = false;

    auto* inline_opt =
        app.add_option("schedule", schedule_text,
                       "Schedule text, e.g. \"r1(y) r2(z) w2(z)\" (may be empty)");
    app.add_option("--file", file_path, "Read the schedule from a file");
    app.add_flag("--stdin", from_stdin, "Read the schedule from standard input");
    app.add_option("--mode", mode_name, "Locking discipline")
        ->check(CLI::IsMember({"standard", "strict"}));
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"latex", "text", "json"}));
    app.add_flag("--inequalities", include_inequalities, "Include the full inequality listing");
    app.add_flag("--trace", include_trace, "Include per-iteration cycles and removals");
    app.add_option("--output", output_path, "Write the rendering to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    int sources = (inline_opt->count() > 0 ? 1 : 0) + (!file_path.empty() ? 1 : 0) +
                  (from_stdin ? 1 : 0);
    if (sources != 1)
        return fail("exactly one of <schedule>, --file or --stdin must be given");

    std::string text = schedule_text;
    if (!file_path.empty()) {
        std::ifstream in(file_path);
        if (!in) return fail("cannot read '" + file_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    } else if (from_stdin) {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }

    twopl::Schedule schedule;
    try {
        schedule = twopl::parse_schedule(text);
    } catch (const twopl::ParseError& e) {
        return fail(std::string("schedule parse error at ") + e.what());
    }

    twopl::RenderOptions opts;
    opts.format = format_name == "latex"  ? twopl::RenderFormat::Latex
                  : format_name == "json" ? twopl::RenderFormat::Json
                                          : twopl::RenderFormat::Text;
    opts.include_inequalities = include_inequalities;
    opts.include_trace = include_trace;
    opts.color = opts.format == twopl::RenderFormat::Text && output_path.empty() &&
                 isatty(fileno(stdout)) && std::getenv("NO_COLOR") == nullptr;

    twopl::Mode mode = mode_name == "strict" ? twopl::Mode::Strict : twopl::Mode::Standard;
    twopl::Analysis analysis = twopl::analyze(schedule, mode);
    std::string rendered = twopl::render(analysis, opts);

    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) return fail("cannot write '" + output_path + "'");
        out << rendered;
        if (!out) return fail("error while writing '" + output_path + "'");
    } else {
        std::cout << rendered;
    }

    return analysis.member() ? kExitMember : kExitNonMember;
}
