#pragma once

#include <string>

#include "twopl/analysis.hpp"

namespace twopl {

enum class RenderFormat { Latex, Text, Json };

struct RenderOptions {
    RenderFormat format = RenderFormat::Text;
    bool include_inequalities = false;
    bool include_trace = false;
    bool color = false;  // ANSI highlighting of culprits in text output
};

// All renderers are pure and byte-deterministic; output ends with a newline.
std::string render_latex(const Analysis& a, const RenderOptions& opts = {});
std::string render_text(const Analysis& a, const RenderOptions& opts = {});
std::string render_json(const Analysis& a, const RenderOptions& opts = {});

std::string render(const Analysis& a, const RenderOptions& opts);

}  // namespace twopl
