#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twopl {

enum class OpKind { Read, Write };

struct Operation {
    OpKind kind = OpKind::Read;
    int txn = 0;
    std::string resource;
    int time = 0;  // 1-based position in the schedule

    auto operator<=>(const Operation&) const = default;
};

// An interleaved sequence of read/write operations; the position of an
// operation is its time.
struct Schedule {
    std::vector<Operation> ops;

    std::size_t size() const { return ops.size(); }
    bool empty() const { return ops.empty(); }

    auto operator<=>(const Schedule&) const = default;
};

// Raised on malformed schedule text; token_index is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t token_index, const std::string& reason);

    std::size_t token_index() const { return token_index_; }

private:
    std::size_t token_index_;
};

// Parses notation like "r1(y) r2(z) w2(z)". Tokens are separated by any mix
// of whitespace and commas; blank input is the empty schedule.
Schedule parse_schedule(std::string_view text);

// Single-space-separated notation; inverse of parse_schedule.
std::string format_schedule(const Schedule& s);

}  // namespace twopl
