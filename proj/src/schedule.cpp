#include "twopl/schedule.hpp"

#include <cctype>
#include <charconv>

namespace twopl {

ParseError::ParseError(std::size_t token_index, const std::string& reason)
    : std::runtime_error("token " + std::to_string(token_index) + ": " + reason),
      token_index_(token_index) {}

namespace {

bool is_separator(char c) {
    return c == ',' || std::isspace(static_cast<unsigned char>(c));
}

bool is_letter(char c) {
    return std::isalpha(static_cast<unsigned char>(c));
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c));
}

Operation parse_token(std::string_view tok, std::size_t index, int time) {
    Operation op;
    op.time = time;
    switch (tok[0]) {
        case 'r': op.kind = OpKind::Read; break;
        case 'w': op.kind = OpKind::Write; break;
        default:
            throw ParseError(index, "unknown action '" + std::string(1, tok[0]) +
                                        "' (expected 'r' or 'w')");
    }

    std::size_t pos = 1;
    std::size_t digits_end = pos;
    while (digits_end < tok.size() && is_digit(tok[digits_end])) ++digits_end;
    if (digits_end == pos) throw ParseError(index, "missing transaction id");
    if (tok[pos] == '0') {
        if (digits_end - pos == 1) throw ParseError(index, "transaction id must be positive");
        throw ParseError(index, "transaction id must not have leading zeros");
    }
    auto [ptr, ec] = std::from_chars(tok.data() + pos, tok.data() + digits_end, op.txn);
    if (ec != std::errc() || op.txn < 1) throw ParseError(index, "invalid transaction id");
    pos = digits_end;

    if (pos >= tok.size() || tok[pos] != '(') throw ParseError(index, "expected '('");
    ++pos;
    std::size_t ident_end = pos;
    while (ident_end < tok.size() && tok[ident_end] != ')') ++ident_end;
    if (ident_end >= tok.size()) throw ParseError(index, "missing ')'");
    if (ident_end == pos) throw ParseError(index, "empty parentheses");
    std::string_view ident = tok.substr(pos, ident_end - pos);
    if (!is_letter(ident[0]))
        throw ParseError(index, "resource identifier must start with a letter");
    for (char c : ident)
        if (!is_letter(c) && !is_digit(c))
            throw ParseError(index, "invalid character in resource identifier");
    if (ident_end + 1 != tok.size()) throw ParseError(index, "unexpected text after ')'");

    op.resource.assign(ident);
    return op;
}

}  // namespace

Schedule parse_schedule(std::string_view text) {
    Schedule s;
    std::size_t pos = 0;
    std::size_t index = 0;
    while (pos < text.size()) {
        if (is_separator(text[pos])) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !is_separator(text[end])) ++end;
        ++index;
        s.ops.push_back(parse_token(text.substr(pos, end - pos), index,
                                    static_cast<int>(s.ops.size()) + 1));
        pos = end;
    }
    return s;
}

std::string format_schedule(const Schedule& s) {
    std::string out;
    for (const Operation& op : s.ops) {
        if (!out.empty()) out += ' ';
        out += op.kind == OpKind::Read ? 'r' : 'w';
        out += std::to_string(op.txn);
        out += '(';
        out += op.resource;
        out += ')';
    }
    return out;
}

}  // namespace twopl
