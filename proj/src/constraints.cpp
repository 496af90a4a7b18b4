#include "twopl/constraints.hpp"

#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace twopl {

bool is_lock(RequestKind k) { return k == RequestKind::SL || k == RequestKind::XL; }
bool is_unlock(RequestKind k) { return !is_lock(k); }

bool is_time_point(const Item& item) { return std::holds_alternative<TimePoint>(item); }
bool is_request(const Item& item) { return std::holds_alternative<Request>(item); }

const Request* as_request(const Item& item) { return std::get_if<Request>(&item); }

bool is_lock_item(const Item& item) {
    const Request* r = as_request(item);
    return r && is_lock(r->kind);
}

bool is_unlock_item(const Item& item) {
    const Request* r = as_request(item);
    return r && is_unlock(r->kind);
}

std::string kind_label(RequestKind k) {
    switch (k) {
        case RequestKind::SL: return "SL";
        case RequestKind::XL: return "XL";
        case RequestKind::SU: return "SU";
        case RequestKind::XU: return "XU";
    }
    return "?";
}

std::string item_label(const Item& item) {
    if (const TimePoint* tp = std::get_if<TimePoint>(&item)) return "t" + std::to_string(tp->t);
    const Request& r = std::get<Request>(item);
    return kind_label(r.kind) + std::to_string(r.txn) + "^" + r.resource + "[" +
           std::to_string(r.op_time) + "]";
}

std::string reason_label(Reason r) {
    switch (r) {
        case Reason::LockBeforeOp: return "lock_before_op";
        case Reason::OpBeforeUnlock: return "op_before_unlock";
        case Reason::Conflict: return "conflict";
        case Reason::TwoPhase: return "two_phase";
        case Reason::TimeChain: return "time_chain";
    }
    return "?";
}

namespace {

struct GroupOps {
    std::optional<int> first_read;
    std::optional<int> first_write;
    int last_read = 0;
    int last_op = 0;
};

// Operations keyed by (txn, resource); map order fixes the creation order of
// the derived requests.
std::map<std::pair<int, std::string>, GroupOps> collect_groups(const Schedule& s) {
    std::map<std::pair<int, std::string>, GroupOps> groups;
    for (const Operation& op : s.ops) {
        GroupOps& g = groups[{op.txn, op.resource}];
        if (op.kind == OpKind::Read) {
            if (!g.first_read) g.first_read = op.time;
            g.last_read = op.time;
        } else if (!g.first_write) {
            g.first_write = op.time;
        }
        g.last_op = op.time;
    }
    return groups;
}

}  // namespace

std::vector<Request> derive_requests(const Schedule& s) {
    std::vector<Request> out;
    for (const auto& [key, g] : collect_groups(s)) {
        const auto& [txn, resource] = key;
        if (!g.first_write) {
            out.push_back({RequestKind::SL, txn, resource, *g.first_read});
            out.push_back({RequestKind::SU, txn, resource, g.last_read});
            continue;
        }
        // Skip rules: a write-first group needs no SL, a write-bearing group
        // no SU; the XU protects everything up to the group's last operation.
        if (g.first_read && *g.first_read < *g.first_write)
            out.push_back({RequestKind::SL, txn, resource, *g.first_read});
        out.push_back({RequestKind::XL, txn, resource, *g.first_write});
        out.push_back({RequestKind::XU, txn, resource, g.last_op});
    }
    return out;
}

Request lock_for(const Operation& op, const std::vector<Request>& requests) {
    const Request* sl = nullptr;
    const Request* xl = nullptr;
    for (const Request& r : requests) {
        if (r.txn != op.txn || r.resource != op.resource) continue;
        if (r.kind == RequestKind::SL) sl = &r;
        if (r.kind == RequestKind::XL) xl = &r;
    }
    if (op.kind == OpKind::Read && sl && (!xl || op.time < xl->op_time)) return *sl;
    assert(xl != nullptr);
    return *xl;
}

Request release_for(const Operation& op, const std::vector<Request>& requests) {
    const Request* su = nullptr;
    const Request* xu = nullptr;
    for (const Request& r : requests) {
        if (r.txn != op.txn || r.resource != op.resource) continue;
        if (r.kind == RequestKind::SU) su = &r;
        if (r.kind == RequestKind::XU) xu = &r;
    }
    if (su) return *su;
    assert(xu != nullptr);
    return *xu;
}

InequalitySystem build_inequalities(const Schedule& s, Mode mode) {
    InequalitySystem sys;
    sys.mode = mode;
    sys.n = static_cast<int>(s.size());
    sys.requests = derive_requests(s);

    std::set<Inequality> seen;
    auto add = [&](Item lhs, Item rhs, Reason reason) {
        Inequality ineq{std::move(lhs), std::move(rhs), reason};
        if (seen.insert(ineq).second) sys.inequalities.push_back(std::move(ineq));
    };

    for (const Request& r : sys.requests)
        if (is_lock(r.kind)) add(r, TimePoint{r.op_time}, Reason::LockBeforeOp);

    for (const Request& r : sys.requests)
        if (is_unlock(r.kind)) add(TimePoint{r.op_time}, r, Reason::OpBeforeUnlock);

    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        for (std::size_t j = i + 1; j < s.ops.size(); ++j) {
            const Operation& a = s.ops[i];
            const Operation& b = s.ops[j];
            if (a.txn == b.txn || a.resource != b.resource) continue;
            if (a.kind != OpKind::Write && b.kind != OpKind::Write) continue;
            add(release_for(a, sys.requests), lock_for(b, sys.requests), Reason::Conflict);
        }
    }

    std::set<int> txns;
    for (const Request& r : sys.requests) txns.insert(r.txn);
    for (int txn : txns) {
        for (const Request& l : sys.requests) {
            if (l.txn != txn || !is_lock(l.kind)) continue;
            for (const Request& u : sys.requests)
                if (u.txn == txn && is_unlock(u.kind)) add(l, u, Reason::TwoPhase);
        }
    }

    for (int t = 1; t < sys.n; ++t) add(TimePoint{t}, TimePoint{t + 1}, Reason::TimeChain);

    if (mode == Mode::Strict) {
        // Write locks are held until the transaction's end: its last
        // operation precedes every XU it owns.
        std::map<int, int> last_op;
        for (const Operation& op : s.ops)
            last_op[op.txn] = std::max(last_op[op.txn], op.time);
        for (const auto& [txn, t] : last_op)
            for (const Request& r : sys.requests)
                if (r.txn == txn && r.kind == RequestKind::XU)
                    add(TimePoint{t}, r, Reason::OpBeforeUnlock);
    }

    return sys;
}

}  // namespace twopl
