#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "twopl/schedule.hpp"

namespace twopl {

enum class Mode { Standard, Strict };

enum class RequestKind { SL, XL, SU, XU };

bool is_lock(RequestKind k);
bool is_unlock(RequestKind k);

// A lock or unlock request made by a transaction on a resource; op_time ties
// the request to the operation it serves.
struct Request {
    RequestKind kind = RequestKind::SL;
    int txn = 0;
    std::string resource;
    int op_time = 0;

    auto operator<=>(const Request&) const = default;
};

struct TimePoint {
    int t = 0;

    auto operator<=>(const TimePoint&) const = default;
};

// One side of an inequality: either a schedule time point or a request.
using Item = std::variant<TimePoint, Request>;

bool is_time_point(const Item& item);
bool is_request(const Item& item);
bool is_lock_item(const Item& item);
bool is_unlock_item(const Item& item);
const Request* as_request(const Item& item);

// Canonical item spelling: "t4", "SL1^z[8]".
std::string item_label(const Item& item);
std::string kind_label(RequestKind k);

enum class Reason { LockBeforeOp, OpBeforeUnlock, Conflict, TwoPhase, TimeChain };

std::string reason_label(Reason r);

struct Inequality {
    Item lhs;
    Item rhs;
    Reason reason = Reason::TimeChain;

    auto operator<=>(const Inequality&) const = default;
};

// The full precedence-constraint set derived from a schedule. Inequalities
// and requests both keep their creation order; duplicates are merged.
struct InequalitySystem {
    std::vector<Inequality> inequalities;
    std::vector<Request> requests;
    int n = 0;
    Mode mode = Mode::Standard;
};

// Lock/unlock requests needed by a schedule, one group per (txn, resource):
// reads only give SL+SU, a leading write gives XL+XU, reads upgraded by a
// later write give SL+XL+XU.
std::vector<Request> derive_requests(const Schedule& s);

// The request that covers op, and the one that releases op's group.
Request lock_for(const Operation& op, const std::vector<Request>& requests);
Request release_for(const Operation& op, const std::vector<Request>& requests);

InequalitySystem build_inequalities(const Schedule& s, Mode mode = Mode::Standard);

}  // namespace twopl
