#pragma once

#include "skillpddl/abstraction.h"
#include "skillpddl/state.h"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace skillpddl {

struct PddlAction {
    std::string name;
    std::vector<std::string> precondition;
    std::vector<std::string> add;
    std::vector<std::string> del;

    bool operator==(const PddlAction &) const = default;
};

struct PddlDomainDoc {
    std::string name;
    std::vector<std::string> predicates;
    std::vector<PddlAction> actions;

    bool operator==(const PddlDomainDoc &) const = default;
};

struct PddlProblemDoc {
    std::string name;
    std::string domain;
    std::vector<std::string> init;
    std::vector<std::string> goal;

    bool operator==(const PddlProblemDoc &) const = default;
};

struct Plan {
    std::vector<std::string> actions;

    std::size_t length() const { return actions.size(); }
};

// One zero-arity predicate per symbol, one action op_<i> per operator.
PddlDomainDoc emit_domain(const SymbolicDomain &d);
std::string domain_text(const PddlDomainDoc &doc);
PddlDomainDoc parse_domain(std::string_view text);

std::set<SymbolId> ground_state(const std::vector<Symbol> &symbols, const LowLevelState &x);

PddlProblemDoc emit_problem(const SymbolicDomain &d, const LowLevelState &init_state,
                            const std::set<SymbolId> &goal);
std::string problem_text(const PddlProblemDoc &doc);
PddlProblemDoc parse_problem(std::string_view text);

// Breadth-first over predicate sets under STRIPS semantics; actions are
// expanded in domain order, so the first shortest plan found is returned.
std::optional<Plan> plan_bfs(const PddlDomainDoc &domain, const PddlProblemDoc &problem,
                             int max_depth);

// Replays a plan and checks that every step applies and the goal holds.
bool validate_plan(const PddlDomainDoc &domain, const PddlProblemDoc &problem, const Plan &plan);

}  // namespace skillpddl
