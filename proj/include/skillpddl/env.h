#pragma once

#include "skillpddl/state.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillpddl {

// v == value, with value 0 or 1.
struct Literal {
    VarId var;
    double value;

    bool holds(const LowLevelState &s) const { return s[var] == value; }
    bool operator==(const Literal &) const = default;
};

struct OptionRule {
    OptionId id = 0;
    std::vector<Literal> guard;
    std::map<VarId, double> assignments;
    // Condition under which the explorer treats the option's goal as
    // already achieved and skips it. Empty means "all assignments hold".
    std::vector<Literal> goal;
};

struct ScenarioSpec {
    std::string name;
    int n_vars = 0;
    std::vector<OptionRule> options;
    std::optional<int> exogenous_reset;

    const OptionRule &option(OptionId id) const;
};

struct Outcome {
    bool success = false;
    LowLevelState next_state;
};

constexpr int default_reset_period = 50;

// The three bulbs scenarios: "reset", "negative" and "unreachable".
std::vector<ScenarioSpec> builtin_scenarios();
std::optional<ScenarioSpec> find_builtin(std::string_view name);

// Throws InputError when ids are not o_1..o_r, a variable is out of
// range, or an option assigns nothing.
void validate(const ScenarioSpec &spec);

Outcome execute_option(const ScenarioSpec &spec, const LowLevelState &state, OptionId option);
LowLevelState apply_exogenous(const ScenarioSpec &spec, const LowLevelState &state,
                              long step_counter);
bool goal_holds(const OptionRule &rule, const LowLevelState &state);

// YAML scenario documents; errors carry the offending line.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario_file(const std::string &path);
std::string format_scenario(const ScenarioSpec &spec);

// Builtin name, or a path to a scenario file.
ScenarioSpec resolve_scenario(const std::string &name_or_path);

}  // namespace skillpddl
