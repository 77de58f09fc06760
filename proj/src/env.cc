#include "skillpddl/env.h"

#include "skillpddl/errors.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace skillpddl {

namespace {

// Builders take 1-based bulb numbers to keep the tables readable.
Literal lit(int bulb, int value) {
    return Literal{bulb - 1, static_cast<double>(value)};
}

OptionRule rule(OptionId id, std::vector<Literal> guard,
                std::initializer_list<std::pair<int, int>> assign,
                std::vector<Literal> goal = {}) {
    OptionRule r;
    r.id = id;
    r.guard = std::move(guard);
    for (auto [bulb, value] : assign)
        r.assignments[bulb - 1] = value;
    r.goal = std::move(goal);
    return r;
}

ScenarioSpec reset_scenario() {
    ScenarioSpec s;
    s.name = "reset";
    s.n_vars = 6;
    // o_1 lights b6 and switches the others off; its goal is b6 being lit.
    s.options.push_back(
        rule(1, {}, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 1}}, {lit(6, 1)}));
    s.options.push_back(rule(2, {}, {{1, 1}}));
    for (int i = 3; i <= 6; ++i)
        s.options.push_back(rule(i, {lit(i - 2, 1)}, {{i - 1, 1}}));
    return s;
}

ScenarioSpec negative_scenario() {
    ScenarioSpec s;
    s.name = "negative";
    s.n_vars = 6;
    s.options.push_back(rule(1, {}, {{2, 1}}));
    s.options.push_back(rule(2, {lit(2, 1)}, {{3, 1}}));
    s.options.push_back(rule(3, {}, {{1, 1}, {2, 1}}));
    s.options.push_back(rule(4, {lit(3, 1)}, {{4, 1}}));
    s.options.push_back(rule(5, {lit(4, 1)}, {{5, 1}}));
    s.options.push_back(rule(6, {lit(5, 1)}, {{6, 1}}));
    return s;
}

ScenarioSpec unreachable_scenario() {
    ScenarioSpec s;
    s.name = "unreachable";
    s.n_vars = 6;
    s.exogenous_reset = default_reset_period;
    s.options.push_back(rule(1, {}, {{2, 1}}));
    s.options.push_back(rule(2, {lit(2, 1)}, {{3, 1}}));
    s.options.push_back(rule(3, {lit(2, 0)}, {{1, 1}}));
    s.options.push_back(rule(4, {lit(3, 1)}, {{4, 1}}));
    s.options.push_back(rule(5, {lit(4, 1)}, {{5, 1}}));
    return s;
}

}  // namespace

const OptionRule &ScenarioSpec::option(OptionId id) const {
    if (id < 1 || id > static_cast<int>(options.size()))
        throw InputError("unknown option o" + std::to_string(id) + " for scenario '" + name + "'");
    return options[static_cast<std::size_t>(id - 1)];
}

std::vector<ScenarioSpec> builtin_scenarios() {
    return {reset_scenario(), negative_scenario(), unreachable_scenario()};
}

std::optional<ScenarioSpec> find_builtin(std::string_view name) {
    for (ScenarioSpec &s : builtin_scenarios())
        if (s.name == name)
            return s;
    return std::nullopt;
}

void validate(const ScenarioSpec &spec) {
    if (spec.n_vars < 1)
        throw InputError("scenario '" + spec.name + "' declares no variables");
    if (spec.options.empty())
        throw InputError("scenario '" + spec.name + "' has no options");
    if (spec.exogenous_reset && *spec.exogenous_reset < 1)
        throw InputError("exogenous_reset must be a positive period");
    auto check_var = [&](VarId v, OptionId id) {
        if (v < 0 || v >= spec.n_vars)
            throw InputError("option o" + std::to_string(id) + " references " + var_name(v) +
                             " but the scenario has " + std::to_string(spec.n_vars) +
                             " variables");
    };
    for (std::size_t i = 0; i < spec.options.size(); ++i) {
        const OptionRule &r = spec.options[i];
        if (r.id != static_cast<int>(i) + 1)
            throw InputError("option ids must be contiguous o1..o" +
                             std::to_string(spec.options.size()));
        if (r.assignments.empty())
            throw InputError("option o" + std::to_string(r.id) + " assigns nothing");
        for (const Literal &l : r.guard)
            check_var(l.var, r.id);
        for (const Literal &l : r.goal)
            check_var(l.var, r.id);
        for (const auto &[v, value] : r.assignments) {
            check_var(v, r.id);
            if (value != 0.0 && value != 1.0)
                throw InputError("assignments must be 0 or 1");
        }
    }
}

Outcome execute_option(const ScenarioSpec &spec, const LowLevelState &state, OptionId option) {
    const OptionRule &r = spec.option(option);
    if (state.size() != spec.n_vars)
        throw InputError("state has " + std::to_string(state.size()) + " values, scenario has " +
                         std::to_string(spec.n_vars));
    Outcome out{true, state};
    for (const Literal &l : r.guard) {
        if (!l.holds(state)) {
            out.success = false;
            return out;
        }
    }
    for (const auto &[v, value] : r.assignments)
        out.next_state[v] = value;
    return out;
}

LowLevelState apply_exogenous(const ScenarioSpec &spec, const LowLevelState &state,
                              long step_counter) {
    if (spec.exogenous_reset && step_counter > 0 && step_counter % *spec.exogenous_reset == 0)
        return LowLevelState::zeros(state.size());
    return state;
}

bool goal_holds(const OptionRule &rule, const LowLevelState &state) {
    if (!rule.goal.empty())
        return std::all_of(rule.goal.begin(), rule.goal.end(),
                           [&](const Literal &l) { return l.holds(state); });
    return std::all_of(rule.assignments.begin(), rule.assignments.end(),
                       [&](const auto &a) { return state[a.first] == a.second; });
}

// ---------------------------------------------------------------------------
// Scenario files

namespace {

int line_of(const YAML::Node &node) {
    return node.Mark().line + 1;
}

Literal parse_literal(const YAML::Node &node, const std::regex &pattern, const char *expected) {
    std::string text = node.as<std::string>();
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw ParseError("bad literal '" + text + "', expected " + expected, line_of(node));
    return Literal{std::stoi(m[1].str()) - 1, m[2].str() == "1" ? 1.0 : 0.0};
}

std::vector<Literal> parse_literals(const YAML::Node &node, const std::regex &pattern,
                                    const char *expected) {
    std::vector<Literal> out;
    if (!node)
        return out;
    if (!node.IsSequence())
        throw ParseError("expected a list", line_of(node));
    for (const auto &item : node)
        out.push_back(parse_literal(item, pattern, expected));
    return out;
}

template <typename T>
T scalar(const YAML::Node &node, const char *field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ParseError(std::string("bad value for '") + field + "'", line_of(node));
    }
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
    static const std::regex guard_re(R"(\s*v([1-9][0-9]*)\s*=\s*([01])\s*)");
    static const std::regex assign_re(R"(\s*v([1-9][0-9]*)\s*:=\s*([01])\s*)");

    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException &e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }
    if (!root.IsMap())
        throw ParseError("scenario document must be a mapping", 1);
    for (const char *field : {"name", "n_vars", "options"})
        if (!root[field])
            throw ParseError(std::string("missing field '") + field + "'", line_of(root));

    ScenarioSpec spec;
    spec.name = scalar<std::string>(root["name"], "name");
    spec.n_vars = scalar<int>(root["n_vars"], "n_vars");
    if (root["exogenous_reset"])
        spec.exogenous_reset = scalar<int>(root["exogenous_reset"], "exogenous_reset");

    const YAML::Node options = root["options"];
    if (!options.IsSequence())
        throw ParseError("'options' must be a list", line_of(options));
    for (const auto &item : options) {
        if (!item.IsMap() || !item["id"] || !item["assign"])
            throw ParseError("option needs 'id' and 'assign'", line_of(item));
        OptionRule r;
        r.id = scalar<int>(item["id"], "id");
        r.guard = parse_literals(item["guard"], guard_re, "\"v<i>=0|1\"");
        for (const Literal &l : parse_literals(item["assign"], assign_re, "\"v<i>:=0|1\""))
            r.assignments[l.var] = l.value;
        r.goal = parse_literals(item["goal"], guard_re, "\"v<i>=0|1\"");
        spec.options.push_back(std::move(r));
    }
    try {
        validate(spec);
    } catch (const InputError &e) {
        throw ParseError(e.what(), line_of(options));
    }
    return spec;
}

ScenarioSpec load_scenario_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string format_scenario(const ScenarioSpec &spec) {
    auto literal_list = [](const std::vector<Literal> &ls, const char *op) {
        std::string s = "[";
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (i)
                s += ", ";
            s += "\"" + var_name(ls[i].var) + op + (ls[i].value == 1.0 ? "1" : "0") + "\"";
        }
        return s + "]";
    };
    std::ostringstream out;
    out << "name: " << spec.name << "\n";
    out << "n_vars: " << spec.n_vars << "\n";
    if (spec.exogenous_reset)
        out << "exogenous_reset: " << *spec.exogenous_reset << "\n";
    out << "options:\n";
    for (const OptionRule &r : spec.options) {
        std::vector<Literal> assign;
        for (const auto &[v, value] : r.assignments)
            assign.push_back({v, value});
        out << "  - id: " << r.id << "\n";
        out << "    guard: " << literal_list(r.guard, "=") << "\n";
        out << "    assign: " << literal_list(assign, ":=") << "\n";
        if (!r.goal.empty())
            out << "    goal: " << literal_list(r.goal, "=") << "\n";
    }
    return out.str();
}

ScenarioSpec resolve_scenario(const std::string &name_or_path) {
    if (auto builtin = find_builtin(name_or_path))
        return *builtin;
    if (std::filesystem::exists(name_or_path))
        return load_scenario_file(name_or_path);
    throw InputError("unknown scenario '" + name_or_path +
                     "' (builtins: reset, negative, unreachable)");
}

}  // namespace skillpddl
