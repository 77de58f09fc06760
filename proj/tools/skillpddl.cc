// skillpddl: learn a PDDL domain from option executions in a bulb world.
//
//   skillpddl collect  --scenario reset --budget 10000 --seed 7
//   skillpddl abstract --scenario reset --log out/log.jsonl --rep intm
//   skillpddl emit     --domain-json out/domain.json --init 000000 --goal v5_on
//   skillpddl plan     --domain out/domain.pddl --problem out/problem.pddl
//   skillpddl pipeline --scenario reset --rep intm --goal v5_on

#include "skillpddl/errors.h"
#include "skillpddl/pipeline.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace skillpddl;

namespace {

enum Exit { ok = 0, usage = 1, data = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string scenario = "reset";
    std::string rep = "c45";
    long budget = 10000;
    std::uint64_t seed = 7;
    std::string out;
    int max_depth = 64;
    std::string pre_mode = "minimal-union";
    bool strict = true;
    std::string log;
    std::string domain_json;
    std::string init;
    std::vector<std::string> goal;
    std::string domain;
    std::string problem;
};

void add_config_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--scenario", f.scenario, "builtin name (reset, negative, unreachable) or YAML file");
    cmd->add_option("--rep,--representation", f.rep, "c45 or intm")
        ->check(CLI::IsMember({"c45", "intm"}));
    cmd->add_option("--budget", f.budget, "exploration steps");
    cmd->add_option("--seed", f.seed, "exploration seed");
    cmd->add_option("--max-depth", f.max_depth, "planner depth bound");
    cmd->add_option("--pre-mode", f.pre_mode, "minimal-union or all-union")
        ->check(CLI::IsMember({"minimal-union", "all-union"}));
    cmd->add_flag("--strict,!--no-strict", f.strict, "reject trees with several true leaves");
}

void add_out_flag(CLI::App *cmd, Flags &f) {
    cmd->add_option("--out", f.out, "output directory (default $SKILLPDDL_OUT or ./out)");
}

void add_problem_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--init", f.init, "low-level initial state, e.g. 000000 (default all zero)");
    cmd->add_option("--goal", f.goal, "goal symbol labels")->delimiter(',');
}

PipelineConfig make_config(const Flags &f) {
    if (f.budget < 1)
        throw UsageError("--budget must be at least 1");
    if (f.max_depth < 0)
        throw UsageError("--max-depth must not be negative");
    PipelineConfig c;
    c.scenario = f.scenario;
    c.representation = parse_representation(f.rep);
    c.budget = f.budget;
    c.seed = f.seed;
    c.output_dir = f.out;
    c.max_depth = f.max_depth;
    c.precondition_mode = parse_precondition_mode(f.pre_mode);
    c.strict = f.strict;
    return c;
}

ScenarioSpec scenario_of(const std::string &name) {
    try {
        return resolve_scenario(name);
    } catch (const InputError &e) {
        throw UsageError(e.what());
    }
}

std::string under(const std::string &dir, const char *file) {
    return (std::filesystem::path(dir) / file).string();
}

LowLevelState init_state(const std::string &text, int n_vars) {
    if (text.empty())
        return LowLevelState::zeros(n_vars);
    LowLevelState s = parse_state(text);
    if (s.size() != n_vars)
        throw InputError("--init has " + std::to_string(s.size()) + " values, domain has " +
                         std::to_string(n_vars));
    return s;
}

void print_warnings(const SymbolicDomain &d) {
    for (const Warning &w : d.warnings)
        std::cout << "warning [" << w.kind << "] " << w.message << '\n';
}

void print_domain(const SymbolicDomain &d) {
    std::cout << d.factors.size() << " factors, " << d.symbols.size() << " symbols, "
              << d.operators.size() << " operators\n";
    for (const Symbol &s : d.symbols)
        std::cout << "  sigma" << s.id << ' ' << s.label << " := " << to_string(s.grounding) << '\n';
    auto names = [&](const std::set<SymbolId> &ids) {
        std::string out;
        for (SymbolId id : ids)
            out += (out.empty() ? "" : " ") + d.symbol(id).label;
        return "{" + out + "}";
    };
    for (const Operator &op : d.operators)
        std::cout << "  op_" << op.option << " pre=" << names(op.pre) << " eff+=" << names(op.eff_pos)
                  << " eff-=" << names(op.eff_neg) << '\n';
    print_warnings(d);
}

void print_plan(const std::optional<Plan> &plan) {
    if (!plan) {
        std::cout << "no plan\n";
        return;
    }
    std::cout << "plan (" << plan->length() << " steps):";
    for (const auto &a : plan->actions)
        std::cout << ' ' << a;
    std::cout << '\n';
}

int cmd_collect(const Flags &f) {
    PipelineConfig c = make_config(f);
    ScenarioSpec spec = scenario_of(c.scenario);
    TransitionLog log = collect(spec, c.budget, c.seed);
    std::ostringstream text;
    write_log(text, log);
    write_file(under(c.output_dir, "log.jsonl"), text.str());
    std::string summary = dataset_summary(build_datasets(log));
    write_file(under(c.output_dir, "summary.txt"), summary);
    std::cout << log.size() << " transitions written to " << under(c.output_dir, "log.jsonl") << '\n'
              << summary;
    return ok;
}

int cmd_abstract(const Flags &f) {
    PipelineConfig c = make_config(f);
    ScenarioSpec spec = scenario_of(c.scenario);
    std::string log_path = f.log.empty() ? under(c.output_dir, "log.jsonl") : f.log;
    std::istringstream in(read_file(log_path));
    TransitionLog log = read_log(in);
    AbstractionResult r = abstract_log(spec, log, c);
    write_file(under(c.output_dir, "domain.json"), domain_to_json(r, c.representation).dump(2) + "\n");
    print_domain(r.domain);
    return ok;
}

int cmd_emit(const Flags &f) {
    std::string path = f.domain_json.empty() ? under(f.out, "domain.json") : f.domain_json;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(path + ": " + e.what());
    }
    SymbolicDomain d = domain_from_json(j);
    PddlDomainDoc doc = emit_domain(d);
    write_file(under(f.out, "domain.pddl"), domain_text(doc));
    std::cout << "wrote " << under(f.out, "domain.pddl") << " (" << doc.actions.size() << " actions)\n";
    if (!f.goal.empty()) {
        PddlProblemDoc p = emit_problem(d, init_state(f.init, d.n_vars), resolve_goal(d, f.goal));
        write_file(under(f.out, "problem.pddl"), problem_text(p));
        std::cout << "wrote " << under(f.out, "problem.pddl") << '\n';
    } else if (!f.init.empty()) {
        throw UsageError("--init needs --goal");
    }
    return ok;
}

int cmd_plan(const Flags &f) {
    if (f.max_depth < 0)
        throw UsageError("--max-depth must not be negative");
    std::string dpath = f.domain.empty() ? under(f.out, "domain.pddl") : f.domain;
    std::string ppath = f.problem.empty() ? under(f.out, "problem.pddl") : f.problem;
    PddlDomainDoc d;
    PddlProblemDoc p;
    try {
        d = parse_domain(read_file(dpath));
    } catch (const ParseError &e) {
        throw ParseError(dpath + ": " + e.what());
    }
    try {
        p = parse_problem(read_file(ppath));
    } catch (const ParseError &e) {
        throw ParseError(ppath + ": " + e.what());
    }
    auto plan = plan_bfs(d, p, f.max_depth);
    std::string text;
    if (plan)
        for (const auto &a : plan->actions)
            text += a + "\n";
    else
        text = "no plan\n";
    write_file(under(f.out, "plan.txt"), text);
    print_plan(plan);
    return ok;
}

int cmd_pipeline(const Flags &f) {
    PipelineConfig c = make_config(f);
    ScenarioSpec spec = scenario_of(c.scenario);
    PipelineResult r = run_pipeline(c, init_state(f.init, spec.n_vars), f.goal);
    print_domain(r.abstraction.domain);
    if (!f.goal.empty())
        print_plan(r.plan);
    std::cout << "artifacts in " << c.output_dir << '\n';
    return ok;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Learn a PDDL domain from option executions"};
    app.require_subcommand(1);

    Flags f;
    if (const char *env = std::getenv("SKILLPDDL_OUT"); env && *env)
        f.out = env;
    else
        f.out = "out";

    auto *collect_cmd = app.add_subcommand("collect", "explore the scenario and log transitions");
    add_config_flags(collect_cmd, f);
    add_out_flag(collect_cmd, f);

    auto *abstract_cmd = app.add_subcommand("abstract", "learn symbols and operators from a log");
    add_config_flags(abstract_cmd, f);
    add_out_flag(abstract_cmd, f);
    abstract_cmd->add_option("--log", f.log, "transition log (default <out>/log.jsonl)");

    auto *emit_cmd = app.add_subcommand("emit", "write PDDL from a domain.json");
    add_out_flag(emit_cmd, f);
    emit_cmd->add_option("--domain-json", f.domain_json, "intermediate (default <out>/domain.json)");
    add_problem_flags(emit_cmd, f);

    auto *plan_cmd = app.add_subcommand("plan", "breadth-first search over PDDL files");
    add_out_flag(plan_cmd, f);
    plan_cmd->add_option("--domain", f.domain, "domain file (default <out>/domain.pddl)");
    plan_cmd->add_option("--problem", f.problem, "problem file (default <out>/problem.pddl)");
    plan_cmd->add_option("--max-depth", f.max_depth, "planner depth bound");

    auto *pipeline_cmd = app.add_subcommand("pipeline", "collect, abstract, emit and plan");
    add_config_flags(pipeline_cmd, f);
    add_out_flag(pipeline_cmd, f);
    add_problem_flags(pipeline_cmd, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*collect_cmd)
            return cmd_collect(f);
        if (*abstract_cmd)
            return cmd_abstract(f);
        if (*emit_cmd)
            return cmd_emit(f);
        if (*plan_cmd)
            return cmd_plan(f);
        return cmd_pipeline(f);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    }
}
