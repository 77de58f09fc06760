#include "skillpddl/pipeline.h"

#include "skillpddl/errors.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace skillpddl {

std::string to_string(Representation r) {
    return r == Representation::c45 ? "c45" : "intm";
}

Representation parse_representation(const std::string &s) {
    if (s == "c45")
        return Representation::c45;
    if (s == "intm")
        return Representation::intm;
    throw InputError("representation must be 'c45' or 'intm', got '" + s + "'");
}

std::string to_string(PreconditionMode m) {
    return m == PreconditionMode::minimal_union ? "minimal-union" : "all-union";
}

PreconditionMode parse_precondition_mode(const std::string &s) {
    if (s == "minimal-union")
        return PreconditionMode::minimal_union;
    if (s == "all-union")
        return PreconditionMode::all_union;
    throw InputError("precondition mode must be 'minimal-union' or 'all-union', got '" + s + "'");
}

std::vector<CharacterizingSet> characterize(const DatasetCollection &data, int n_vars,
                                            Representation rep, bool strict) {
    std::vector<CharacterizingSet> out;
    for (const auto &[id, ds] : data.by_option) {
        CharacterizingSet cs;
        cs.option = id;
        cs.mask = compute_mask(ds);
        DecisionTree init_tree = train_tree(ds.init_pos, ds.init_neg, n_vars);
        DecisionTree effect_tree = train_tree(ds.eff_pos, ds.eff_neg, n_vars);
        try {
            if (rep == Representation::c45) {
                cs.init = c45_boxset(init_tree, strict);
                cs.effect = c45_boxset(effect_tree, strict);
            } else {
                cs.init = intm_boxset(init_tree, n_vars, std::nullopt, strict);
                cs.effect = intm_boxset(effect_tree, n_vars, cs.mask, strict);
            }
        } catch (const RestrictionError &e) {
            throw RestrictionError("o" + std::to_string(id) + ": " + e.what());
        }
        out.push_back(std::move(cs));
    }
    return out;
}

std::vector<LowLevelState> probe_states(const ScenarioSpec &spec, long budget,
                                        std::uint64_t seed) {
    std::set<LowLevelState> states;
    for (const TransitionRecord &r : collect(spec, budget, seed)) {
        states.insert(r.before);
        states.insert(r.after);
    }
    return {states.begin(), states.end()};
}

std::vector<Warning> cross_check(const SymbolicDomain &d, const ScenarioSpec &spec,
                                 const std::vector<LowLevelState> &probes) {
    // (option, kind, symbol) -> how many probes showed it, out of how many tried
    std::map<std::tuple<OptionId, std::string, SymbolId>, int> hits;
    std::map<OptionId, int> tried;
    for (const Operator &op : d.operators) {
        for (const LowLevelState &x : probes) {
            auto before = ground_state(d.symbols, x);
            if (!std::includes(before.begin(), before.end(), op.pre.begin(), op.pre.end()))
                continue;
            ++tried[op.option];
            Outcome out = execute_option(spec, x, op.option);
            if (!out.success) {
                ++hits[{op.option, warning_kind::precondition_divergence, 0}];
                continue;
            }
            auto after = ground_state(d.symbols, out.next_state);
            for (SymbolId s : op.eff_pos)
                if (!after.count(s))
                    ++hits[{op.option, warning_kind::positive_effect_divergence, s}];
            for (SymbolId s : op.eff_neg)
                if (after.count(s))
                    ++hits[{op.option, warning_kind::negative_effect_divergence, s}];
        }
    }
    std::vector<Warning> out;
    for (const auto &[key, count] : hits) {
        const auto &[option, kind, symbol] = key;
        std::string of = std::to_string(count) + " of " + std::to_string(tried[option]) +
                         " probe states";
        std::string message = "o" + std::to_string(option) + ": ";
        if (kind == warning_kind::precondition_divergence)
            message += "preconditions hold but the option fails in " + of;
        else if (kind == warning_kind::positive_effect_divergence)
            message += "positive effect " + d.symbol(symbol).label +
                       " does not hold after execution in " + of;
        else
            message += "negative effect " + d.symbol(symbol).label +
                       " still holds after execution in " + of;
        out.push_back({kind, option, message});
    }
    return out;
}

AbstractionResult abstract_log(const ScenarioSpec &spec, const TransitionLog &log,
                               const PipelineConfig &config) {
    validate(spec);
    for (const TransitionRecord &r : log)
        if (r.before.size() != spec.n_vars || r.after.size() != spec.n_vars)
            throw InputError("log record at step " + std::to_string(r.step) +
                             " does not match the scenario's " + std::to_string(spec.n_vars) +
                             " variables");
    AbstractionResult result;
    result.datasets = build_datasets(log);
    for (const OptionRule &rule : spec.options)
        if (!result.datasets.by_option.count(rule.id))
            throw InputError("option o" + std::to_string(rule.id) +
                             " has no successful execution in the log");
    for (const auto &[id, ds] : result.datasets.by_option)
        spec.option(id);

    result.charsets = characterize(result.datasets, spec.n_vars, config.representation,
                                   config.strict);
    AbstractionOptions options;
    options.precondition_mode = config.precondition_mode;
    result.domain = build_domain(result.charsets, spec.n_vars, spec.name, options);

    auto probes = probe_states(spec, config.budget, config.seed + 1);
    for (Warning &w : cross_check(result.domain, spec, probes))
        result.domain.warnings.push_back(std::move(w));
    return result;
}

// ---------------------------------------------------------------------------
// Intermediate document

namespace {

nlohmann::ordered_json boxset_json(const BoxSet &s) {
    auto j = nlohmann::ordered_json::array();
    for (const Box &b : s.boxes)
        j.push_back(format_box(b));
    return j;
}

BoxSet boxset_from_json(const nlohmann::json &j) {
    BoxSet s;
    for (const auto &box : j)
        s.boxes.push_back(parse_box(box.get<std::vector<std::string>>()));
    return s;
}

nlohmann::ordered_json vars_json(const VarSet &vars) {
    auto j = nlohmann::ordered_json::array();
    for (VarId v : vars)
        j.push_back(var_name(v));
    return j;
}

VarSet vars_from_json(const nlohmann::json &j) {
    VarSet vars;
    for (const auto &item : j) {
        auto s = item.get<std::string>();
        if (s.size() < 2 || s[0] != 'v')
            throw ParseError("bad variable name '" + s + "'");
        vars.insert(std::stoi(s.substr(1)) - 1);
    }
    return vars;
}

}  // namespace

nlohmann::ordered_json domain_to_json(const AbstractionResult &r, Representation rep) {
    const SymbolicDomain &d = r.domain;
    nlohmann::ordered_json j;
    j["scenario"] = d.scenario;
    j["representation"] = to_string(rep);
    j["n_vars"] = d.n_vars;
    j["factors"] = nlohmann::ordered_json::array();
    for (const Factor &f : d.factors)
        j["factors"].push_back({{"id", f.id}, {"vars", vars_json(f.vars)}, {"modifiers", f.modifiers}});
    j["charsets"] = nlohmann::ordered_json::array();
    for (const CharacterizingSet &cs : r.charsets)
        j["charsets"].push_back({{"option", cs.option},
                                 {"mask", vars_json(cs.mask)},
                                 {"init", boxset_json(cs.init)},
                                 {"effect", boxset_json(cs.effect)}});
    j["symbols"] = nlohmann::ordered_json::array();
    for (const Symbol &s : d.symbols)
        j["symbols"].push_back({{"id", s.id},
                                {"label", s.label},
                                {"factors", s.factors},
                                {"producers", s.producers},
                                {"grounding", boxset_json(s.grounding)}});
    j["operators"] = nlohmann::ordered_json::array();
    for (const Operator &op : d.operators)
        j["operators"].push_back({{"option", op.option},
                                  {"pre", op.pre},
                                  {"eff_pos", op.eff_pos},
                                  {"eff_neg", op.eff_neg}});
    j["warnings"] = nlohmann::ordered_json::array();
    for (const Warning &w : d.warnings)
        j["warnings"].push_back({{"kind", w.kind}, {"option", w.option}, {"message", w.message}});
    return j;
}

SymbolicDomain domain_from_json(const nlohmann::json &j) {
    try {
        SymbolicDomain d;
        d.scenario = j.at("scenario").get<std::string>();
        d.n_vars = j.at("n_vars").get<int>();
        for (const auto &f : j.at("factors"))
            d.factors.push_back({f.at("id").get<int>(), vars_from_json(f.at("vars")),
                                 f.at("modifiers").get<std::set<OptionId>>()});
        for (const auto &s : j.at("symbols"))
            d.symbols.push_back({s.at("id").get<int>(), s.at("label").get<std::string>(),
                                 boxset_from_json(s.at("grounding")),
                                 s.at("factors").get<std::set<FactorId>>(),
                                 s.at("producers").get<std::set<OptionId>>()});
        for (const auto &op : j.at("operators"))
            d.operators.push_back({op.at("option").get<int>(),
                                   op.at("pre").get<std::set<SymbolId>>(),
                                   op.at("eff_pos").get<std::set<SymbolId>>(),
                                   op.at("eff_neg").get<std::set<SymbolId>>()});
        for (const auto &w : j.at("warnings"))
            d.warnings.push_back({w.at("kind").get<std::string>(), w.at("option").get<int>(),
                                  w.at("message").get<std::string>()});
        for (std::size_t i = 0; i < d.symbols.size(); ++i)
            if (d.symbols[i].id != static_cast<int>(i) + 1)
                throw ConsistencyError("symbol ids must be 1..n in order");
        for (const Operator &op : d.operators)
            for (const auto *ids : {&op.pre, &op.eff_pos, &op.eff_neg})
                for (SymbolId id : *ids)
                    d.symbol(id);
        return d;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad domain document: ") + e.what());
    } catch (const InputError &e) {
        throw ConsistencyError(std::string("domain document references: ") + e.what());
    }
}

std::set<SymbolId> resolve_goal(const SymbolicDomain &d, const std::vector<std::string> &labels) {
    std::set<SymbolId> out;
    for (const std::string &label : labels) {
        auto it = std::find_if(d.symbols.begin(), d.symbols.end(),
                               [&](const Symbol &s) { return s.label == label; });
        if (it == d.symbols.end()) {
            std::string known;
            for (const Symbol &s : d.symbols)
                known += (known.empty() ? "" : ", ") + s.label;
            throw InputError("goal symbol '" + label + "' is not in the vocabulary; available: " +
                             known);
        }
        out.insert(it->id);
    }
    return out;
}

std::string dataset_summary(const DatasetCollection &data) {
    std::ostringstream out;
    out << "option init_pos init_neg eff_pos eff_neg\n";
    for (const auto &[id, ds] : data.by_option)
        out << "o" << id << ' ' << ds.init_pos.size() << ' ' << ds.init_neg.size() << ' '
            << ds.eff_pos.size() << ' ' << ds.eff_neg.size() << '\n';
    for (OptionId id : data.excluded)
        out << "o" << id << " excluded: no successful execution\n";
    return out.str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
}

PipelineResult run_pipeline(const PipelineConfig &config, const LowLevelState &init,
                            const std::vector<std::string> &goal, bool write_files) {
    ScenarioSpec spec = resolve_scenario(config.scenario);
    TransitionLog log = collect(spec, config.budget, config.seed);

    PipelineResult result;
    result.abstraction = abstract_log(spec, log, config);
    const SymbolicDomain &d = result.abstraction.domain;

    PddlDomainDoc domain_doc = emit_domain(d);
    result.domain_pddl = domain_text(domain_doc);
    if (!goal.empty()) {
        PddlProblemDoc problem_doc = emit_problem(d, init, resolve_goal(d, goal));
        result.problem_pddl = problem_text(problem_doc);
        result.plan = plan_bfs(domain_doc, problem_doc, config.max_depth);
    }

    if (write_files) {
        const std::filesystem::path dir(config.output_dir);
        std::ostringstream log_text;
        write_log(log_text, log);
        write_file((dir / "log.jsonl").string(), log_text.str());
        write_file((dir / "summary.txt").string(), dataset_summary(result.abstraction.datasets));
        write_file((dir / "domain.json").string(),
                   domain_to_json(result.abstraction, config.representation).dump(2) + "\n");
        write_file((dir / "domain.pddl").string(), result.domain_pddl);
        if (goal.empty())
            return result;
        write_file((dir / "problem.pddl").string(), result.problem_pddl);
        std::string plan_text;
        if (result.plan) {
            for (const auto &a : result.plan->actions)
                plan_text += a + "\n";
        } else {
            plan_text = "no plan\n";
        }
        write_file((dir / "plan.txt").string(), plan_text);
    }
    return result;
}

}  // namespace skillpddl
