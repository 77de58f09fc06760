#include "skillpddl/explorer.h"

#include "skillpddl/errors.h"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <limits>
#include <random>

namespace skillpddl {

namespace {

// Exact uniform draw in [0, n) that only relies on the engine's output,
// which the standard pins down; distribution objects are not portable.
std::size_t uniform_index(std::mt19937_64 &rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

std::vector<OptionId> eligible(const ScenarioSpec &spec, const LowLevelState &s) {
    std::vector<OptionId> out;
    for (const OptionRule &r : spec.options)
        if (!goal_holds(r, s))
            out.push_back(r.id);
    return out;
}

}  // namespace

TransitionLog collect(const ScenarioSpec &spec, long budget, std::uint64_t seed) {
    if (budget < 1)
        throw InputError("collect: budget must be at least 1");
    validate(spec);
    std::mt19937_64 rng(seed);
    TransitionLog log;
    log.reserve(static_cast<std::size_t>(budget));
    LowLevelState state = LowLevelState::zeros(spec.n_vars);
    for (long step = 0; step < budget; ++step) {
        state = apply_exogenous(spec, state, step);
        auto options = eligible(spec, state);
        if (options.empty()) {
            state = LowLevelState::zeros(spec.n_vars);
            options = eligible(spec, state);
            if (options.empty())
                continue;
        }
        OptionId chosen = options[uniform_index(rng, options.size())];
        Outcome out = execute_option(spec, state, chosen);
        log.push_back({step, chosen, state, out.success, out.next_state});
        state = std::move(out.next_state);
    }
    return log;
}

DatasetCollection build_datasets(const TransitionLog &log) {
    if (log.empty())
        throw InputError("build_datasets: empty log");
    std::map<OptionId, OptionDatasets> all;
    for (const TransitionRecord &r : log) {
        OptionDatasets &ds = all[r.option];
        ds.option = r.option;
        ds.eff_neg.push_back(r.before);
        if (r.success) {
            ds.init_pos.push_back(r.before);
            ds.eff_pos.push_back(r.after);
            ds.mask_pairs.emplace_back(r.before, r.after);
        } else {
            ds.init_neg.push_back(r.before);
        }
    }
    DatasetCollection out;
    for (auto &[id, ds] : all) {
        if (ds.eff_pos.empty())
            out.excluded.push_back(id);
        else
            out.by_option.emplace(id, std::move(ds));
    }
    return out;
}

VarSet compute_mask(const OptionDatasets &ds) {
    if (ds.mask_pairs.empty())
        throw InputError("compute_mask: no successful executions for o" +
                         std::to_string(ds.option));
    VarSet mask;
    for (const auto &[before, after] : ds.mask_pairs)
        for (VarId v = 0; v < before.size(); ++v)
            if (before[v] != after[v])
                mask.insert(v);
    if (mask.empty())
        throw InputError("compute_mask: o" + std::to_string(ds.option) +
                         " never changes any variable");
    return mask;
}

void write_log(std::ostream &out, const TransitionLog &log) {
    for (const TransitionRecord &r : log) {
        nlohmann::ordered_json j;
        j["step"] = r.step;
        j["option"] = r.option;
        j["before"] = format_state(r.before);
        j["success"] = r.success;
        j["after"] = format_state(r.after);
        out << j.dump() << '\n';
    }
}

TransitionLog read_log(std::istream &in) {
    TransitionLog log;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            auto j = nlohmann::json::parse(line);
            TransitionRecord r;
            r.step = j.at("step").get<long>();
            r.option = j.at("option").get<int>();
            r.before = parse_state(j.at("before").get<std::string>());
            r.success = j.at("success").get<bool>();
            r.after = parse_state(j.at("after").get<std::string>());
            if (!r.success && r.before != r.after)
                throw ParseError("failed execution changes the state", line_no);
            log.push_back(std::move(r));
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(std::string("bad log record: ") + e.what(), line_no);
        } catch (const ParseError &e) {
            if (e.line() > 0)
                throw;
            throw ParseError(e.what(), line_no);
        }
    }
    return log;
}

}  // namespace skillpddl
