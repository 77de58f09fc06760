#pragma once

#include "skillpddl/env.h"
#include "skillpddl/state.h"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace skillpddl {

struct TransitionRecord {
    long step = 0;
    OptionId option = 0;
    LowLevelState before;
    bool success = false;
    LowLevelState after;

    bool operator==(const TransitionRecord &) const = default;
};

using TransitionLog = std::vector<TransitionRecord>;

struct OptionDatasets {
    OptionId option = 0;
    std::vector<LowLevelState> init_pos;
    std::vector<LowLevelState> init_neg;
    std::vector<LowLevelState> eff_pos;
    std::vector<LowLevelState> eff_neg;
    std::vector<std::pair<LowLevelState, LowLevelState>> mask_pairs;
};

struct DatasetCollection {
    std::map<OptionId, OptionDatasets> by_option;
    // Options seen in the log without a single success.
    std::vector<OptionId> excluded;
};

/*
  Runs the skip-if-achieved scheduler for `budget` steps. Each step first
  applies any exogenous reset, then draws uniformly among the options whose
  goal does not hold yet; when there is none the state restarts from all
  zeros. Every attempted execution is logged.
*/
TransitionLog collect(const ScenarioSpec &spec, long budget, std::uint64_t seed);

DatasetCollection build_datasets(const TransitionLog &log);

// Variables that change in at least one (before, after) pair.
VarSet compute_mask(const OptionDatasets &ds);

// One JSON object per line: step, option, before, success, after.
void write_log(std::ostream &out, const TransitionLog &log);
TransitionLog read_log(std::istream &in);

}  // namespace skillpddl
