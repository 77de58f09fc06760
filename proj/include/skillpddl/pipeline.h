#pragma once

#include "skillpddl/abstraction.h"
#include "skillpddl/env.h"
#include "skillpddl/explorer.h"
#include "skillpddl/pddl.h"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skillpddl {

enum class Representation { c45, intm };

std::string to_string(Representation r);
Representation parse_representation(const std::string &s);
std::string to_string(PreconditionMode m);
PreconditionMode parse_precondition_mode(const std::string &s);

struct PipelineConfig {
    std::string scenario = "reset";
    Representation representation = Representation::c45;
    long budget = 10000;
    std::uint64_t seed = 7;
    std::string output_dir = "out";
    int max_depth = 64;
    PreconditionMode precondition_mode = PreconditionMode::minimal_union;
    bool strict = true;
};

// Characterizing sets for every option in the datasets.
std::vector<CharacterizingSet> characterize(const DatasetCollection &data, int n_vars,
                                            Representation rep, bool strict);

struct AbstractionResult {
    DatasetCollection datasets;
    std::vector<CharacterizingSet> charsets;
    SymbolicDomain domain;
};

// Datasets, characterizing sets, domain, then the simulator cross-check.
// Throws InputError naming any scenario option without a success.
AbstractionResult abstract_log(const ScenarioSpec &spec, const TransitionLog &log,
                               const PipelineConfig &config);

/*
  Replays every operator in the simulator from the probe states where its
  preconditions hold, and reports options that fail, positive effects that
  do not hold afterwards, and negative effects that still hold.
*/
std::vector<Warning> cross_check(const SymbolicDomain &d, const ScenarioSpec &spec,
                                 const std::vector<LowLevelState> &probes);

// Distinct before/after states of a fresh rollout.
std::vector<LowLevelState> probe_states(const ScenarioSpec &spec, long budget,
                                        std::uint64_t seed);

nlohmann::ordered_json domain_to_json(const AbstractionResult &r, Representation rep);
SymbolicDomain domain_from_json(const nlohmann::json &j);

// Goal labels to ids; unknown labels raise InputError listing the vocabulary.
std::set<SymbolId> resolve_goal(const SymbolicDomain &d, const std::vector<std::string> &labels);

std::string dataset_summary(const DatasetCollection &data);

struct PipelineResult {
    AbstractionResult abstraction;
    std::string domain_pddl;
    std::string problem_pddl;
    std::optional<Plan> plan;
};

// collect -> abstract -> emit -> plan, writing every artifact into
// config.output_dir when write_files is set. An empty goal stops after the
// domain.
PipelineResult run_pipeline(const PipelineConfig &config, const LowLevelState &init,
                            const std::vector<std::string> &goal, bool write_files = true);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

}  // namespace skillpddl
