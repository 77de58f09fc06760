#pragma once

#include "skillpddl/setrep.h"
#include "skillpddl/state.h"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace skillpddl {

using FactorId = int;  // 1-based
using SymbolId = int;  // 1-based

struct CharacterizingSet {
    OptionId option = 0;
    BoxSet init;
    BoxSet effect;
    VarSet mask;

    bool operator==(const CharacterizingSet &) const = default;
};

struct Factor {
    FactorId id = 0;
    VarSet vars;
    std::set<OptionId> modifiers;

    bool operator==(const Factor &) const = default;
};

struct Symbol {
    SymbolId id = 0;
    std::string label;
    BoxSet grounding;
    std::set<FactorId> factors;
    std::set<OptionId> producers;

    bool operator==(const Symbol &) const = default;
};

struct Operator {
    OptionId option = 0;
    std::set<SymbolId> pre;
    std::set<SymbolId> eff_pos;
    std::set<SymbolId> eff_neg;

    bool operator==(const Operator &) const = default;
};

struct Warning {
    std::string kind;
    OptionId option = 0;
    std::string message;

    bool operator==(const Warning &) const = default;
};

namespace warning_kind {
inline constexpr const char *inexpressible_precondition = "inexpressible-precondition";
inline constexpr const char *excluded_option = "excluded-option";
inline constexpr const char *precondition_divergence = "precondition-divergence";
inline constexpr const char *positive_effect_divergence = "positive-effect-divergence";
inline constexpr const char *negative_effect_divergence = "negative-effect-divergence";
}  // namespace warning_kind

struct SymbolicDomain {
    std::string scenario;
    int n_vars = 0;
    std::vector<Factor> factors;
    std::vector<Symbol> symbols;
    std::vector<Operator> operators;
    std::vector<Warning> warnings;

    const Symbol &symbol(SymbolId id) const;
    const Operator &op(OptionId option) const;
};

enum class PreconditionMode { minimal_union, all_union };

struct AbstractionOptions {
    PreconditionMode precondition_mode = PreconditionMode::minimal_union;
};

// Groups variables by the exact set of options modifying them.
std::vector<Factor> compute_factors(const std::map<OptionId, VarSet> &masks, int n_vars);

// Factors whose variables meet `vars`; throws ConsistencyError when one
// only partially overlaps.
std::set<FactorId> factors_of(const VarSet &vars, const std::vector<Factor> &factors);

VarSet vars_of(const std::set<FactorId> &ids, const std::vector<Factor> &factors);

// Effect equals the product of its projections onto the factor and onto
// everything else.
bool independence_test(const BoxSet &effect, const Factor &factor, int n_vars);

std::vector<Symbol> generate_symbols(const std::vector<CharacterizingSet> &charsets,
                                     const std::vector<Factor> &factors, int n_vars);

struct EffectSets {
    std::set<SymbolId> eff_pos;
    std::set<SymbolId> eff_neg;
    // Remainders of partial overwrites that were not in the vocabulary;
    // their ids continue the vocabulary numbering.
    std::vector<Symbol> extra_symbols;
};

EffectSets compute_effects(const CharacterizingSet &charset, const std::vector<Symbol> &symbols,
                           const std::vector<Factor> &factors, int n_vars);

struct PreconditionResult {
    std::set<SymbolId> pre;
    // False when no symbol subset lies inside the initiation set; `pre`
    // then holds only the symbols every initiation state satisfies.
    bool expressible = true;
    std::vector<std::set<SymbolId>> satisfying_subsets;
};

PreconditionResult compute_preconditions(const CharacterizingSet &charset,
                                         const std::vector<Symbol> &symbols,
                                         const std::vector<Factor> &factors, int n_vars,
                                         PreconditionMode mode = PreconditionMode::minimal_union);

// Whether a set of symbols satisfies the three precondition conditions.
bool satisfies_precondition(const std::set<SymbolId> &subset, const CharacterizingSet &charset,
                            const std::vector<Symbol> &symbols,
                            const std::vector<Factor> &factors);

SymbolicDomain build_domain(const std::vector<CharacterizingSet> &charsets, int n_vars,
                            const std::string &scenario,
                            const AbstractionOptions &options = {});

// "v3_on", "v1_off", "v2_r0p2_0p7", ...
std::string make_label(const BoxSet &grounding, const VarSet &vars);

}  // namespace skillpddl
