#include "skillpddl/abstraction.h"

#include "skillpddl/errors.h"

#include <algorithm>
#include <functional>
#include <iterator>

namespace skillpddl {

const Symbol &SymbolicDomain::symbol(SymbolId id) const {
    if (id < 1 || id > static_cast<int>(symbols.size()))
        throw InputError("unknown symbol id " + std::to_string(id));
    return symbols[static_cast<std::size_t>(id - 1)];
}

const Operator &SymbolicDomain::op(OptionId option) const {
    for (const Operator &o : operators)
        if (o.option == option)
            return o;
    throw InputError("no operator for o" + std::to_string(option));
}

namespace {

VarSet complement(const VarSet &vars, int n_vars) {
    VarSet out;
    for (VarId v = 0; v < n_vars; ++v)
        if (!vars.count(v))
            out.insert(v);
    return out;
}

template <typename T>
bool is_subset_of(const std::set<T> &a, const std::set<T> &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <typename T>
bool disjoint(const std::set<T> &a, const std::set<T> &b) {
    for (const T &x : a)
        if (b.count(x))
            return false;
    return true;
}

std::string interval_summary(const Interval &i) {
    if (i.is_full())
        return "any";
    if (i.contains(1.0) && !i.contains(0.0))
        return "on";
    if (i.contains(0.0) && !i.contains(1.0))
        return "off";
    auto num = [](double x) {
        std::string s = format_number(x);
        std::replace(s.begin(), s.end(), '.', 'p');
        return s;
    };
    return "r" + num(i.lo()) + "_" + num(i.hi());
}

// Looks a symbol up by factor set and grounding; 0 when absent.
SymbolId find_symbol(const std::vector<Symbol> &vocab, const std::set<FactorId> &fs,
                     const BoxSet &grounding) {
    for (const Symbol &s : vocab)
        if (s.factors == fs && equivalent(s.grounding, grounding))
            return s.id;
    return 0;
}

Symbol &symbol_ref(std::vector<Symbol> &vocab, SymbolId id) {
    return vocab[static_cast<std::size_t>(id - 1)];
}

bool informative(const BoxSet &grounding) {
    return !is_empty(grounding) && !is_universal(grounding);
}

}  // namespace

std::string make_label(const BoxSet &grounding, const VarSet &vars) {
    if (grounding.boxes.empty())
        return "never";
    std::string label;
    for (std::size_t b = 0; b < grounding.boxes.size(); ++b) {
        if (b)
            label += "_or_";
        std::string part;
        for (VarId v : vars) {
            if (!part.empty())
                part += '_';
            part += var_name(v) + "_" + interval_summary(grounding.boxes[b].interval(v));
        }
        label += part.empty() ? "true" : part;
    }
    return label;
}

std::vector<Factor> compute_factors(const std::map<OptionId, VarSet> &masks, int n_vars) {
    std::vector<std::set<OptionId>> modifiers(static_cast<std::size_t>(n_vars));
    for (const auto &[option, mask] : masks) {
        for (VarId v : mask) {
            if (v < 0 || v >= n_vars)
                throw InputError("mask of o" + std::to_string(option) + " names " + var_name(v) +
                                 " outside the " + std::to_string(n_vars) + " variables");
            modifiers[static_cast<std::size_t>(v)].insert(option);
        }
    }
    std::vector<Factor> factors;
    for (VarId v = 0; v < n_vars; ++v) {
        const auto &mods = modifiers[static_cast<std::size_t>(v)];
        auto it = std::find_if(factors.begin(), factors.end(),
                               [&](const Factor &f) { return f.modifiers == mods; });
        if (it == factors.end()) {
            Factor f;
            f.id = static_cast<FactorId>(factors.size()) + 1;
            f.modifiers = mods;
            f.vars.insert(v);
            factors.push_back(std::move(f));
        } else {
            it->vars.insert(v);
        }
    }
    return factors;
}

std::set<FactorId> factors_of(const VarSet &vars, const std::vector<Factor> &factors) {
    std::set<FactorId> out;
    for (const Factor &f : factors) {
        VarSet common;
        std::set_intersection(f.vars.begin(), f.vars.end(), vars.begin(), vars.end(),
                              std::inserter(common, common.end()));
        if (common.empty())
            continue;
        if (common != f.vars)
            throw ConsistencyError("factor f" + std::to_string(f.id) +
                                   " only partially overlaps a mask");
        out.insert(f.id);
    }
    return out;
}

VarSet vars_of(const std::set<FactorId> &ids, const std::vector<Factor> &factors) {
    VarSet out;
    for (FactorId id : ids) {
        if (id < 1 || id > static_cast<int>(factors.size()))
            throw ConsistencyError("unknown factor f" + std::to_string(id));
        const Factor &f = factors[static_cast<std::size_t>(id - 1)];
        out.insert(f.vars.begin(), f.vars.end());
    }
    return out;
}

bool independence_test(const BoxSet &effect, const Factor &factor, int n_vars) {
    BoxSet on_factor = project(effect, complement(factor.vars, n_vars));
    BoxSet on_rest = project(effect, factor.vars);
    return equivalent(intersect(on_factor, on_rest), effect);
}

std::vector<Symbol> generate_symbols(const std::vector<CharacterizingSet> &charsets,
                                     const std::vector<Factor> &factors, int n_vars) {
    std::vector<CharacterizingSet> ordered = charsets;
    std::sort(ordered.begin(), ordered.end(),
              [](const auto &a, const auto &b) { return a.option < b.option; });

    std::vector<Symbol> vocab;
    for (const CharacterizingSet &cs : ordered) {
        std::set<FactorId> touched = factors_of(cs.mask, factors);
        std::vector<FactorId> dependent;
        std::vector<std::set<FactorId>> candidates;
        for (FactorId id : touched) {
            if (independence_test(cs.effect, factors[static_cast<std::size_t>(id - 1)], n_vars))
                candidates.push_back({id});
            else
                dependent.push_back(id);
        }
        // Every proper, non-empty subset of the dependent factors.
        const std::size_t k = dependent.size();
        if (k > 1) {
            for (unsigned code = 1; code + 1 < (1u << k); ++code) {
                std::set<FactorId> subset;
                for (std::size_t i = 0; i < k; ++i)
                    if (code & (1u << i))
                        subset.insert(dependent[i]);
                candidates.push_back(std::move(subset));
            }
        }
        std::sort(candidates.begin(), candidates.end());

        for (const auto &fs : candidates) {
            VarSet keep = vars_of(fs, factors);
            BoxSet grounding = project(cs.effect, complement(keep, n_vars));
            if (!informative(grounding))
                continue;
            if (SymbolId existing = find_symbol(vocab, fs, grounding)) {
                symbol_ref(vocab, existing).producers.insert(cs.option);
                continue;
            }
            Symbol s;
            s.id = static_cast<SymbolId>(vocab.size()) + 1;
            s.label = make_label(grounding, keep);
            s.grounding = std::move(grounding);
            s.factors = fs;
            s.producers = {cs.option};
            vocab.push_back(std::move(s));
        }
    }
    return vocab;
}

EffectSets compute_effects(const CharacterizingSet &charset, const std::vector<Symbol> &symbols,
                           const std::vector<Factor> &factors, int n_vars) {
    EffectSets out;
    const std::set<FactorId> touched = factors_of(charset.mask, factors);
    const VarSet modified = vars_of(touched, factors);
    (void)n_vars;

    auto lookup = [&](const std::set<FactorId> &fs, const BoxSet &g) -> SymbolId {
        if (SymbolId id = find_symbol(symbols, fs, g))
            return id;
        return find_symbol(out.extra_symbols, fs, g);
    };

    for (const Symbol &s : symbols) {
        if (s.producers.count(charset.option)) {
            out.eff_pos.insert(s.id);
        } else if (is_subset_of(s.factors, touched)) {
            out.eff_neg.insert(s.id);
        } else if (!disjoint(s.factors, touched)) {
            out.eff_neg.insert(s.id);
            std::set<FactorId> rest;
            std::set_difference(s.factors.begin(), s.factors.end(), touched.begin(),
                                touched.end(), std::inserter(rest, rest.end()));
            BoxSet remainder = project(s.grounding, modified);
            if (!informative(remainder))
                continue;
            SymbolId id = lookup(rest, remainder);
            if (!id) {
                Symbol extra;
                extra.id = static_cast<SymbolId>(symbols.size() + out.extra_symbols.size()) + 1;
                extra.label = make_label(remainder, vars_of(rest, factors));
                extra.grounding = std::move(remainder);
                extra.factors = std::move(rest);
                id = extra.id;
                out.extra_symbols.push_back(std::move(extra));
            }
            out.eff_pos.insert(id);
        }
    }
    return out;
}

bool satisfies_precondition(const std::set<SymbolId> &subset, const CharacterizingSet &charset,
                            const std::vector<Symbol> &symbols,
                            const std::vector<Factor> &factors) {
    VarSet init_vars = constrained_vars(charset.init);
    std::set<FactorId> init_factors;
    for (const Factor &f : factors)
        if (!disjoint(f.vars, init_vars))
            init_factors.insert(f.id);

    std::set<FactorId> used;
    BoxSet meet = BoxSet::universal();
    for (SymbolId id : subset) {
        const Symbol &s = symbols.at(static_cast<std::size_t>(id - 1));
        if (!is_subset_of(s.factors, init_factors) || !disjoint(s.factors, used))
            return false;
        used.insert(s.factors.begin(), s.factors.end());
        meet = intersect(meet, s.grounding);
    }
    return is_subset(meet, charset.init);
}

PreconditionResult compute_preconditions(const CharacterizingSet &charset,
                                         const std::vector<Symbol> &symbols,
                                         const std::vector<Factor> &factors, int n_vars,
                                         PreconditionMode mode) {
    PreconditionResult result;
    if (is_universal(charset.init)) {
        result.satisfying_subsets.push_back({});
        return result;
    }

    VarSet init_vars = constrained_vars(charset.init);
    std::set<FactorId> init_factors;
    for (const Factor &f : factors)
        if (!disjoint(f.vars, init_vars))
            init_factors.insert(f.id);

    std::vector<const Symbol *> candidates;
    for (const Symbol &s : symbols)
        if (is_subset_of(s.factors, init_factors) && !is_empty(s.grounding))
            candidates.push_back(&s);

    // Depth-first over factor-disjoint subsets. In minimal mode a subset
    // that already lies inside the initiation set is not extended.
    std::vector<std::set<SymbolId>> found;
    std::set<SymbolId> chosen;
    std::set<FactorId> used;
    std::function<void(std::size_t, const BoxSet &)> dfs = [&](std::size_t next,
                                                               const BoxSet &meet) {
        for (std::size_t i = next; i < candidates.size(); ++i) {
            const Symbol &s = *candidates[i];
            if (!disjoint(s.factors, used))
                continue;
            BoxSet narrowed = intersect(meet, s.grounding);
            chosen.insert(s.id);
            used.insert(s.factors.begin(), s.factors.end());
            bool inside = is_subset(narrowed, charset.init);
            if (inside)
                found.push_back(chosen);
            if (!inside || mode == PreconditionMode::all_union)
                dfs(i + 1, narrowed);
            chosen.erase(s.id);
            for (FactorId f : s.factors)
                used.erase(f);
        }
    };
    dfs(0, BoxSet::universal());

    if (found.empty()) {
        // Keep only what every initiation state is known to satisfy.
        result.expressible = false;
        std::set<FactorId> taken;
        for (const Symbol *s : candidates) {
            if (!disjoint(s->factors, taken))
                continue;
            BoxSet shadow = project(charset.init, complement(vars_of(s->factors, factors), n_vars));
            if (is_subset(shadow, s->grounding)) {
                result.pre.insert(s->id);
                taken.insert(s->factors.begin(), s->factors.end());
            }
        }
        return result;
    }

    for (const auto &subset : found) {
        bool minimal = std::none_of(found.begin(), found.end(), [&](const auto &other) {
            return other.size() < subset.size() && is_subset_of(other, subset);
        });
        if (mode == PreconditionMode::all_union || minimal) {
            result.pre.insert(subset.begin(), subset.end());
            if (minimal)
                result.satisfying_subsets.push_back(subset);
        }
    }
    return result;
}

SymbolicDomain build_domain(const std::vector<CharacterizingSet> &charsets, int n_vars,
                            const std::string &scenario, const AbstractionOptions &options) {
    if (charsets.empty())
        throw InputError("build_domain: no options to abstract");
    std::vector<CharacterizingSet> ordered = charsets;
    std::sort(ordered.begin(), ordered.end(),
              [](const auto &a, const auto &b) { return a.option < b.option; });

    SymbolicDomain d;
    d.scenario = scenario;
    d.n_vars = n_vars;

    std::map<OptionId, VarSet> masks;
    for (const CharacterizingSet &cs : ordered) {
        if (cs.mask.empty())
            throw InputError("o" + std::to_string(cs.option) + " has an empty mask");
        if (!masks.emplace(cs.option, cs.mask).second)
            throw InputError("o" + std::to_string(cs.option) + " listed twice");
    }
    d.factors = compute_factors(masks, n_vars);
    d.symbols = generate_symbols(ordered, d.factors, n_vars);

    // Partial overwrites may add vocabulary that other operators then have
    // to account for, so iterate until nothing new appears.
    bool grew = true;
    while (grew) {
        grew = false;
        for (const CharacterizingSet &cs : ordered) {
            EffectSets e = compute_effects(cs, d.symbols, d.factors, n_vars);
            if (!e.extra_symbols.empty()) {
                d.symbols.insert(d.symbols.end(), e.extra_symbols.begin(), e.extra_symbols.end());
                grew = true;
            }
        }
    }

    std::map<std::string, int> seen;
    for (Symbol &s : d.symbols) {
        int n = ++seen[s.label];
        if (n > 1)
            s.label += "_" + std::to_string(n);
    }

    for (const CharacterizingSet &cs : ordered) {
        EffectSets e = compute_effects(cs, d.symbols, d.factors, n_vars);
        if (!e.extra_symbols.empty())
            throw ConsistencyError("effect vocabulary did not reach a fixpoint");
        PreconditionResult p =
            compute_preconditions(cs, d.symbols, d.factors, n_vars, options.precondition_mode);
        if (!p.expressible) {
            std::string kept;
            for (SymbolId id : p.pre)
                kept += (kept.empty() ? "" : ", ") + d.symbol(id).label;
            d.warnings.push_back(
                {warning_kind::inexpressible_precondition, cs.option,
                 "inexpressible precondition for o" + std::to_string(cs.option) +
                     ": no symbol combination lies inside the initiation set " +
                     to_string(cs.init) + "; kept {" + kept + "}"});
        }
        d.operators.push_back({cs.option, std::move(p.pre), std::move(e.eff_pos),
                               std::move(e.eff_neg)});
    }
    return d;
}

}  // namespace skillpddl
