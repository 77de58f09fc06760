#include "skillpddl/pddl.h"

#include "skillpddl/errors.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace skillpddl {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::string sanitize(std::string_view s) {
    std::string out;
    for (char c : s)
        out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
    if (out.empty() || !std::isalpha(static_cast<unsigned char>(out.front())))
        out = "d_" + out;
    return out;
}

std::string conjunction(const std::vector<std::string> &pos, const std::vector<std::string> &neg) {
    std::string s = "(and";
    for (const auto &p : pos)
        s += " (" + p + ")";
    for (const auto &n : neg)
        s += " (not (" + n + "))";
    return s + ")";
}

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
    std::string atom;
    std::vector<SExpr> items;
    bool is_list = false;
    int line = 0;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read() {
        skip();
        SExpr e = read_one();
        skip();
        if (pos_ != text_.size())
            throw ParseError("trailing text after the top-level form", line_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;

    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (c == '\n')
                    ++line_;
                ++pos_;
            } else {
                break;
            }
        }
    }

    SExpr read_one() {
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", line_);
        SExpr e;
        e.line = line_;
        if (text_[pos_] == '(') {
            ++pos_;
            e.is_list = true;
            while (true) {
                skip();
                if (pos_ >= text_.size())
                    throw ParseError("unbalanced parenthesis", e.line);
                if (text_[pos_] == ')') {
                    ++pos_;
                    return e;
                }
                e.items.push_back(read_one());
            }
        }
        if (text_[pos_] == ')')
            throw ParseError("unexpected ')'", line_);
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';')
            ++pos_;
        e.atom = std::string(text_.substr(start, pos_ - start));
        return e;
    }
};

bool is_atom(const SExpr &e, std::string_view a) {
    return !e.is_list && e.atom == a;
}

const std::string &expect_atom(const SExpr &e, const char *what) {
    if (e.is_list || e.atom.empty())
        throw ParseError(std::string("expected ") + what, e.line);
    return e.atom;
}

// Zero-arity atom "(p)".
std::string read_predicate(const SExpr &e) {
    if (!e.is_list || e.items.size() != 1)
        throw ParseError("expected a zero-arity predicate such as (p)", e.line);
    return expect_atom(e.items[0], "predicate name");
}

std::vector<SExpr> conjuncts(const SExpr &e) {
    if (e.is_list && !e.items.empty() && is_atom(e.items[0], "and"))
        return {e.items.begin() + 1, e.items.end()};
    return {e};
}

void read_effect(const SExpr &e, PddlAction &action) {
    for (const SExpr &lit : conjuncts(e)) {
        if (lit.is_list && lit.items.size() == 2 && is_atom(lit.items[0], "not"))
            action.del.push_back(read_predicate(lit.items[1]));
        else
            action.add.push_back(read_predicate(lit));
    }
}

void read_precondition(const SExpr &e, PddlAction &action) {
    for (const SExpr &lit : conjuncts(e)) {
        if (lit.is_list && !lit.items.empty() && is_atom(lit.items[0], "not"))
            throw ParseError("negative preconditions are not allowed", lit.line);
        action.precondition.push_back(read_predicate(lit));
    }
}

PddlAction read_action(const SExpr &e) {
    PddlAction action;
    if (e.items.size() < 2)
        throw ParseError("action without a name", e.line);
    action.name = expect_atom(e.items[1], "action name");
    for (std::size_t i = 2; i < e.items.size(); i += 2) {
        if (i + 1 >= e.items.size())
            throw ParseError("action key without a value", e.items[i].line);
        const std::string &key = expect_atom(e.items[i], "action key");
        const SExpr &value = e.items[i + 1];
        if (key == ":parameters") {
            if (!value.is_list || !value.items.empty())
                throw ParseError("only parameterless actions are supported", value.line);
        } else if (key == ":precondition") {
            read_precondition(value, action);
        } else if (key == ":effect") {
            read_effect(value, action);
        } else {
            throw ParseError("unsupported action key " + key, e.items[i].line);
        }
    }
    return action;
}

const SExpr &expect_define(const SExpr &root, const char *kind, std::string &name) {
    if (!root.is_list || root.items.size() < 2 || !is_atom(root.items[0], "define"))
        throw ParseError("expected (define ...)", root.line);
    const SExpr &head = root.items[1];
    if (!head.is_list || head.items.size() != 2 || !is_atom(head.items[0], kind))
        throw ParseError(std::string("expected (") + kind + " <name>)", head.line);
    name = expect_atom(head.items[1], "name");
    return root;
}

std::vector<bool> to_bits(const std::vector<std::string> &names,
                          const std::map<std::string, std::size_t> &index) {
    std::vector<bool> bits(index.size(), false);
    for (const auto &n : names) {
        auto it = index.find(n);
        if (it == index.end())
            throw InputError("unknown predicate '" + n + "'");
        bits[it->second] = true;
    }
    return bits;
}

struct CompiledAction {
    std::vector<std::size_t> pre, add, del;
};

std::vector<CompiledAction> compile(const PddlDomainDoc &domain,
                                    const std::map<std::string, std::size_t> &index) {
    auto ids = [&](const std::vector<std::string> &names) {
        std::vector<std::size_t> out;
        for (const auto &n : names) {
            auto it = index.find(n);
            if (it == index.end())
                throw InputError("action uses undeclared predicate '" + n + "'");
            out.push_back(it->second);
        }
        return out;
    };
    std::vector<CompiledAction> out;
    for (const PddlAction &a : domain.actions)
        out.push_back({ids(a.precondition), ids(a.add), ids(a.del)});
    return out;
}

std::map<std::string, std::size_t> predicate_index(const PddlDomainDoc &domain) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < domain.predicates.size(); ++i)
        index.emplace(domain.predicates[i], i);
    return index;
}

bool applicable(const CompiledAction &a, const std::vector<bool> &s) {
    return std::all_of(a.pre.begin(), a.pre.end(), [&](std::size_t p) { return s[p]; });
}

std::vector<bool> successor(const CompiledAction &a, std::vector<bool> s) {
    for (std::size_t p : a.del)
        s[p] = false;
    for (std::size_t p : a.add)
        s[p] = true;
    return s;
}

bool satisfied(const std::vector<bool> &goal, const std::vector<bool> &s) {
    for (std::size_t i = 0; i < goal.size(); ++i)
        if (goal[i] && !s[i])
            return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------

PddlDomainDoc emit_domain(const SymbolicDomain &d) {
    PddlDomainDoc doc;
    doc.name = sanitize(d.scenario);
    std::map<std::string, SymbolId> labels;
    for (const Symbol &s : d.symbols) {
        if (!valid_name(s.label))
            throw InputError("symbol label '" + s.label + "' is not a valid PDDL name");
        auto [it, fresh] = labels.emplace(s.label, s.id);
        if (!fresh)
            throw InputError("duplicate symbol label '" + s.label + "' (symbols " +
                             std::to_string(it->second) + " and " + std::to_string(s.id) +
                             "); rename one, e.g. to '" + s.label + "_" + std::to_string(s.id) +
                             "'");
        doc.predicates.push_back(s.label);
    }
    auto names = [&](const std::set<SymbolId> &ids) {
        std::vector<std::string> out;
        for (SymbolId id : ids)
            out.push_back(d.symbol(id).label);
        return out;
    };
    std::vector<Operator> ops = d.operators;
    std::sort(ops.begin(), ops.end(),
              [](const Operator &a, const Operator &b) { return a.option < b.option; });
    for (const Operator &op : ops)
        doc.actions.push_back(
            {"op_" + std::to_string(op.option), names(op.pre), names(op.eff_pos), names(op.eff_neg)});
    return doc;
}

std::string domain_text(const PddlDomainDoc &doc) {
    std::ostringstream out;
    out << "(define (domain " << doc.name << ")\n";
    out << "  (:requirements :strips)\n";
    if (doc.predicates.empty()) {
        out << "  (:predicates)\n";
    } else {
        out << "  (:predicates\n";
        for (const auto &p : doc.predicates)
            out << "    (" << p << ")\n";
        out << "  )\n";
    }
    for (const PddlAction &a : doc.actions) {
        out << "  (:action " << a.name << "\n";
        out << "    :parameters ()\n";
        out << "    :precondition " << conjunction(a.precondition, {}) << "\n";
        out << "    :effect " << conjunction(a.add, a.del) << "\n";
        out << "  )\n";
    }
    out << ")\n";
    return out.str();
}

PddlDomainDoc parse_domain(std::string_view text) {
    SExpr root = Reader(text).read();
    PddlDomainDoc doc;
    expect_define(root, "domain", doc.name);
    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty())
            throw ParseError("expected a domain section", section.line);
        const std::string &key = expect_atom(section.items[0], "section keyword");
        if (key == ":requirements") {
            for (std::size_t k = 1; k < section.items.size(); ++k)
                if (!is_atom(section.items[k], ":strips"))
                    throw ParseError("unsupported requirement", section.items[k].line);
        } else if (key == ":predicates") {
            for (std::size_t k = 1; k < section.items.size(); ++k)
                doc.predicates.push_back(read_predicate(section.items[k]));
        } else if (key == ":action") {
            doc.actions.push_back(read_action(section));
        } else {
            throw ParseError("unsupported domain section " + key, section.line);
        }
    }
    compile(doc, predicate_index(doc));  // rejects undeclared predicates
    return doc;
}

std::set<SymbolId> ground_state(const std::vector<Symbol> &symbols, const LowLevelState &x) {
    std::set<SymbolId> out;
    for (const Symbol &s : symbols)
        if (contains_state(s.grounding, x))
            out.insert(s.id);
    return out;
}

PddlProblemDoc emit_problem(const SymbolicDomain &d, const LowLevelState &init_state,
                            const std::set<SymbolId> &goal) {
    if (init_state.size() != d.n_vars)
        throw InputError("initial state has " + std::to_string(init_state.size()) +
                         " values, the domain has " + std::to_string(d.n_vars));
    PddlProblemDoc doc;
    doc.domain = sanitize(d.scenario);
    doc.name = doc.domain + "-problem";
    for (SymbolId id : ground_state(d.symbols, init_state))
        doc.init.push_back(d.symbol(id).label);
    for (SymbolId id : goal)
        doc.goal.push_back(d.symbol(id).label);
    return doc;
}

std::string problem_text(const PddlProblemDoc &doc) {
    std::ostringstream out;
    out << "(define (problem " << doc.name << ")\n";
    out << "  (:domain " << doc.domain << ")\n";
    out << "  (:init";
    for (const auto &p : doc.init)
        out << " (" << p << ")";
    out << ")\n";
    out << "  (:goal " << conjunction(doc.goal, {}) << ")\n";
    out << ")\n";
    return out.str();
}

PddlProblemDoc parse_problem(std::string_view text) {
    SExpr root = Reader(text).read();
    PddlProblemDoc doc;
    expect_define(root, "problem", doc.name);
    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty())
            throw ParseError("expected a problem section", section.line);
        const std::string &key = expect_atom(section.items[0], "section keyword");
        if (key == ":domain") {
            if (section.items.size() != 2)
                throw ParseError("expected (:domain <name>)", section.line);
            doc.domain = expect_atom(section.items[1], "domain name");
        } else if (key == ":init") {
            for (std::size_t k = 1; k < section.items.size(); ++k)
                doc.init.push_back(read_predicate(section.items[k]));
        } else if (key == ":goal") {
            if (section.items.size() != 2)
                throw ParseError("expected (:goal <formula>)", section.line);
            for (const SExpr &lit : conjuncts(section.items[1])) {
                if (lit.is_list && !lit.items.empty() && is_atom(lit.items[0], "not"))
                    throw ParseError("negative goals are not allowed", lit.line);
                doc.goal.push_back(read_predicate(lit));
            }
        } else {
            throw ParseError("unsupported problem section " + key, section.line);
        }
    }
    return doc;
}

std::optional<Plan> plan_bfs(const PddlDomainDoc &domain, const PddlProblemDoc &problem,
                             int max_depth) {
    if (max_depth < 0)
        throw InputError("plan_bfs: max_depth must be non-negative");
    auto index = predicate_index(domain);
    auto actions = compile(domain, index);
    const std::vector<bool> init = to_bits(problem.init, index);
    const std::vector<bool> goal = to_bits(problem.goal, index);

    struct Visit {
        std::vector<bool> parent;
        int action;
        int depth;
    };
    std::map<std::vector<bool>, Visit> visited;
    std::deque<std::vector<bool>> frontier;
    visited.emplace(init, Visit{{}, -1, 0});
    frontier.push_back(init);

    auto extract = [&](std::vector<bool> s) {
        Plan plan;
        while (true) {
            const Visit &v = visited.at(s);
            if (v.action < 0)
                break;
            plan.actions.push_back(domain.actions[static_cast<std::size_t>(v.action)].name);
            s = v.parent;
        }
        std::reverse(plan.actions.begin(), plan.actions.end());
        return plan;
    };

    while (!frontier.empty()) {
        std::vector<bool> s = std::move(frontier.front());
        frontier.pop_front();
        if (satisfied(goal, s))
            return extract(s);
        int depth = visited.at(s).depth;
        if (depth >= max_depth)
            continue;
        for (std::size_t a = 0; a < actions.size(); ++a) {
            if (!applicable(actions[a], s))
                continue;
            auto next = successor(actions[a], s);
            if (visited.count(next))
                continue;
            visited.emplace(next, Visit{s, static_cast<int>(a), depth + 1});
            frontier.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

bool validate_plan(const PddlDomainDoc &domain, const PddlProblemDoc &problem, const Plan &plan) {
    auto index = predicate_index(domain);
    auto actions = compile(domain, index);
    std::vector<bool> s = to_bits(problem.init, index);
    for (const std::string &name : plan.actions) {
        auto it = std::find_if(domain.actions.begin(), domain.actions.end(),
                               [&](const PddlAction &a) { return a.name == name; });
        if (it == domain.actions.end())
            return false;
        const CompiledAction &a = actions[static_cast<std::size_t>(it - domain.actions.begin())];
        if (!applicable(a, s))
            return false;
        s = successor(a, s);
    }
    return satisfied(to_bits(problem.goal, index), s);
}

}  // namespace skillpddl
