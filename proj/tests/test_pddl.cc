#include "support.h"

#include "skillpddl/errors.h"
#include "skillpddl/pddl.h"
#include "skillpddl/pipeline.h"

#include <doctest.h>

#include <algorithm>

using namespace skillpddl;
using testing::st;

namespace {

SymbolicDomain domain_for(const std::string &scenario, Representation rep) {
    auto spec = *find_builtin(scenario);
    auto cs = characterize(build_datasets(collect(spec, 10000, 7)), 6, rep, true);
    return build_domain(cs, 6, scenario);
}

std::set<SymbolId> ids(const SymbolicDomain &d, std::initializer_list<const char *> labels) {
    return resolve_goal(d, std::vector<std::string>(labels.begin(), labels.end()));
}

PddlDomainDoc random_domain(testing::Gen &g, int n_preds, int n_actions) {
    PddlDomainDoc d;
    d.name = "rand";
    for (int p = 0; p < n_preds; ++p)
        d.predicates.push_back("p" + std::to_string(p));
    for (int a = 0; a < n_actions; ++a) {
        PddlAction act;
        act.name = "a" + std::to_string(a);
        for (int p = 0; p < n_preds; ++p) {
            int r = g.pick(6);
            if (r == 0)
                act.precondition.push_back(d.predicates[p]);
            else if (r == 1)
                act.add.push_back(d.predicates[p]);
            else if (r == 2)
                act.del.push_back(d.predicates[p]);
        }
        d.actions.push_back(act);
    }
    return d;
}

// Shortest goal distance by sweeping all 2^n truth assignments layer by layer.
std::optional<int> oracle_distance(const PddlDomainDoc &d, const PddlProblemDoc &p, int max_depth) {
    const int n = static_cast<int>(d.predicates.size());
    auto bit = [&](const std::string &name) {
        return 1u << (std::find(d.predicates.begin(), d.predicates.end(), name) - d.predicates.begin());
    };
    auto mask = [&](const std::vector<std::string> &names) {
        unsigned m = 0;
        for (const auto &s : names)
            m |= bit(s);
        return m;
    };
    std::vector<bool> layer(1u << n, false);
    layer[mask(p.init)] = true;
    const unsigned goal = mask(p.goal);
    for (int depth = 0; depth <= max_depth; ++depth) {
        for (unsigned s = 0; s < layer.size(); ++s)
            if (layer[s] && (s & goal) == goal)
                return depth;
        std::vector<bool> next = layer;
        for (unsigned s = 0; s < layer.size(); ++s) {
            if (!layer[s])
                continue;
            for (const auto &a : d.actions) {
                unsigned pre = mask(a.precondition);
                if ((s & pre) == pre)
                    next[(s & ~mask(a.del)) | mask(a.add)] = true;
            }
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

}  // namespace

TEST_SUITE("pddl") {

TEST_CASE("reset domains emit as expected") {
    auto c45 = domain_for("reset", Representation::c45);
    PddlDomainDoc doc = emit_domain(c45);
    CHECK(doc.name == "reset");
    CHECK(doc.predicates.size() == 6);
    REQUIRE(doc.actions.size() == 6);
    const PddlAction &op4 = doc.actions[3];
    CHECK(op4.name == "op_4");
    CHECK(op4.precondition == std::vector<std::string>{"v2_on"});
    CHECK(op4.add == std::vector<std::string>{"v3_on"});
    CHECK(op4.del.empty());
    CHECK(doc.actions[0].del == std::vector<std::string>{"v1_on", "v2_on", "v3_on", "v4_on", "v5_on"});
    std::string text = domain_text(doc);
    CHECK(text.find("(:requirements :strips)") != std::string::npos);
    CHECK(text.find(":precondition (and)\n") != std::string::npos);
    CHECK(text.find(":effect (and (v6_on) (not (v1_on)) (not (v2_on))") != std::string::npos);

    CHECK(emit_domain(domain_for("reset", Representation::intm)).predicates.size() == 11);
}

TEST_CASE("minimal document") {
    SymbolicDomain d;
    d.scenario = "tiny world";
    d.n_vars = 1;
    d.factors = {{1, {0}, {1}}};
    Box b;
    b.filters[0] = Interval::closed(1, 1);
    d.symbols = {{1, "lit", BoxSet::single(b), {1}, {1}}};
    d.operators = {{1, {}, {1}, {}}};
    std::string text = domain_text(emit_domain(d));
    CHECK(text ==
          "(define (domain tiny_world)\n"
          "  (:requirements :strips)\n"
          "  (:predicates\n"
          "    (lit)\n"
          "  )\n"
          "  (:action op_1\n"
          "    :parameters ()\n"
          "    :precondition (and)\n"
          "    :effect (and (lit))\n"
          "  )\n"
          ")\n");
    CHECK(parse_domain(text) == emit_domain(d));

    d.symbols.push_back({2, "lit", BoxSet::universal(), {1}, {1}});
    try {
        emit_domain(d);
        FAIL("duplicate labels accepted");
    } catch (const InputError &e) {
        CHECK(std::string(e.what()).find("rename") != std::string::npos);
    }
    d.symbols[1].label = "bad label";
    CHECK_THROWS_AS(emit_domain(d), InputError);
}

TEST_CASE("ground_state") {
    auto c45 = domain_for("reset", Representation::c45);
    CHECK(ground_state(c45.symbols, st("000000")).empty());
    auto intm = domain_for("reset", Representation::intm);
    CHECK(ground_state(intm.symbols, st("000000")) ==
          ids(intm, {"v1_off", "v2_off", "v3_off", "v4_off", "v5_off"}));
    CHECK(ground_state(intm.symbols, st("100001")) ==
          ids(intm, {"v1_on", "v2_off", "v3_off", "v4_off", "v5_off", "v6_on"}));
}

TEST_CASE("problems") {
    auto c45 = domain_for("reset", Representation::c45);
    PddlProblemDoc p = emit_problem(c45, st("000000"), ids(c45, {"v5_on"}));
    CHECK(p.init.empty());
    CHECK(p.goal == std::vector<std::string>{"v5_on"});
    CHECK(problem_text(p) ==
          "(define (problem reset-problem)\n"
          "  (:domain reset)\n"
          "  (:init)\n"
          "  (:goal (and (v5_on)))\n"
          ")\n");
    CHECK(parse_problem(problem_text(p)) == p);

    auto intm = domain_for("reset", Representation::intm);
    PddlProblemDoc q = emit_problem(intm, st("000000"), ids(intm, {"v5_on"}));
    CHECK(q.init == std::vector<std::string>{"v1_off", "v2_off", "v3_off", "v4_off", "v5_off"});

    CHECK_THROWS_AS(emit_problem(c45, st("000000"), {42}), InputError);
    CHECK_THROWS_AS(emit_problem(c45, st("000"), {}), InputError);
    CHECK_THROWS_AS(resolve_goal(c45, {"v1_off"}), InputError);
}

TEST_CASE("plans on the learned domains") {
    auto c45 = domain_for("reset", Representation::c45);
    PddlDomainDoc doc = emit_domain(c45);
    auto plan = plan_bfs(doc, emit_problem(c45, st("000000"), ids(c45, {"v5_on"})), 64);
    REQUIRE(plan);
    CHECK(plan->actions == std::vector<std::string>{"op_2", "op_3", "op_4", "op_5", "op_6"});

    auto trivial = plan_bfs(doc, emit_problem(c45, st("000000"), {}), 0);
    REQUIRE(trivial);
    CHECK(trivial->length() == 0);
    auto already = plan_bfs(doc, emit_problem(c45, st("000010"), ids(c45, {"v5_on"})), 0);
    REQUIRE(already);
    CHECK(already->length() == 0);
    CHECK_FALSE(plan_bfs(doc, emit_problem(c45, st("000000"), ids(c45, {"v5_on"})), 4));

    for (auto rep : {Representation::c45, Representation::intm}) {
        auto u = domain_for("unreachable", rep);
        PddlDomainDoc ud = emit_domain(u);
        auto up = plan_bfs(ud, emit_problem(u, st("000000"), ids(u, {"v5_on"})), 64);
        REQUIRE(up);
        CHECK(up->actions == std::vector<std::string>{"op_1", "op_2", "op_4", "op_5"});
    }

    auto intm = domain_for("reset", Representation::intm);
    auto off = plan_bfs(emit_domain(intm),
                        emit_problem(intm, st("111110"),
                                     ids(intm, {"v1_off", "v2_off", "v3_off", "v4_off", "v5_off"})),
                        64);
    REQUIRE(off);
    CHECK(off->actions == std::vector<std::string>{"op_1"});
    CHECK_THROWS_AS(plan_bfs(doc, emit_problem(c45, st("000000"), {}), -1), InputError);
}

TEST_CASE("text round-trips") {
    testing::Gen g(3);
    for (int t = 0; t < 300; ++t) {
        PddlDomainDoc d = random_domain(g, 1 + g.pick(7), g.pick(6));
        std::string text = domain_text(d);
        PddlDomainDoc back = parse_domain(text);
        REQUIRE(back == d);
        REQUIRE(domain_text(back) == text);

        PddlProblemDoc p;
        p.name = "rand-problem";
        p.domain = "rand";
        for (const auto &q : d.predicates) {
            if (g.coin())
                p.init.push_back(q);
            if (g.pick(3) == 0)
                p.goal.push_back(q);
        }
        REQUIRE(parse_problem(problem_text(p)) == p);
    }
    for (const char *name : {"reset", "negative", "unreachable"})
        for (auto rep : {Representation::c45, Representation::intm}) {
            auto doc = emit_domain(domain_for(name, rep));
            CHECK(parse_domain(domain_text(doc)) == doc);
        }
}

TEST_CASE("parser accepts foreign layout and rejects what STRIPS forbids") {
    const char *loose = "; hand written\n"
                        "(define (domain d) (:requirements :strips) (:predicates (a) (b))\n"
                        "  (:action go :parameters () :precondition (a) :effect (and (b) (not (a)))))";
    PddlDomainDoc d = parse_domain(loose);
    REQUIRE(d.actions.size() == 1);
    CHECK(d.actions[0].precondition == std::vector<std::string>{"a"});
    CHECK(d.actions[0].add == std::vector<std::string>{"b"});
    CHECK(d.actions[0].del == std::vector<std::string>{"a"});

    const char *negated = "(define (domain d)\n (:predicates (a))\n"
                          " (:action go :precondition (and (not (a))) :effect (and (a))))";
    try {
        parse_domain(negated);
        FAIL("negative precondition accepted");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_domain("(define (domain d)\n (:predicates (a))"), ParseError);
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (a)) (:action go :effect (and (z))))"),
                    InputError);
    CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain d) (:goal (and (not (a)))))"), ParseError);
}

TEST_CASE("breadth-first search agrees with exhaustive search") {
    testing::Gen g(17);
    int solved = 0, unsolved = 0;
    for (int t = 0; t < 400; ++t) {
        PddlDomainDoc d = random_domain(g, 2 + g.pick(5), 1 + g.pick(6));
        PddlProblemDoc p;
        p.name = "q";
        p.domain = d.name;
        for (const auto &q : d.predicates) {
            if (g.pick(3) == 0)
                p.init.push_back(q);
            if (g.pick(3) == 0)
                p.goal.push_back(q);
        }
        int depth = g.pick(8);
        auto plan = plan_bfs(d, p, depth);
        auto want = oracle_distance(d, p, depth);
        REQUIRE(plan.has_value() == want.has_value());
        if (plan) {
            REQUIRE(static_cast<int>(plan->length()) == *want);
            REQUIRE(validate_plan(d, p, *plan));
            ++solved;
        } else {
            ++unsolved;
        }
    }
    CHECK(solved > 50);
    CHECK(unsolved > 10);
}

TEST_CASE("validate_plan catches broken plans") {
    auto c45 = domain_for("reset", Representation::c45);
    PddlDomainDoc doc = emit_domain(c45);
    auto p = emit_problem(c45, st("000000"), ids(c45, {"v2_on"}));
    CHECK(validate_plan(doc, p, Plan{{"op_2", "op_3"}}));
    CHECK_FALSE(validate_plan(doc, p, Plan{{"op_3"}}));
    CHECK_FALSE(validate_plan(doc, p, Plan{{"op_2"}}));
    CHECK_FALSE(validate_plan(doc, p, Plan{{"op_9"}}));
}

}  // TEST_SUITE
