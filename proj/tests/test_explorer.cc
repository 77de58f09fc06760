#include "support.h"

#include "skillpddl/env.h"
#include "skillpddl/errors.h"
#include "skillpddl/explorer.h"

#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

using namespace skillpddl;
using testing::st;

namespace {

// Low-level states reachable from all-zero, counting the explorer's
// fallback and exogenous resets to all-zero.
std::set<LowLevelState> reachable(const ScenarioSpec &spec) {
    std::set<LowLevelState> seen{LowLevelState::zeros(spec.n_vars)};
    std::deque<LowLevelState> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        LowLevelState x = queue.front();
        queue.pop_front();
        for (const auto &r : spec.options) {
            LowLevelState y = x;
            bool ok = std::all_of(r.guard.begin(), r.guard.end(),
                                  [&](const Literal &l) { return x[l.var] == l.value; });
            if (ok)
                for (auto [v, value] : r.assignments)
                    y[v] = value;
            if (seen.insert(y).second)
                queue.push_back(y);
        }
    }
    return seen;
}

VarSet expected_mask(const ScenarioSpec &spec, const OptionRule &r) {
    VarSet mask;
    for (const auto &x : reachable(spec)) {
        bool ok = std::all_of(r.guard.begin(), r.guard.end(),
                              [&](const Literal &l) { return x[l.var] == l.value; });
        if (!ok || goal_holds(r, x))
            continue;
        for (auto [v, value] : r.assignments)
            if (x[v] != value)
                mask.insert(v);
    }
    return mask;
}

}  // namespace

TEST_SUITE("explorer") {

TEST_CASE("budget one") {
    auto reset = *find_builtin("reset");
    // find a seed whose first pick from all-zero is o2
    bool found = false;
    for (std::uint64_t seed = 0; seed < 64 && !found; ++seed) {
        auto log = collect(reset, 1, seed);
        REQUIRE(log.size() == 1);
        if (log[0].option != 2)
            continue;
        found = true;
        CHECK(log[0].step == 0);
        CHECK(log[0].before == st("000000"));
        CHECK(log[0].success);
        CHECK(log[0].after == st("100000"));
    }
    CHECK(found);
    CHECK_THROWS_AS(collect(reset, 0, 7), InputError);
}

TEST_CASE("coverage at the default budget") {
    auto reset = *find_builtin("reset");
    auto log = collect(reset, 10000, 7);
    CHECK(log.size() == 10000);
    std::set<OptionId> succeeded;
    for (const auto &r : log)
        if (r.success)
            succeeded.insert(r.option);
    CHECK(succeeded == std::set<OptionId>{1, 2, 3, 4, 5, 6});

    auto unreachable = *find_builtin("unreachable");
    int ok = 0, failed = 0;
    for (const auto &r : collect(unreachable, 10000, 7)) {
        if (r.option != 3)
            continue;
        (r.success ? ok : failed)++;
        if (!r.success)
            CHECK(r.before[1] == 1.0);
    }
    CHECK(ok > 0);
    CHECK(failed > 0);
}

TEST_CASE("collector rules") {
    for (const auto &spec : builtin_scenarios()) {
        auto log = collect(spec, 3000, 3);
        for (const auto &r : log) {
            CHECK_FALSE(goal_holds(spec.option(r.option), r.before));
            if (!r.success)
                CHECK(r.before == r.after);
            if (spec.exogenous_reset && r.step > 0 && r.step % *spec.exogenous_reset == 0)
                CHECK(r.before == LowLevelState::zeros(spec.n_vars));
            Outcome o = execute_option(spec, r.before, r.option);
            CHECK(o.success == r.success);
            CHECK(o.next_state == r.after);
        }
        CHECK(collect(spec, 3000, 3) == log);
        CHECK(collect(spec, 3000, 4) != log);
    }
}

TEST_CASE("build_datasets examples") {
    TransitionLog one{{0, 2, st("000000"), true, st("100000")}};
    auto d = build_datasets(one);
    REQUIRE(d.by_option.count(2));
    const auto &o2 = d.by_option.at(2);
    CHECK(o2.init_pos == std::vector{st("000000")});
    CHECK(o2.init_neg.empty());
    CHECK(o2.eff_pos == std::vector{st("100000")});
    CHECK(o2.eff_neg == std::vector{st("000000")});

    TransitionLog failing{{0, 2, st("000000"), true, st("100000")},
                          {1, 3, st("000000"), false, st("000000")}};
    auto f = build_datasets(failing);
    CHECK(f.by_option.count(3) == 0);
    CHECK(f.excluded == std::vector<OptionId>{3});

    TransitionLog mixed{{0, 3, st("000000"), false, st("000000")},
                        {1, 3, st("100000"), true, st("110000")}};
    auto m = build_datasets(mixed).by_option.at(3);
    CHECK(m.init_neg == std::vector{st("000000")});
    CHECK(m.eff_neg == (std::vector{st("000000"), st("100000")}));

    CHECK_THROWS_AS(build_datasets({}), InputError);
}

TEST_CASE("reset datasets") {
    auto reset = *find_builtin("reset");
    auto data = build_datasets(collect(reset, 10000, 7));
    const auto &o4 = data.by_option.at(4);
    for (const auto &x : o4.init_pos)
        CHECK(x[1] == 1.0);
    for (const auto &x : o4.eff_pos)
        CHECK(x[2] == 1.0);
    for (const auto &[id, ds] : data.by_option) {
        std::set<LowLevelState> pos(ds.init_pos.begin(), ds.init_pos.end());
        for (const auto &x : ds.init_neg)
            CHECK_FALSE(pos.count(x));
    }
    CHECK(compute_mask(data.by_option.at(1)) == VarSet{0, 1, 2, 3, 4, 5});
    CHECK(compute_mask(o4) == VarSet{2});
}

TEST_CASE("masks match reachable dynamics") {
    for (const auto &spec : builtin_scenarios()) {
        auto data = build_datasets(collect(spec, 10000, 7));
        for (const auto &r : spec.options) {
            REQUIRE(data.by_option.count(r.id));
            CHECK(compute_mask(data.by_option.at(r.id)) == expected_mask(spec, r));
        }
    }
}

TEST_CASE("compute_mask rejects degenerate input") {
    OptionDatasets none;
    none.option = 1;
    CHECK_THROWS_AS(compute_mask(none), InputError);
    OptionDatasets still;
    still.option = 1;
    still.mask_pairs.emplace_back(st("01"), st("01"));
    CHECK_THROWS_AS(compute_mask(still), InputError);
}

TEST_CASE("log round-trip") {
    auto log = collect(*find_builtin("negative"), 200, 9);
    std::stringstream buf;
    write_log(buf, log);
    std::string first = buf.str().substr(0, buf.str().find('\n'));
    CHECK(first.find("\"step\":0") != std::string::npos);
    CHECK(read_log(buf) == log);

    std::istringstream broken("{\"step\":0,\"option\":1,\"before\":\"000000\",\"success\":true,"
                              "\"after\":\"010000\"}\n{\"step\":1}\n");
    try {
        read_log(broken);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
    std::istringstream inert("{\"step\":0,\"option\":1,\"before\":\"000000\",\"success\":false,"
                             "\"after\":\"010000\"}\n");
    CHECK_THROWS_AS(read_log(inert), ParseError);
}

}  // TEST_SUITE
