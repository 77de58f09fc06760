// Shared helpers for the test binaries: state builders, random set
// generators and enumeration oracles that never call into the set algebra.
#pragma once

#include "skillpddl/setrep.h"
#include "skillpddl/state.h"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace skillpddl;

inline LowLevelState st(const std::string &bits) {
    LowLevelState s;
    for (char c : bits)
        s.values.push_back(c == '1' ? 1.0 : 0.0);
    return s;
}

// Filter-by-filter membership, recomputed from the raw bounds.
inline bool in_interval(const Interval &i, double x) {
    bool lo = i.lo_open() ? x > i.lo() : x >= i.lo();
    bool hi = i.hi_open() ? x < i.hi() : x <= i.hi();
    return lo && hi;
}

inline bool oracle_contains(const BoxSet &s, const std::vector<double> &x) {
    for (const Box &b : s.boxes) {
        bool all = true;
        for (const auto &[v, i] : b.filters)
            if (!in_interval(i, x[static_cast<std::size_t>(v)]))
                all = false;
        if (all)
            return true;
    }
    return false;
}

// Every point of {0, 1/8, ..., 1}^n. With interval endpoints on the quarter
// grid each non-empty cell of a box difference contains one of these.
inline std::vector<std::vector<double>> eighth_grid(int n) {
    std::vector<std::vector<double>> out{{}};
    for (int d = 0; d < n; ++d) {
        std::vector<std::vector<double>> next;
        for (const auto &p : out)
            for (int k = 0; k <= 8; ++k) {
                auto q = p;
                q.push_back(k / 8.0);
                next.push_back(q);
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::vector<double>> binary_grid(int n) {
    std::vector<std::vector<double>> out;
    for (const LowLevelState &s : all_binary_states(n))
        out.push_back(s.values);
    return out;
}

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
    bool coin() { return rng() & 1u; }

    // quarter-grid endpoints, random strictness
    Interval quarter_interval() {
        int a = pick(5), b = pick(5);
        if (a > b)
            std::swap(a, b);
        return Interval::make(a / 4.0, coin(), b / 4.0, coin());
    }

    // C4.5 thresholds or IntM point bounds; mixing the two styles gives sets
    // that agree on {0,1} but not on [0,1]
    bool point_bounds = false;

    Interval binary_interval() {
        if (point_bounds)
            return coin() ? Interval::closed(0, 0) : Interval::closed(1, 1);
        return coin() ? Interval::above(0.5) : Interval::at_most(0.5);
    }

    Box box(int n_vars, bool binary) {
        Box b;
        for (VarId v = 0; v < n_vars; ++v)
            if (pick(3) == 0)
                b.filters[v] = binary ? binary_interval() : quarter_interval();
        return b;
    }

    BoxSet boxset(int n_vars, bool binary, int max_boxes = 3) {
        BoxSet s;
        int k = pick(max_boxes + 1);
        for (int i = 0; i < k; ++i)
            s.boxes.push_back(box(n_vars, binary));
        return s;
    }

    VarSet vars(int n_vars) {
        VarSet w;
        for (VarId v = 0; v < n_vars; ++v)
            if (coin())
                w.insert(v);
        return w;
    }
};

}  // namespace testing
