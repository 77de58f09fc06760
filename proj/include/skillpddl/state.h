#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace skillpddl {

// Variables are 0-based internally and printed as v1..vn.
using VarId = int;
using VarSet = std::set<VarId>;
using OptionId = int;  // 1-based, o_1..o_r

std::string var_name(VarId v);

// Shortest decimal that round-trips.
std::string format_number(double x);
double parse_number(std::string_view text);

struct LowLevelState {
    std::vector<double> values;

    LowLevelState() = default;
    explicit LowLevelState(std::vector<double> v) : values(std::move(v)) {}

    static LowLevelState zeros(int n_vars) {
        return LowLevelState(std::vector<double>(static_cast<std::size_t>(n_vars), 0.0));
    }

    int size() const { return static_cast<int>(values.size()); }
    double operator[](VarId v) const { return values[static_cast<std::size_t>(v)]; }
    double &operator[](VarId v) { return values[static_cast<std::size_t>(v)]; }

    auto operator<=>(const LowLevelState &) const = default;
    bool operator==(const LowLevelState &) const = default;
};

// Comma-separated shortest round-trip decimals: "1,0,0.25".
std::string format_state(const LowLevelState &s);

// Accepts the comma-separated form, or a compact digit string such as
// "010000" where every character is 0 or 1.
LowLevelState parse_state(std::string_view text);

// All 2^n binary states, v1 as the most significant digit.
std::vector<LowLevelState> all_binary_states(int n_vars);

}  // namespace skillpddl
