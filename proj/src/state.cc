#include "skillpddl/state.h"

#include "skillpddl/errors.h"

#include <charconv>
#include <string>

namespace skillpddl {

std::string var_name(VarId v) {
    return "v" + std::to_string(v + 1);
}

std::string format_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError("bad number '" + std::string(text) + "'");
    return value;
}

std::string format_state(const LowLevelState &s) {
    std::string out;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i)
            out += ',';
        out += format_number(s.values[i]);
    }
    return out;
}

LowLevelState parse_state(std::string_view text) {
    LowLevelState s;
    if (text.empty())
        return s;
    if (text.find(',') == std::string_view::npos &&
        text.find_first_not_of("01") == std::string_view::npos && text.size() > 1) {
        for (char c : text)
            s.values.push_back(c == '1' ? 1.0 : 0.0);
        return s;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                        : comma - start);
        double v = parse_number(item);
        if (v < 0.0 || v > 1.0)
            throw ParseError("state value out of [0,1]: " + std::string(item));
        s.values.push_back(v);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return s;
}

std::vector<LowLevelState> all_binary_states(int n_vars) {
    std::vector<LowLevelState> out;
    const unsigned count = 1u << n_vars;
    out.reserve(count);
    for (unsigned code = 0; code < count; ++code) {
        LowLevelState s = LowLevelState::zeros(n_vars);
        for (int v = 0; v < n_vars; ++v)
            if (code & (1u << (n_vars - 1 - v)))
                s[v] = 1.0;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace skillpddl
