#include "skillpddl/setrep.h"

#include "skillpddl/errors.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skillpddl {

namespace {
void check_domain(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw InputError("interval bound outside [0,1]: " + format_number(x));
}
}  // namespace

Interval Interval::make(double lo, bool lo_open, double hi, bool hi_open) {
    check_domain(lo);
    check_domain(hi);
    Interval i;
    i.lo_ = lo;
    i.hi_ = hi;
    i.lo_open_ = lo_open;
    i.hi_open_ = hi_open;
    return i;
}

Interval Interval::closed(double lo, double hi) {
    if (lo > hi)
        throw InputError("interval with lo > hi");
    return make(lo, false, hi, false);
}

Interval Interval::above(double threshold) {
    return make(threshold, true, 1.0, false);
}

Interval Interval::at_most(double threshold) {
    return make(0.0, false, threshold, false);
}

bool Interval::empty() const {
    if (lo_ > hi_)
        return true;
    return lo_ == hi_ && (lo_open_ || hi_open_);
}

bool Interval::is_full() const {
    return lo_ == 0.0 && !lo_open_ && hi_ == 1.0 && !hi_open_;
}

bool Interval::contains(double x) const {
    bool above_lo = lo_open_ ? x > lo_ : x >= lo_;
    bool below_hi = hi_open_ ? x < hi_ : x <= hi_;
    return above_lo && below_hi;
}

bool Interval::is_subset_of(const Interval &other) const {
    if (empty())
        return true;
    if (other.empty())
        return false;
    bool lo_ok = other.lo_ < lo_ || (other.lo_ == lo_ && (!other.lo_open_ || lo_open_));
    bool hi_ok = other.hi_ > hi_ || (other.hi_ == hi_ && (!other.hi_open_ || hi_open_));
    return lo_ok && hi_ok;
}

Interval Interval::intersect(const Interval &other) const {
    Interval r;
    if (lo_ > other.lo_) {
        r.lo_ = lo_;
        r.lo_open_ = lo_open_;
    } else if (lo_ < other.lo_) {
        r.lo_ = other.lo_;
        r.lo_open_ = other.lo_open_;
    } else {
        r.lo_ = lo_;
        r.lo_open_ = lo_open_ || other.lo_open_;
    }
    if (hi_ < other.hi_) {
        r.hi_ = hi_;
        r.hi_open_ = hi_open_;
    } else if (hi_ > other.hi_) {
        r.hi_ = other.hi_;
        r.hi_open_ = other.hi_open_;
    } else {
        r.hi_ = hi_;
        r.hi_open_ = hi_open_ || other.hi_open_;
    }
    return r;
}

Interval Interval::left_complement() const {
    if (lo_ == 0.0 && !lo_open_) {
        // Nothing below a closed 0; return a canonical empty interval.
        return make(1.0, true, 0.0, true);
    }
    return make(0.0, false, lo_, !lo_open_);
}

Interval Interval::right_complement() const {
    if (hi_ == 1.0 && !hi_open_)
        return make(1.0, true, 0.0, true);
    return make(hi_, !hi_open_, 1.0, false);
}

std::string Interval::to_string() const {
    std::string s;
    s += lo_open_ ? '(' : '[';
    s += format_number(lo_);
    s += ',';
    s += format_number(hi_);
    s += hi_open_ ? ')' : ']';
    return s;
}

// ---------------------------------------------------------------------------

bool Box::empty() const {
    return std::any_of(filters.begin(), filters.end(),
                       [](const auto &f) { return f.second.empty(); });
}

bool Box::contains(const LowLevelState &x) const {
    for (const auto &[v, interval] : filters) {
        if (v >= x.size())
            throw InputError("state has no variable " + var_name(v));
        if (!interval.contains(x[v]))
            return false;
    }
    return true;
}

Interval Box::interval(VarId v) const {
    auto it = filters.find(v);
    return it == filters.end() ? Interval() : it->second;
}

namespace {
Box intersect_boxes(const Box &a, const Box &b) {
    Box r = a;
    for (const auto &[v, interval] : b.filters) {
        auto it = r.filters.find(v);
        if (it == r.filters.end())
            r.filters.emplace(v, interval);
        else
            it->second = it->second.intersect(interval);
    }
    return r;
}
}  // namespace

bool contains_state(const BoxSet &s, const LowLevelState &x) {
    return std::any_of(s.boxes.begin(), s.boxes.end(),
                       [&](const Box &b) { return b.contains(x); });
}

BoxSet project(const BoxSet &s, const VarSet &out_vars) {
    BoxSet r = s;
    for (Box &b : r.boxes)
        for (VarId v : out_vars)
            b.filters.erase(v);
    return r;
}

BoxSet intersect(const BoxSet &a, const BoxSet &b) {
    BoxSet r;
    for (const Box &x : a.boxes) {
        for (const Box &y : b.boxes) {
            Box z = intersect_boxes(x, y);
            if (!z.empty())
                r.boxes.push_back(std::move(z));
        }
    }
    return r;
}

std::vector<Box> subtract(const Box &r, const Box &b) {
    if (r.empty())
        return {};
    if (intersect_boxes(r, b).empty())
        return {r};
    std::vector<Box> pieces;
    Box rest = r;
    for (const auto &[v, cut] : b.filters) {
        Interval current = rest.interval(v);
        for (const Interval &side : {cut.left_complement(), cut.right_complement()}) {
            Interval part = current.intersect(side);
            if (!part.empty()) {
                Box piece = rest;
                piece.filters[v] = part;
                pieces.push_back(std::move(piece));
            }
        }
        rest.filters[v] = current.intersect(cut);
    }
    return pieces;
}

bool is_subset(const BoxSet &a, const BoxSet &b) {
    for (const Box &box : a.boxes) {
        std::vector<Box> remaining;
        if (!box.empty())
            remaining.push_back(box);
        for (const Box &cover : b.boxes) {
            if (remaining.empty())
                break;
            std::vector<Box> next;
            for (const Box &piece : remaining) {
                auto parts = subtract(piece, cover);
                next.insert(next.end(), parts.begin(), parts.end());
            }
            remaining = std::move(next);
        }
        if (!remaining.empty())
            return false;
    }
    return true;
}

bool equivalent(const BoxSet &a, const BoxSet &b) {
    return is_subset(a, b) && is_subset(b, a);
}

bool is_empty(const BoxSet &s) {
    return std::all_of(s.boxes.begin(), s.boxes.end(), [](const Box &b) { return b.empty(); });
}

bool is_universal(const BoxSet &s) {
    return is_subset(BoxSet::universal(), s);
}

VarSet constrained_vars(const BoxSet &s) {
    VarSet vars;
    for (const Box &b : s.boxes)
        for (const auto &f : b.filters)
            vars.insert(f.first);
    return vars;
}

// ---------------------------------------------------------------------------
// Text form

std::vector<std::string> format_box(const Box &b) {
    std::vector<std::string> out;
    for (const auto &[v, interval] : b.filters)
        out.push_back(var_name(v) + " in " + interval.to_string());
    return out;
}

namespace {
std::pair<VarId, Interval> parse_filter(const std::string &text) {
    // v<i> in (lo,hi]
    auto fail = [&]() -> std::pair<VarId, Interval> {
        throw ParseError("bad filter '" + text + "', expected \"v<i> in [lo,hi]\"");
    };
    auto in_pos = text.find(" in ");
    if (text.size() < 2 || text[0] != 'v' || in_pos == std::string::npos)
        return fail();
    std::string var_part = text.substr(1, in_pos - 1);
    std::string range = text.substr(in_pos + 4);
    if (var_part.empty() || var_part.find_first_not_of("0123456789") != std::string::npos)
        return fail();
    int index = std::stoi(var_part);
    if (index < 1 || range.size() < 5)
        return fail();
    char open_c = range.front();
    char close_c = range.back();
    auto comma = range.find(',');
    if ((open_c != '(' && open_c != '[') || (close_c != ')' && close_c != ']') ||
        comma == std::string::npos)
        return fail();
    double lo = parse_number(std::string_view(range).substr(1, comma - 1));
    double hi = parse_number(std::string_view(range).substr(comma + 1, range.size() - comma - 2));
    return {index - 1, Interval::make(lo, open_c == '(', hi, close_c == ')')};
}
}  // namespace

Box parse_box(const std::vector<std::string> &filters) {
    Box b;
    for (const std::string &f : filters) {
        auto [v, interval] = parse_filter(f);
        if (!b.filters.emplace(v, interval).second)
            throw ParseError("variable listed twice in box: " + f);
    }
    return b;
}

std::string to_string(const BoxSet &s) {
    if (s.boxes.empty())
        return "false";
    std::ostringstream out;
    for (std::size_t i = 0; i < s.boxes.size(); ++i) {
        if (i)
            out << " | ";
        auto parts = format_box(s.boxes[i]);
        if (parts.empty()) {
            out << "true";
            continue;
        }
        out << '(';
        for (std::size_t j = 0; j < parts.size(); ++j)
            out << (j ? " & " : "") << parts[j];
        out << ')';
    }
    return out.str();
}

}  // namespace skillpddl
