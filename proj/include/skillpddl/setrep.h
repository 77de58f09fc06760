#pragma once

#include "skillpddl/state.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillpddl {

/*
  Interval filter on one variable inside the [0,1] domain. Both bounds
  carry a strictness flag so that a tree decision "v > t" becomes (t,1]
  and its complement [0,t] without any loss at the threshold.
*/
class Interval {
public:
    // The full domain [0,1].
    Interval() = default;

    static Interval closed(double lo, double hi);
    static Interval make(double lo, bool lo_open, double hi, bool hi_open);
    static Interval above(double threshold);    // (t,1]
    static Interval at_most(double threshold);  // [0,t]

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool lo_open() const { return lo_open_; }
    bool hi_open() const { return hi_open_; }

    bool empty() const;
    bool is_full() const;
    bool contains(double x) const;
    bool is_subset_of(const Interval &other) const;
    Interval intersect(const Interval &other) const;

    // Parts of the domain left and right of this interval.
    Interval left_complement() const;
    Interval right_complement() const;

    bool operator==(const Interval &) const = default;

    // "(0.5,1]"
    std::string to_string() const;

private:
    double lo_ = 0.0;
    double hi_ = 1.0;
    bool lo_open_ = false;
    bool hi_open_ = false;
};

// Conjunction of filters. Variables without a filter are "don't care".
struct Box {
    std::map<VarId, Interval> filters;

    bool empty() const;
    bool contains(const LowLevelState &x) const;
    Interval interval(VarId v) const;
    bool operator==(const Box &) const = default;
};

// Disjunction of boxes. No boxes means the empty set; one box without
// filters is the universal set.
struct BoxSet {
    std::vector<Box> boxes;

    static BoxSet universal() { return BoxSet{{Box{}}}; }
    static BoxSet empty_set() { return BoxSet{}; }
    static BoxSet single(Box b) { return BoxSet{{std::move(b)}}; }

    bool operator==(const BoxSet &) const = default;
};

bool contains_state(const BoxSet &s, const LowLevelState &x);
BoxSet project(const BoxSet &s, const VarSet &out_vars);
BoxSet intersect(const BoxSet &a, const BoxSet &b);
bool is_subset(const BoxSet &a, const BoxSet &b);
bool equivalent(const BoxSet &a, const BoxSet &b);
bool is_empty(const BoxSet &s);
bool is_universal(const BoxSet &s);
VarSet constrained_vars(const BoxSet &s);

// Pieces of r that lie outside b; the pieces are pairwise disjoint.
std::vector<Box> subtract(const Box &r, const Box &b);

// One string per filter, e.g. "v2 in (0.5,1]".
std::vector<std::string> format_box(const Box &b);
Box parse_box(const std::vector<std::string> &filters);
std::string to_string(const BoxSet &s);

// ---------------------------------------------------------------------------
// Decision trees

struct TreeNode {
    bool is_leaf = true;
    bool label = false;
    VarId var = -1;
    double threshold = 0.0;
    int left = -1;   // var <= threshold
    int right = -1;  // var >  threshold
    std::vector<LowLevelState> positives;
    int negatives = 0;
};

class DecisionTree {
public:
    explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<TreeNode> &nodes() const { return nodes_; }
    const TreeNode &root() const { return nodes_.front(); }
    bool classify(const LowLevelState &x) const;
    std::vector<int> true_leaves() const;
    // Filters collected along the path from the root to a node.
    Box path_box(int node) const;
    int depth() const;
    std::string to_string() const;

private:
    std::vector<TreeNode> nodes_;
    std::vector<int> parents() const;
};

/*
  C4.5-style induction on numeric attributes: candidate thresholds are
  the midpoints between adjacent distinct values, each variable offers its
  best-gain threshold, and among the variables whose gain reaches the mean
  gain the one with the highest gain ratio wins. No pruning.
*/
DecisionTree train_tree(const std::vector<LowLevelState> &pos,
                        const std::vector<LowLevelState> &neg, int n_vars);

// Decision-path filters for every true leaf.
BoxSet c45_boxset(const DecisionTree &tree, bool strict = true);

// [min,max] of the positives at every true leaf, over restrict_to when
// given and over all variables otherwise.
BoxSet intm_boxset(const DecisionTree &tree, int n_vars,
                   const std::optional<VarSet> &restrict_to = std::nullopt,
                   bool strict = true);

}  // namespace skillpddl
