#include "skillpddl/setrep.h"

#include "skillpddl/errors.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace skillpddl {

namespace {

double entropy(double a, double b) {
    double n = a + b;
    double h = 0.0;
    for (double c : {a, b}) {
        if (c > 0.0) {
            double p = c / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

struct Candidate {
    VarId var;
    double threshold;
    double gain;
    double ratio;
};

class TreeBuilder {
public:
    TreeBuilder(const std::vector<LowLevelState> &pos, const std::vector<LowLevelState> &neg,
                int n_vars)
        : pos_(pos), neg_(neg), n_vars_(n_vars) {}

    std::vector<TreeNode> run() {
        std::vector<int> p(pos_.size()), n(neg_.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = static_cast<int>(i);
        for (std::size_t i = 0; i < n.size(); ++i)
            n[i] = static_cast<int>(i);
        build(p, n);
        return std::move(nodes_);
    }

private:
    const std::vector<LowLevelState> &pos_;
    const std::vector<LowLevelState> &neg_;
    int n_vars_;
    std::vector<TreeNode> nodes_;

    int make_leaf(const std::vector<int> &p, const std::vector<int> &n, bool label) {
        TreeNode node;
        node.is_leaf = true;
        node.label = label;
        for (int i : p)
            node.positives.push_back(pos_[i]);
        node.negatives = static_cast<int>(n.size());
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size()) - 1;
    }

    // Best-gain threshold of one variable; ties keep the lowest threshold.
    std::optional<Candidate> best_for(VarId v, const std::vector<int> &p,
                                      const std::vector<int> &n) const {
        std::vector<double> values;
        values.reserve(p.size() + n.size());
        for (int i : p)
            values.push_back(pos_[i][v]);
        for (int i : n)
            values.push_back(neg_[i][v]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() < 2)
            return std::nullopt;

        const double total = static_cast<double>(p.size() + n.size());
        const double base = entropy(static_cast<double>(p.size()), static_cast<double>(n.size()));
        std::optional<Candidate> best;
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            double t = 0.5 * (values[k] + values[k + 1]);
            double pl = 0, nl = 0;
            for (int i : p)
                pl += pos_[i][v] <= t;
            for (int i : n)
                nl += neg_[i][v] <= t;
            double pr = static_cast<double>(p.size()) - pl;
            double nr = static_cast<double>(n.size()) - nl;
            double left = pl + nl, right = pr + nr;
            double rem = (left / total) * entropy(pl, nl) + (right / total) * entropy(pr, nr);
            double gain = base - rem;
            double split_info = entropy(left, right);
            double ratio = split_info > 0.0 ? gain / split_info : 0.0;
            if (!best || gain > best->gain + 1e-12)
                best = Candidate{v, t, gain, ratio};
        }
        return best;
    }

    int build(const std::vector<int> &p, const std::vector<int> &n) {
        if (n.empty())
            return make_leaf(p, n, true);
        if (p.empty())
            return make_leaf(p, n, false);

        std::vector<Candidate> candidates;
        for (VarId v = 0; v < n_vars_; ++v)
            if (auto c = best_for(v, p, n))
                candidates.push_back(*c);
        if (candidates.empty()) {
            // Identical states with both labels; only reachable with noisy data.
            return make_leaf(p, n, p.size() >= n.size());
        }

        double mean_gain = 0.0;
        for (const Candidate &c : candidates)
            mean_gain += c.gain;
        mean_gain /= static_cast<double>(candidates.size());

        const Candidate *chosen = nullptr;
        for (const Candidate &c : candidates) {
            if (c.gain + 1e-12 < mean_gain)
                continue;
            if (!chosen || c.ratio > chosen->ratio + 1e-12)
                chosen = &c;
        }

        std::vector<int> pl, pr, nl, nr;
        for (int i : p)
            (pos_[i][chosen->var] <= chosen->threshold ? pl : pr).push_back(i);
        for (int i : n)
            (neg_[i][chosen->var] <= chosen->threshold ? nl : nr).push_back(i);

        int index = static_cast<int>(nodes_.size());
        TreeNode node;
        node.is_leaf = false;
        node.var = chosen->var;
        node.threshold = chosen->threshold;
        node.negatives = static_cast<int>(n.size());
        nodes_.push_back(std::move(node));
        int left = build(pl, nl);
        int right = build(pr, nr);
        nodes_[index].left = left;
        nodes_[index].right = right;
        return index;
    }
};

}  // namespace

DecisionTree train_tree(const std::vector<LowLevelState> &pos,
                        const std::vector<LowLevelState> &neg, int n_vars) {
    if (pos.empty())
        throw InputError("train_tree: no positive examples");
    for (const auto *set : {&pos, &neg})
        for (const LowLevelState &s : *set)
            if (s.size() != n_vars)
                throw InputError("train_tree: example has " + std::to_string(s.size()) +
                                 " values, expected " + std::to_string(n_vars));
    return DecisionTree(TreeBuilder(pos, neg, n_vars).run());
}

bool DecisionTree::classify(const LowLevelState &x) const {
    int i = 0;
    while (!nodes_[i].is_leaf)
        i = x[nodes_[i].var] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    return nodes_[i].label;
}

std::vector<int> DecisionTree::true_leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_leaf && nodes_[i].label)
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> DecisionTree::parents() const {
    std::vector<int> parent(nodes_.size(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!nodes_[i].is_leaf) {
            parent[nodes_[i].left] = static_cast<int>(i);
            parent[nodes_[i].right] = static_cast<int>(i);
        }
    }
    return parent;
}

Box DecisionTree::path_box(int node) const {
    auto parent = parents();
    Box box;
    for (int child = node, up = parent[node]; up >= 0; child = up, up = parent[up]) {
        const TreeNode &d = nodes_[up];
        Interval side = child == d.left ? Interval::at_most(d.threshold)
                                        : Interval::above(d.threshold);
        auto it = box.filters.find(d.var);
        if (it == box.filters.end())
            box.filters.emplace(d.var, side);
        else
            it->second = it->second.intersect(side);
    }
    return box;
}

int DecisionTree::depth() const {
    std::function<int(int)> rec = [&](int i) -> int {
        if (nodes_[i].is_leaf)
            return 0;
        return 1 + std::max(rec(nodes_[i].left), rec(nodes_[i].right));
    };
    return rec(0);
}

std::string DecisionTree::to_string() const {
    std::ostringstream out;
    std::function<void(int, int)> rec = [&](int i, int indent) {
        std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        const TreeNode &node = nodes_[i];
        if (node.is_leaf) {
            out << pad << (node.label ? "true" : "false") << " (" << node.positives.size()
                << "+/" << node.negatives << "-)\n";
            return;
        }
        out << pad << var_name(node.var) << " <= " << format_number(node.threshold) << ":\n";
        rec(node.left, indent + 1);
        out << pad << var_name(node.var) << " > " << format_number(node.threshold) << ":\n";
        rec(node.right, indent + 1);
    };
    rec(0, 0);
    return out.str();
}

BoxSet c45_boxset(const DecisionTree &tree, bool strict) {
    auto leaves = tree.true_leaves();
    if (strict && leaves.size() > 1)
        throw RestrictionError("tree has " + std::to_string(leaves.size()) +
                               " true leaves; only one is allowed in strict mode");
    BoxSet s;
    for (int leaf : leaves)
        s.boxes.push_back(tree.path_box(leaf));
    return s;
}

BoxSet intm_boxset(const DecisionTree &tree, int n_vars, const std::optional<VarSet> &restrict_to,
                   bool strict) {
    auto leaves = tree.true_leaves();
    if (leaves.empty())
        throw InputError("intm_boxset: tree has no true leaf");
    if (strict && leaves.size() > 1)
        throw RestrictionError("tree has " + std::to_string(leaves.size()) +
                               " true leaves; only one is allowed in strict mode");
    VarSet scope;
    if (restrict_to) {
        for (VarId v : *restrict_to)
            if (v < 0 || v >= n_vars)
                throw InputError("intm_boxset: variable out of range");
        scope = *restrict_to;
    } else {
        for (VarId v = 0; v < n_vars; ++v)
            scope.insert(v);
    }
    BoxSet s;
    for (int leaf : leaves) {
        const auto &examples = tree.nodes()[leaf].positives;
        if (examples.empty())
            throw InputError("intm_boxset: true leaf without positive examples");
        Box box;
        for (VarId v : scope) {
            double lo = examples.front()[v], hi = lo;
            for (const LowLevelState &x : examples) {
                lo = std::min(lo, x[v]);
                hi = std::max(hi, x[v]);
            }
            box.filters.emplace(v, Interval::closed(lo, hi));
        }
        s.boxes.push_back(std::move(box));
    }
    return s;
}

}  // namespace skillpddl
