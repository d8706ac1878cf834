#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdit/sample_set.hpp"

namespace fdit {

/// Rooted forward tree over sample ids. Non-members have infinite
/// cost-to-come; parent/child links are kept mutually consistent and g values
/// always equal the parent's g plus the connecting edge cost.
class ForwardTree {
public:
    using EdgeCostFn = std::function<double(SampleId, SampleId)>;

    explicit ForwardTree(SampleId root) : root_(root) {
        ensure_capacity(root + 1);
        g_[root] = 0.0;
    }

    void ensure_capacity(std::size_t id_count) {
        if (g_.size() < id_count) {
            g_.resize(id_count, std::numeric_limits<double>::infinity());
            parent_.resize(id_count, kNone);
            children_.resize(id_count);
        }
    }

    SampleId root() const { return root_; }
    bool contains(SampleId v) const { return v < g_.size() && std::isfinite(g_[v]); }
    double g(SampleId v) const {
        return v < g_.size() ? g_[v] : std::numeric_limits<double>::infinity();
    }
    std::optional<SampleId> parent(SampleId v) const {
        if (v >= parent_.size() || parent_[v] == kNone) return std::nullopt;
        return static_cast<SampleId>(parent_[v]);
    }
    std::span<const SampleId> children(SampleId v) const {
        if (v >= children_.size()) return {};
        return children_[v];
    }

    /// All members, ascending id.
    std::vector<SampleId> vertices() const {
        std::vector<SampleId> out;
        for (SampleId v = 0; v < g_.size(); ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

    /// Attach v under new_parent (insertion or rewire). Recomputes g for v and
    /// its whole subtree through edge_cost and reports every updated vertex.
    void attach(SampleId v, SampleId new_parent, double edge_cost, const EdgeCostFn& edge_cost_fn,
                std::vector<SampleId>& updated) {
        ensure_capacity(std::max<std::size_t>(v, new_parent) + 1);
        if (v == root_) throw std::logic_error("ForwardTree: cannot reparent the root");
        if (!contains(new_parent)) throw std::logic_error("ForwardTree: parent not in tree");
        detach(v);
        parent_[v] = static_cast<std::int64_t>(new_parent);
        children_[new_parent].push_back(v);
        g_[v] = g_[new_parent] + edge_cost;
        updated.push_back(v);
        refresh_subtree(v, edge_cost_fn, updated);
    }

    /// Remove v and its whole subtree from the tree (members become plain
    /// samples again); reports every removed vertex.
    void remove_subtree(SampleId v, std::vector<SampleId>& removed) {
        if (!contains(v)) return;
        if (v == root_) throw std::logic_error("ForwardTree: cannot remove the root");
        detach(v);
        std::vector<SampleId> stack{v};
        while (!stack.empty()) {
            const SampleId u = stack.back();
            stack.pop_back();
            removed.push_back(u);
            g_[u] = std::numeric_limits<double>::infinity();
            parent_[u] = kNone;
            for (SampleId c : children_[u]) stack.push_back(c);
            children_[u].clear();
        }
    }

    /// Root-to-v id chain; throws if v is not connected.
    std::vector<SampleId> path_from_root(SampleId v) const {
        if (!contains(v)) throw std::invalid_argument("ForwardTree: vertex not connected to root");
        std::vector<SampleId> path;
        for (SampleId cursor = v;;) {
            path.push_back(cursor);
            if (cursor == root_) break;
            cursor = static_cast<SampleId>(parent_[cursor]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    /// Exact recomputation audit: g(child) == g(parent) + edge cost.
    bool g_consistent(const EdgeCostFn& edge_cost_fn, double tol) const {
        if (g_[root_] != 0.0) return false;
        for (SampleId v = 0; v < g_.size(); ++v) {
            if (!contains(v) || v == root_) continue;
            const auto p = parent(v);
            if (!p || !contains(*p)) return false;
            if (std::abs(g_[v] - (g_[*p] + edge_cost_fn(*p, v))) > tol) return false;
            const auto siblings = children(*p);
            if (std::find(siblings.begin(), siblings.end(), v) == siblings.end()) return false;
        }
        return true;
    }

private:
    static constexpr std::int64_t kNone = -1;

    void detach(SampleId v) {
        if (parent_[v] == kNone) return;
        auto& siblings = children_[static_cast<SampleId>(parent_[v])];
        siblings.erase(std::find(siblings.begin(), siblings.end(), v));
        parent_[v] = kNone;
    }

    void refresh_subtree(SampleId v, const EdgeCostFn& edge_cost_fn,
                         std::vector<SampleId>& updated) {
        std::vector<SampleId> stack{v};
        while (!stack.empty()) {
            const SampleId u = stack.back();
            stack.pop_back();
            for (SampleId c : children_[u]) {
                g_[c] = g_[u] + edge_cost_fn(u, c);
                updated.push_back(c);
                stack.push_back(c);
            }
        }
    }

    SampleId root_;
    std::vector<double> g_;
    std::vector<std::int64_t> parent_;
    std::vector<std::vector<SampleId>> children_;
};

}  // namespace fdit
