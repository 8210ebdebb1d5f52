#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kdsim/errors.hpp"

namespace kdsim {

// A positive knowledge value whose immediate prerequisite is still zero.
struct StateViolation {
    std::size_t element = 0;
    std::size_t missing_prerequisite = 0;

    friend bool operator==(const StateViolation&, const StateViolation&) = default;
};

// Partially ordered set of knowledge kinds. Input cover pairs may contain
// transitive extras; construction reduces them to the Hasse diagram and
// rejects cycles. Immutable afterwards.
class KnowledgeDomain {
public:
    static KnowledgeDomain build(std::vector<std::string> labels,
                                 const std::vector<std::pair<std::string, std::string>>& cover_pairs) {
        KnowledgeDomain dom;
        dom.labels_ = std::move(labels);
        const std::size_t n = dom.labels_.size();
        if (n == 0)
            throw InvalidParameter("KnowledgeDomain: need at least one element");
        for (std::size_t i = 0; i < n; ++i)
            if (!dom.index_.emplace(dom.labels_[i], i).second)
                throw InvalidParameter("KnowledgeDomain: duplicate label '" + dom.labels_[i] + "'");

        // raw digraph of below -> above
        std::vector<std::vector<std::size_t>> up(n);
        for (const auto& [below, above] : cover_pairs) {
            const std::size_t a = dom.index_of(below);
            const std::size_t b = dom.index_of(above);
            if (a == b)
                throw CycleDetected("cycle detected: " + below + " -> " + above);
            if (std::find(up[a].begin(), up[a].end(), b) == up[a].end())
                up[a].push_back(b);
        }

        dom.check_acyclic(up);

        // transitive closure, then keep exactly the cover pairs of the order
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a)
            dom.mark_reachable(up, a, a, reach[a]);
        dom.below_.assign(n, {});
        dom.above_.assign(n, {});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (!reach[a][b])
                    continue;
                bool has_mid = false;
                for (std::size_t c = 0; c < n && !has_mid; ++c)
                    if (c != a && c != b && reach[a][c] && reach[c][b])
                        has_mid = true;
                if (!has_mid) {
                    dom.above_[a].push_back(b);
                    dom.below_[b].push_back(a);
                }
            }
        for (auto& v : dom.below_)
            std::sort(v.begin(), v.end());
        for (auto& v : dom.above_)
            std::sort(v.begin(), v.end());
        return dom;
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t k) const { return labels_[k]; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end())
            throw UnknownLabel("unknown knowledge label '" + label + "'");
        return it->second;
    }

    // Immediate prerequisites of k (the paper's lower shadow), ascending.
    const std::vector<std::size_t>& lower_shadow(std::size_t k) const {
        check_element(k);
        return below_[k];
    }

    const std::vector<std::size_t>& upper_shadow(std::size_t k) const {
        check_element(k);
        return above_[k];
    }

    std::vector<std::size_t> maximal_elements() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < size(); ++k)
            if (above_[k].empty())
                out.push_back(k);
        return out;
    }

    std::vector<std::size_t> minimal_elements() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < size(); ++k)
            if (below_[k].empty())
                out.push_back(k);
        return out;
    }

    // (below, above) pairs of the Hasse diagram, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b : above_[a])
                out.emplace_back(a, b);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Every positive element whose lower shadow contains a zero entry.
    // Values must be non-negative and one per element.
    std::vector<StateViolation> validate_state(std::span<const double> knowledge) const {
        if (knowledge.size() != size())
            throw DimensionMismatch("validate_state: vector length does not match element count");
        for (double v : knowledge)
            if (v < 0.0)
                throw InvalidParameter("validate_state: knowledge entries must be >= 0");
        std::vector<StateViolation> out;
        for (std::size_t k = 0; k < size(); ++k) {
            if (knowledge[k] <= 0.0)
                continue;
            for (std::size_t p : below_[k])
                if (knowledge[p] == 0.0)
                    out.push_back({k, p});
        }
        return out;
    }

    friend bool operator==(const KnowledgeDomain& a, const KnowledgeDomain& b) {
        return a.labels_ == b.labels_ && a.below_ == b.below_;
    }

private:
    void check_element(std::size_t k) const {
        if (k >= size())
            throw UnknownLabel("knowledge element index out of range");
    }

    void check_acyclic(const std::vector<std::vector<std::size_t>>& up) const {
        const std::size_t n = labels_.size();
        std::vector<int> color(n, 0); // 0 new, 1 on stack, 2 done
        std::vector<std::size_t> trail;
        for (std::size_t s = 0; s < n; ++s)
            if (color[s] == 0 && dfs_cycle(up, s, color, trail)) {
                std::string msg = "cycle detected: ";
                for (std::size_t k : trail)
                    msg += labels_[k] + " -> ";
                msg += labels_[trail.front()];
                throw CycleDetected(msg);
            }
    }

    bool dfs_cycle(const std::vector<std::vector<std::size_t>>& up, std::size_t v,
                   std::vector<int>& color, std::vector<std::size_t>& trail) const {
        color[v] = 1;
        trail.push_back(v);
        for (std::size_t w : up[v]) {
            if (color[w] == 1) {
                // trim the trail to the cycle itself
                auto it = std::find(trail.begin(), trail.end(), w);
                trail.erase(trail.begin(), it);
                return true;
            }
            if (color[w] == 0 && dfs_cycle(up, w, color, trail))
                return true;
        }
        color[v] = 2;
        trail.pop_back();
        return false;
    }

    void mark_reachable(const std::vector<std::vector<std::size_t>>& up, std::size_t origin,
                        std::size_t v, std::vector<bool>& reach) const {
        for (std::size_t w : up[v]) {
            if (reach[w])
                continue;
            reach[w] = true;
            mark_reachable(up, origin, w, reach);
        }
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> below_, above_;
};

} // namespace kdsim
