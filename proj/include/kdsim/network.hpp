#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kdsim/errors.hpp"
#include "kdsim/rng.hpp"

namespace kdsim {

// Stable handle for one knowledge worker. Ids grow monotonically and are never
// reused after removal, so a stale id fails loudly instead of aliasing.
struct AgentId {
    std::uint32_t value = 0;

    friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

inline constexpr double kDefaultEdgeStrength = 1.0;

// One knowledge layer: an undirected weighted graph over dense node slots.
// Node identity lives in MultilayerNetwork; the topology only sees slot
// numbers 0..n-1 that all layers share.
class LayerTopology {
public:
    struct Edge {
        std::uint32_t to = 0;
        double strength = kDefaultEdgeStrength;
    };

    explicit LayerTopology(std::size_t node_count = 0) : adj_(node_count) {}

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }

    const std::vector<Edge>& neighbors(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return adj_[u].size(); }

    bool has_edge(std::size_t u, std::size_t v) const {
        for (const Edge& e : adj_[u])
            if (e.to == v)
                return true;
        return false;
    }

    // 0 when the edge is absent.
    double strength(std::size_t u, std::size_t v) const {
        for (const Edge& e : adj_[u])
            if (e.to == v)
                return e.strength;
        return 0.0;
    }

    void add_edge(std::size_t u, std::size_t v, double f = kDefaultEdgeStrength) {
        check_slot(u);
        check_slot(v);
        if (u == v)
            throw InvalidParameter("LayerTopology: self-loops are not allowed");
        if (f < 0.0)
            throw InvalidParameter("LayerTopology: edge strength must be >= 0");
        if (has_edge(u, v))
            throw InvalidParameter("LayerTopology: duplicate edge");
        adj_[u].push_back({static_cast<std::uint32_t>(v), f});
        adj_[v].push_back({static_cast<std::uint32_t>(u), f});
        ++edges_;
        invalidate();
    }

    // Adds the edge when absent, otherwise updates its strength.
    void set_strength(std::size_t u, std::size_t v, double f) {
        check_slot(u);
        check_slot(v);
        if (f < 0.0)
            throw InvalidParameter("LayerTopology: edge strength must be >= 0");
        if (!has_edge(u, v)) {
            add_edge(u, v, f);
            return;
        }
        for (Edge& e : adj_[u])
            if (e.to == v)
                e.strength = f;
        for (Edge& e : adj_[v])
            if (e.to == u)
                e.strength = f;
    }

    bool remove_edge(std::size_t u, std::size_t v) {
        if (!has_edge(u, v))
            return false;
        drop(adj_[u], v);
        drop(adj_[v], u);
        --edges_;
        invalidate();
        return true;
    }

    // Deletes every edge at u; returns how many were deleted.
    std::size_t remove_incident(std::size_t u) {
        std::size_t removed = adj_[u].size();
        for (const Edge& e : adj_[u])
            drop(adj_[e.to], u);
        adj_[u].clear();
        edges_ -= removed;
        invalidate();
        return removed;
    }

    void insert_node() {
        adj_.emplace_back();
        invalidate();
    }

    // Removes slot u; slots above shift down by one.
    void erase_node(std::size_t u) {
        remove_incident(u);
        adj_.erase(adj_.begin() + static_cast<std::ptrdiff_t>(u));
        for (auto& list : adj_)
            for (Edge& e : list)
                if (e.to > u)
                    --e.to;
        invalidate();
    }

    std::size_t max_degree() const {
        fill_cache();
        return max_degree_;
    }

    // Local clustering: edges among neighbours over d(d-1)/2, 0 when d < 2.
    double clustering(std::size_t u) const {
        fill_cache();
        return clustering_[u];
    }

private:
    void check_slot(std::size_t u) const {
        if (u >= adj_.size())
            throw InvalidParameter("LayerTopology: slot out of range");
    }

    static void drop(std::vector<Edge>& list, std::size_t v) {
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [v](const Edge& e) { return e.to == v; }),
                   list.end());
    }

    void invalidate() { cache_valid_ = false; }

    void fill_cache() const {
        if (cache_valid_)
            return;
        const std::size_t n = adj_.size();
        max_degree_ = 0;
        clustering_.assign(n, 0.0);
        std::vector<std::vector<std::uint32_t>> sorted(n);
        for (std::size_t u = 0; u < n; ++u) {
            max_degree_ = std::max(max_degree_, adj_[u].size());
            sorted[u].reserve(adj_[u].size());
            for (const Edge& e : adj_[u])
                sorted[u].push_back(e.to);
            std::sort(sorted[u].begin(), sorted[u].end());
        }
        for (std::size_t u = 0; u < n; ++u) {
            const std::size_t d = sorted[u].size();
            if (d < 2)
                continue;
            std::size_t links = 0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a + 1; b < d; ++b) {
                    const auto& nb = sorted[sorted[u][a]];
                    if (std::binary_search(nb.begin(), nb.end(), sorted[u][b]))
                        ++links;
                }
            clustering_[u] = static_cast<double>(links) /
                             (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
        }
        cache_valid_ = true;
    }

    std::vector<std::vector<Edge>> adj_;
    std::size_t edges_ = 0;
    mutable bool cache_valid_ = false;
    mutable std::size_t max_degree_ = 0;
    mutable std::vector<double> clustering_;
};

// Watts-Strogatz small world: ring lattice of even degree k, then each lattice
// edge keeps its near endpoint and is rewired with probability p to a uniform
// non-duplicate target. Edge count is preserved for every p.
inline LayerTopology generate_watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
    if (n < 3)
        throw InvalidParameter("watts_strogatz: need at least 3 nodes");
    if (k % 2 != 0)
        throw InvalidParameter("watts_strogatz: ring degree k must be even");
    if (k >= n)
        throw InvalidParameter("watts_strogatz: ring degree k must be < n");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidParameter("watts_strogatz: rewiring probability must be in [0,1]");

    LayerTopology g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t off = 1; off <= k / 2; ++off)
            g.add_edge(u, (u + off) % n);

    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t off = 1; off <= k / 2; ++off) {
            const std::size_t v = (u + off) % n;
            if (!rng.bernoulli(p))
                continue;
            if (!g.has_edge(u, v))
                continue;
            if (g.degree(u) >= n - 1)
                continue; // fully connected, no target left
            std::size_t w = u;
            while (w == u || g.has_edge(u, w))
                w = rng.index(n);
            g.remove_edge(u, v);
            g.add_edge(u, w);
        }
    }
    return g;
}

struct RemovalSummary {
    AgentId id;
    std::vector<std::size_t> edges_deleted; // per layer
};

// The multilayer graph: one shared node registry, one LayerTopology per
// knowledge kind. Public queries speak AgentId; the engine walks slots.
class MultilayerNetwork {
public:
    MultilayerNetwork(std::size_t layer_count, std::size_t node_count) {
        if (layer_count == 0)
            throw InvalidParameter("MultilayerNetwork: need at least one layer");
        layers_.assign(layer_count, LayerTopology(node_count));
        init_registry(node_count);
    }

    static MultilayerNetwork with_shared_topology(std::size_t layer_count, const LayerTopology& shared) {
        MultilayerNetwork net(layer_count, shared.node_count());
        for (auto& layer : net.layers_)
            layer = shared;
        return net;
    }

    static MultilayerNetwork with_layers(std::vector<LayerTopology> layers) {
        if (layers.empty())
            throw InvalidParameter("MultilayerNetwork: need at least one layer");
        const std::size_t n = layers.front().node_count();
        for (const auto& layer : layers)
            if (layer.node_count() != n)
                throw InvalidParameter("MultilayerNetwork: layers disagree on node count");
        MultilayerNetwork net(layers.size(), n);
        net.layers_ = std::move(layers);
        return net;
    }

    std::size_t layer_count() const { return layers_.size(); }
    std::size_t agent_count() const { return ids_.size(); }
    const std::vector<AgentId>& agents() const { return ids_; }

    bool contains(AgentId id) const { return slot_.count(id.value) != 0; }

    std::size_t slot_of(AgentId id) const {
        auto it = slot_.find(id.value);
        if (it == slot_.end())
            throw UnknownAgent("unknown agent id " + std::to_string(id.value));
        return it->second;
    }

    AgentId id_at(std::size_t slot) const { return ids_[slot]; }

    const LayerTopology& layer(std::size_t j) const {
        check_layer(j);
        return layers_[j];
    }

    std::vector<AgentId> neighborhood(AgentId id, std::size_t j) const {
        check_layer(j);
        const std::size_t u = slot_of(id);
        std::vector<AgentId> out;
        out.reserve(layers_[j].degree(u));
        for (const auto& e : layers_[j].neighbors(u))
            out.push_back(ids_[e.to]);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t degree(AgentId id, std::size_t j) const {
        check_layer(j);
        return layers_[j].degree(slot_of(id));
    }

    std::size_t max_degree(std::size_t j) const {
        check_layer(j);
        return layers_[j].max_degree();
    }

    double clustering_coefficient(AgentId id, std::size_t j) const {
        check_layer(j);
        return layers_[j].clustering(slot_of(id));
    }

    bool has_edge(std::size_t j, AgentId a, AgentId b) const {
        check_layer(j);
        return layers_[j].has_edge(slot_of(a), slot_of(b));
    }

    double edge_strength(std::size_t j, AgentId a, AgentId b) const {
        check_layer(j);
        return layers_[j].strength(slot_of(a), slot_of(b));
    }

    void add_edge(std::size_t j, AgentId a, AgentId b, double f = kDefaultEdgeStrength) {
        check_layer(j);
        layers_[j].add_edge(slot_of(a), slot_of(b), f);
    }

    void set_edge_strength(std::size_t j, AgentId a, AgentId b, double f) {
        check_layer(j);
        layers_[j].set_strength(slot_of(a), slot_of(b), f);
    }

    RemovalSummary remove_agent(AgentId id) {
        const std::size_t u = slot_of(id);
        RemovalSummary summary{id, {}};
        summary.edges_deleted.reserve(layers_.size());
        for (auto& layer : layers_)
            summary.edges_deleted.push_back(layer.remove_incident(u));
        for (auto& layer : layers_)
            layer.erase_node(u);
        ids_.erase(ids_.begin() + static_cast<std::ptrdiff_t>(u));
        rebuild_slots();
        return summary;
    }

    // Registers a fresh agent and wires it, per layer, to attach_count
    // distinct uniformly random pre-existing agents.
    AgentId add_agent(std::size_t attach_count, Rng& rng) {
        const std::size_t existing = ids_.size();
        if (attach_count > existing)
            throw InvalidParameter("add_agent: attach count exceeds population");
        const AgentId id{next_id_++};
        const std::size_t slot = existing;
        ids_.push_back(id);
        slot_.emplace(id.value, slot);
        for (auto& layer : layers_) {
            layer.insert_node();
            for (std::size_t target : rng.sample_indices(existing, attach_count))
                layer.add_edge(slot, target);
        }
        return id;
    }

private:
    void init_registry(std::size_t n) {
        ids_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            ids_.push_back(AgentId{next_id_});
            slot_.emplace(next_id_, i);
            ++next_id_;
        }
    }

    void rebuild_slots() {
        slot_.clear();
        for (std::size_t i = 0; i < ids_.size(); ++i)
            slot_.emplace(ids_[i].value, i);
    }

    void check_layer(std::size_t j) const {
        if (j >= layers_.size())
            throw UnknownLayer("unknown layer index " + std::to_string(j));
    }

    std::vector<AgentId> ids_; // ascending, parallel to layer slots
    std::unordered_map<std::uint32_t, std::size_t> slot_;
    std::vector<LayerTopology> layers_;
    std::uint32_t next_id_ = 0;
};

} // namespace kdsim

template <>
struct std::hash<kdsim::AgentId> {
    std::size_t operator()(const kdsim::AgentId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
