#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kdsim/competence.hpp"
#include "kdsim/errors.hpp"
#include "kdsim/knowledge_domain.hpp"
#include "kdsim/network.hpp"
#include "kdsim/rng.hpp"

namespace kdsim {

// Per-worker state: one knowledge value per layer plus the two abilities.
struct AgentProfile {
    std::vector<double> knowledge;
    double cognitive = 0.0; // o_i, learning speed in [0,1]
    double social = 0.0;    // l_i, teaching effectiveness in [0,1]
};

// Coupling coefficients between layers; zero diagonal, entries >= 0.
class VerticalDiffusionMatrix {
public:
    explicit VerticalDiffusionMatrix(std::size_t layers)
        : n_(layers), r_(layers * layers, 0.0), row_sum_(layers, 0.0) {
        if (layers == 0)
            throw InvalidParameter("VerticalDiffusionMatrix: need at least one layer");
    }

    static VerticalDiffusionMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        VerticalDiffusionMatrix m(rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[j].size() != rows.size())
                throw DimensionMismatch("VerticalDiffusionMatrix: matrix must be square");
            for (std::size_t g = 0; g < rows.size(); ++g) {
                const double v = rows[j][g];
                if (v < 0.0)
                    throw InvalidParameter("VerticalDiffusionMatrix: entries must be >= 0");
                if (j == g && v != 0.0)
                    throw InvalidParameter("VerticalDiffusionMatrix: diagonal must be zero");
                m.r_[j * rows.size() + g] = v;
                m.row_sum_[j] += v;
            }
        }
        return m;
    }

    std::size_t layer_count() const { return n_; }
    double at(std::size_t from, std::size_t to) const { return r_[from * n_ + to]; }
    double row_sum(std::size_t from) const { return row_sum_[from]; }

    friend bool operator==(const VerticalDiffusionMatrix&, const VerticalDiffusionMatrix&) = default;

private:
    std::size_t n_;
    std::vector<double> r_;
    std::vector<double> row_sum_;
};

// Divisors of Eqs. of the diffusion kernels plus the knowledge floor.
struct EngineParams {
    double coeff_a = 2.0;
    double coeff_b = 0.1;
    double coeff_c = 2.0;
    double coeff_d = 2.0;
    double omega = 0.01;

    void validate() const {
        if (coeff_a <= 0.0 || coeff_b <= 0.0 || coeff_c <= 0.0 || coeff_d <= 0.0)
            throw InvalidParameter("EngineParams: coefficients A, B, C, D must be positive");
        if (omega <= 0.0)
            throw InvalidParameter("EngineParams: omega must be positive");
    }
};

struct KnowledgeInitRange {
    double min = 0.0;
    double max = 5.0;
};

struct ScheduledEvent {
    enum class Kind { AddExperts, RemoveRandomAgents, SetVerticalMatrix, SetCompetenceMatrix };

    std::int64_t trigger = 0;
    Kind kind = Kind::AddExperts;
    std::size_t count = 0;
    double expert_knowledge = 0.0;
    std::optional<std::size_t> target_layer;              // nullopt = all layers
    std::optional<VerticalDiffusionMatrix> matrix;        // SetVerticalMatrix
    std::optional<CompetenceMatrix> competence;           // SetCompetenceMatrix
};

// One completed step: per-layer means, the vertical-flow ledger and process
// counters. Pair matrices are row-major [source * layers + target].
struct StepReport {
    std::int64_t step = 0;
    std::size_t layer_count = 0;
    std::size_t agent_count = 0;
    std::vector<double> layer_mean;

    // source-side sums of propagated deltas, by source layer
    std::vector<double> source_gain;
    std::vector<double> source_loss;

    // receiver-side ledger, by (source, target) pair
    std::vector<double> inflow_gain;
    std::vector<double> inflow_loss;
    std::vector<double> floor_correction;

    std::int64_t horizontal_events = 0;
    std::int64_t forgetting_events = 0;
    std::int64_t self_learning_events = 0;
    std::int64_t domain_violations = 0;

    double pair(const std::vector<double>& m, std::size_t from, std::size_t to) const {
        return m[from * layer_count + to];
    }
    double inflow_gain_at(std::size_t from, std::size_t to) const { return pair(inflow_gain, from, to); }
    double inflow_loss_at(std::size_t from, std::size_t to) const { return pair(inflow_loss, from, to); }
    double floor_correction_at(std::size_t from, std::size_t to) const { return pair(floor_correction, from, to); }

    double layer_inflow_gain(std::size_t to) const {
        double s = 0.0;
        for (std::size_t f = 0; f < layer_count; ++f)
            if (f != to)
                s += inflow_gain_at(f, to);
        return s;
    }
    double layer_outflow_gain(std::size_t from) const {
        double s = 0.0;
        for (std::size_t t = 0; t < layer_count; ++t)
            if (t != from)
                s += inflow_gain_at(from, t);
        return s;
    }
};

// The diffusion engine. Owns the network, the per-agent profiles and the live
// matrices; strictly single-threaded, all randomness through one seeded
// stream so identical inputs give identical trajectories.
class Engine {
public:
    Engine(MultilayerNetwork net, std::vector<AgentProfile> profiles, KnowledgeDomain domain,
           VerticalDiffusionMatrix vertical, CompetenceMatrix competences, EngineParams params,
           Rng rng, KnowledgeInitRange init_range = {}, std::size_t attach_count = 0)
        : net_(std::move(net)), profiles_(std::move(profiles)), domain_(std::move(domain)),
          shared_matrix_(std::move(vertical)), competences_(std::move(competences)),
          params_(params), rng_(std::move(rng)), init_range_(init_range),
          attach_count_(attach_count) {
        params_.validate();
        const std::size_t layers = net_.layer_count();
        if (domain_.size() != layers)
            throw DimensionMismatch("Engine: domain element count must equal layer count");
        if (shared_matrix_.layer_count() != layers)
            throw DimensionMismatch("Engine: vertical matrix side must equal layer count");
        if (competences_.layer_count() != layers)
            throw DimensionMismatch("Engine: competence matrix rows must equal layer count");
        if (profiles_.size() != net_.agent_count())
            throw DimensionMismatch("Engine: one profile per agent required");
        if (init_range_.min < 0.0 || init_range_.max < init_range_.min)
            throw InvalidParameter("Engine: bad initial knowledge range");
        for (const AgentProfile& p : profiles_)
            check_profile(p, layers);
        // lower-shadow consistency is a hard requirement at initialization;
        // afterwards it is only diagnosed (the update rules contain no clamp)
        for (std::size_t s = 0; s < profiles_.size(); ++s)
            if (!domain_.validate_state(profiles_[s].knowledge).empty())
                throw InvalidParameter("Engine: agent " + std::to_string(net_.agents()[s].value) +
                                       " violates the knowledge prerequisite structure");
        flow_.reset(layers);
    }

    std::size_t layer_count() const { return net_.layer_count(); }
    std::size_t agent_count() const { return net_.agent_count(); }
    std::int64_t current_step() const { return t_; }
    const MultilayerNetwork& network() const { return net_; }
    const KnowledgeDomain& domain() const { return domain_; }
    const std::vector<AgentProfile>& profiles() const { return profiles_; }
    const AgentProfile& profile(AgentId id) const { return profiles_[net_.slot_of(id)]; }
    const VerticalDiffusionMatrix& vertical_matrix() const { return shared_matrix_; }
    const CompetenceMatrix& competence_matrix() const { return competences_; }
    const EngineParams& params() const { return params_; }

    double knowledge(AgentId id, std::size_t layer) const {
        check_layer(layer);
        return profiles_[net_.slot_of(id)].knowledge[layer];
    }

    // Installs a per-agent vertical matrix overriding the shared one.
    void set_agent_matrix(AgentId id, VerticalDiffusionMatrix m) {
        if (m.layer_count() != layer_count())
            throw DimensionMismatch("set_agent_matrix: wrong matrix side");
        overrides_.insert_or_assign(net_.slot_of(id), std::move(m));
    }

    // Best neighbour by k*l, provided it beats the learner's own k*o.
    std::optional<AgentId> select_teacher(AgentId id, std::size_t layer) const {
        check_layer(layer);
        auto slot = select_teacher_slot(net_.slot_of(id), layer);
        if (!slot)
            return std::nullopt;
        return net_.id_at(*slot);
    }

    // Applies the horizontal increment from an already-selected teacher and
    // returns it. The caller (the step loop) propagates it vertically.
    double horizontal_increment(AgentId id, std::size_t layer, AgentId teacher) {
        check_layer(layer);
        return apply_horizontal(net_.slot_of(id), layer, net_.slot_of(teacher));
    }

    // Propagates a signed on-layer change to every other layer through the
    // coupling matrix. Returns the applied per-layer increments.
    std::vector<double> vertical_diffuse(AgentId id, std::size_t source_layer, double delta) {
        check_layer(source_layer);
        return apply_vertical(net_.slot_of(id), source_layer, delta);
    }

    // Neighbourhood mean of k*l; 0 for an isolated agent.
    double avg_transfer_potential(AgentId id, std::size_t layer) const {
        check_layer(layer);
        return transfer_potential(net_.slot_of(id), layer);
    }

    // Requires the forgetting gate k*o >= k~. Applies the floored decrement,
    // propagates it vertically with negative sign, returns the applied amount.
    double forgetting_step(AgentId id, std::size_t layer) {
        check_layer(layer);
        const std::size_t slot = net_.slot_of(id);
        const double kt = transfer_potential(slot, layer);
        const AgentProfile& p = profiles_[slot];
        if (p.knowledge[layer] * p.cognitive < kt)
            throw InvalidParameter("forgetting_step: gate k*o >= k~ does not hold");
        const double applied = apply_forgetting(slot, layer, kt);
        if (applied != 0.0)
            apply_vertical(slot, layer, -applied);
        return applied;
    }

    // Requires the self-learning gate k*o < k~. Applies the increment,
    // propagates it vertically, returns it.
    double self_learning_step(AgentId id, std::size_t layer) {
        check_layer(layer);
        const std::size_t slot = net_.slot_of(id);
        const double kt = transfer_potential(slot, layer);
        const AgentProfile& p = profiles_[slot];
        if (!(p.knowledge[layer] * p.cognitive < kt))
            throw InvalidParameter("self_learning_step: gate k*o < k~ does not hold");
        const double applied = apply_self_learning(slot, layer, kt);
        if (applied != 0.0)
            apply_vertical(slot, layer, applied);
        return applied;
    }

    // Total outgoing coupling per layer (row sums over all agents).
    std::vector<double> layer_rank_scores() const {
        const std::size_t layers = layer_count();
        std::vector<double> khat(layers, 0.0);
        if (overrides_.empty()) {
            for (std::size_t w = 0; w < layers; ++w)
                khat[w] = static_cast<double>(agent_count()) * shared_matrix_.row_sum(w);
        } else {
            for (std::size_t s = 0; s < profiles_.size(); ++s) {
                const VerticalDiffusionMatrix& m = matrix_for(s);
                for (std::size_t w = 0; w < layers; ++w)
                    khat[w] += m.row_sum(w);
            }
        }
        return khat;
    }

    // Layers by descending coupling total; equal totals are ordered randomly
    // from the run stream.
    std::vector<std::size_t> layer_ranking() {
        const std::vector<double> khat = layer_rank_scores();
        std::vector<std::size_t> order(khat.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return khat[a] > khat[b]; });
        std::size_t lo = 0;
        while (lo < order.size()) {
            std::size_t hi = lo + 1;
            while (hi < order.size() && khat[order[hi]] == khat[order[lo]])
                ++hi;
            if (hi - lo > 1)
                rng_.shuffle(order.begin() + static_cast<std::ptrdiff_t>(lo),
                             order.begin() + static_cast<std::ptrdiff_t>(hi));
            lo = hi;
        }
        return order;
    }

    // Agents by ascending knowledge on the layer, ids break ties.
    std::vector<AgentId> node_ranking(std::size_t layer) const {
        check_layer(layer);
        std::vector<AgentId> out(net_.agents());
        const std::vector<std::size_t> slots = ranked_slots(layer);
        for (std::size_t i = 0; i < slots.size(); ++i)
            out[i] = net_.id_at(slots[i]);
        return out;
    }

    // One pass of the ranked procedure: per layer, per node — horizontal
    // diffusion, vertical of its increment, then exactly one of forgetting or
    // self-learning (plus its vertical), all in place and in ranking order.
    StepReport step() {
        flow_.reset(layer_count());
        const std::vector<std::size_t> layers = layer_ranking();
        for (std::size_t l : layers) {
            const std::vector<std::size_t> order = ranked_slots(l);
            for (std::size_t slot : order) {
                if (auto teacher = select_teacher_slot(slot, l)) {
                    ++flow_.horizontal_events;
                    const double delta = apply_horizontal(slot, l, *teacher);
                    if (delta != 0.0)
                        apply_vertical(slot, l, delta);
                }
                const double kt = transfer_potential(slot, l);
                const AgentProfile& p = profiles_[slot];
                if (p.knowledge[l] * p.cognitive >= kt) {
                    ++flow_.forgetting_events;
                    const double applied = apply_forgetting(slot, l, kt);
                    if (applied != 0.0)
                        apply_vertical(slot, l, -applied);
                } else {
                    ++flow_.self_learning_events;
                    const double applied = apply_self_learning(slot, l, kt);
                    if (applied != 0.0)
                        apply_vertical(slot, l, applied);
                }
            }
        }
        StepReport report = make_report();
        ++t_;
        return report;
    }

    struct EventSummary {
        std::vector<AgentId> added;
        std::vector<AgentId> removed;
        bool matrix_swapped = false;
    };

    EventSummary apply_event(const ScheduledEvent& ev) {
        if (ev.trigger != t_)
            throw InvalidParameter("apply_event: trigger " + std::to_string(ev.trigger) +
                                   " does not match current step " + std::to_string(t_));
        EventSummary summary;
        switch (ev.kind) {
        case ScheduledEvent::Kind::AddExperts: {
            if (ev.target_layer && *ev.target_layer >= layer_count())
                throw UnknownLayer("apply_event: expert target layer out of range");
            for (std::size_t c = 0; c < ev.count; ++c) {
                AgentProfile p;
                p.knowledge.resize(layer_count());
                for (std::size_t j = 0; j < layer_count(); ++j)
                    p.knowledge[j] = (!ev.target_layer || *ev.target_layer == j)
                                         ? ev.expert_knowledge
                                         : rng_.uniform(init_range_.min, init_range_.max);
                p.cognitive = rng_.next_unit();
                p.social = rng_.next_unit();
                const AgentId id = net_.add_agent(std::min(attach_count_, net_.agent_count()), rng_);
                profiles_.push_back(std::move(p));
                summary.added.push_back(id);
            }
            break;
        }
        case ScheduledEvent::Kind::RemoveRandomAgents: {
            if (ev.count > agent_count())
                throw InvalidParameter("apply_event: cannot remove " + std::to_string(ev.count) +
                                       " of " + std::to_string(agent_count()) + " agents");
            std::vector<AgentId> victims;
            for (std::size_t s : rng_.sample_indices(agent_count(), ev.count))
                victims.push_back(net_.id_at(s));
            for (AgentId id : victims) {
                const std::size_t slot = net_.slot_of(id);
                net_.remove_agent(id);
                profiles_.erase(profiles_.begin() + static_cast<std::ptrdiff_t>(slot));
                remap_overrides(slot);
                summary.removed.push_back(id);
            }
            break;
        }
        case ScheduledEvent::Kind::SetVerticalMatrix: {
            if (!ev.matrix)
                throw InvalidParameter("apply_event: set_vertical_matrix without a matrix");
            if (ev.matrix->layer_count() != layer_count())
                throw DimensionMismatch("apply_event: vertical matrix side must equal layer count");
            shared_matrix_ = *ev.matrix;
            summary.matrix_swapped = true;
            break;
        }
        case ScheduledEvent::Kind::SetCompetenceMatrix: {
            if (!ev.competence)
                throw InvalidParameter("apply_event: set_competence_matrix without a matrix");
            if (ev.competence->layer_count() != layer_count())
                throw DimensionMismatch("apply_event: competence matrix rows must equal layer count");
            competences_ = *ev.competence;
            summary.matrix_swapped = true;
            break;
        }
        }
        return summary;
    }

    CompetenceReport competence_report(double k_ref) const {
        CompetenceReport rep;
        rep.agents = net_.agents();
        rep.values.reserve(profiles_.size());
        for (const AgentProfile& p : profiles_)
            rep.values.push_back(competence_value(competences_, p.knowledge, k_ref));
        rep.levels.reserve(rep.values.size());
        for (const auto& vals : rep.values) {
            std::vector<Expertise> row;
            row.reserve(vals.size());
            for (double v : vals)
                row.push_back(expertise_level(v));
            rep.levels.push_back(std::move(row));
        }
        rep.organizational_mean = organizational_competence(rep.values);
        return rep;
    }

private:
    struct FlowScratch {
        std::vector<double> src_gain, src_loss;           // per source layer
        std::vector<double> floor_corr;                   // per (source, target)
        std::vector<double> ovr_gain, ovr_loss_raw;       // per-agent-override part
        std::int64_t horizontal_events = 0;
        std::int64_t forgetting_events = 0;
        std::int64_t self_learning_events = 0;

        void reset(std::size_t layers) {
            src_gain.assign(layers, 0.0);
            src_loss.assign(layers, 0.0);
            floor_corr.assign(layers * layers, 0.0);
            ovr_gain.assign(layers * layers, 0.0);
            ovr_loss_raw.assign(layers * layers, 0.0);
            horizontal_events = forgetting_events = self_learning_events = 0;
        }
    };

    static void check_profile(const AgentProfile& p, std::size_t layers) {
        if (p.knowledge.size() != layers)
            throw DimensionMismatch("AgentProfile: knowledge vector length must equal layer count");
        for (double k : p.knowledge)
            if (k < 0.0)
                throw InvalidParameter("AgentProfile: knowledge entries must be >= 0");
        if (!(p.cognitive >= 0.0 && p.cognitive <= 1.0))
            throw InvalidParameter("AgentProfile: cognitive ability must be in [0,1]");
        if (!(p.social >= 0.0 && p.social <= 1.0))
            throw InvalidParameter("AgentProfile: social ability must be in [0,1]");
    }

    void check_layer(std::size_t j) const {
        if (j >= layer_count())
            throw UnknownLayer("unknown layer index " + std::to_string(j));
    }

    const VerticalDiffusionMatrix& matrix_for(std::size_t slot) const {
        if (!overrides_.empty()) {
            auto it = overrides_.find(slot);
            if (it != overrides_.end())
                return it->second;
        }
        return shared_matrix_;
    }

    void remap_overrides(std::size_t removed_slot) {
        if (overrides_.empty())
            return;
        std::unordered_map<std::size_t, VerticalDiffusionMatrix> next;
        for (auto& [slot, m] : overrides_) {
            if (slot == removed_slot)
                continue;
            next.emplace(slot > removed_slot ? slot - 1 : slot, std::move(m));
        }
        overrides_ = std::move(next);
    }

    std::optional<std::size_t> select_teacher_slot(std::size_t slot, std::size_t layer) const {
        const auto& neighbors = net_.layer(layer).neighbors(slot);
        if (neighbors.empty())
            return std::nullopt;
        bool found = false;
        std::size_t best = 0;
        double best_score = 0.0;
        for (const auto& e : neighbors) {
            const AgentProfile& q = profiles_[e.to];
            const double score = q.knowledge[layer] * q.social;
            // equal scores resolve to the lowest id so the argmax is stable
            if (!found || score > best_score ||
                (score == best_score && net_.id_at(e.to) < net_.id_at(best))) {
                found = true;
                best = e.to;
                best_score = score;
            }
        }
        const AgentProfile& me = profiles_[slot];
        if (best_score > me.knowledge[layer] * me.cognitive)
            return best;
        return std::nullopt;
    }

    double apply_horizontal(std::size_t slot, std::size_t layer, std::size_t teacher) {
        const AgentProfile& tp = profiles_[teacher];
        AgentProfile& me = profiles_[slot];
        const double dz = static_cast<double>(net_.layer(layer).degree(teacher));
        if (dz == 0.0)
            throw Error("horizontal_increment: teacher has zero degree");
        const double dmax = static_cast<double>(net_.layer(layer).max_degree());
        const double f = net_.layer(layer).strength(slot, teacher);
        const double raw = (tp.knowledge[layer] - me.knowledge[layer]) * tp.social * me.cognitive /
                           (dz * params_.coeff_a) * dmax * f;
        // the gate compares k*l against k*o, so the knowledge gap itself can
        // still be negative; transfers only ever add
        const double delta = std::max(raw, 0.0);
        me.knowledge[layer] += delta;
        return delta;
    }

    double transfer_potential(std::size_t slot, std::size_t layer) const {
        const auto& neighbors = net_.layer(layer).neighbors(slot);
        if (neighbors.empty())
            return 0.0;
        double sum = 0.0;
        for (const auto& e : neighbors) {
            const AgentProfile& q = profiles_[e.to];
            sum += q.knowledge[layer] * q.social;
        }
        return sum / static_cast<double>(neighbors.size());
    }

    double apply_forgetting(std::size_t slot, std::size_t layer, double kt) {
        AgentProfile& me = profiles_[slot];
        const double before = me.knowledge[layer];
        const double xi = std::max(0.0, (before - kt) * (1.0 - me.cognitive) / params_.coeff_b);
        const double after = before > 0.0 ? std::max(before - xi, params_.omega) : 0.0;
        me.knowledge[layer] = after;
        return std::max(0.0, before - after);
    }

    double apply_self_learning(std::size_t slot, std::size_t layer, double kt) {
        AgentProfile& me = profiles_[slot];
        const double k = me.knowledge[layer];
        const double cc = net_.layer(layer).clustering(slot);
        const double raw = cc > 0.0 ? (kt - k) * me.cognitive * cc / params_.coeff_c
                                    : (kt - k) * me.cognitive / params_.coeff_d;
        const double psi = std::max(0.0, raw);
        me.knowledge[layer] = k + psi;
        return psi;
    }

    std::vector<double> apply_vertical(std::size_t slot, std::size_t source, double delta) {
        const std::size_t layers = layer_count();
        std::vector<double> applied(layers, 0.0);
        if (delta == 0.0)
            return applied;
        const bool overridden = !overrides_.empty() && overrides_.count(slot) != 0;
        if (!overridden) {
            if (delta > 0.0)
                flow_.src_gain[source] += delta;
            else
                flow_.src_loss[source] += -delta;
        }
        const VerticalDiffusionMatrix& m = matrix_for(slot);
        AgentProfile& me = profiles_[slot];
        for (std::size_t n = 0; n < layers; ++n) {
            if (n == source)
                continue;
            const double inc = m.at(source, n) * delta;
            if (inc == 0.0)
                continue;
            const std::size_t pair = source * layers + n;
            if (inc > 0.0) {
                me.knowledge[n] += inc;
                applied[n] = inc;
                if (overridden)
                    flow_.ovr_gain[pair] += inc;
            } else {
                // positive entries never fall below omega, zeros stay zero
                const double before = me.knowledge[n];
                const double raw_loss = -inc;
                double after;
                if (before == 0.0) {
                    after = 0.0;
                    flow_.floor_corr[pair] += raw_loss;
                } else if (before + inc < params_.omega) {
                    after = params_.omega;
                    flow_.floor_corr[pair] += raw_loss - (before - after);
                } else {
                    after = before + inc; // no flooring, no correction
                }
                me.knowledge[n] = after;
                applied[n] = after - before;
                if (overridden)
                    flow_.ovr_loss_raw[pair] += raw_loss;
            }
        }
        return applied;
    }

    std::vector<std::size_t> ranked_slots(std::size_t layer) const {
        std::vector<std::size_t> order(profiles_.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double ka = profiles_[a].knowledge[layer];
            const double kb = profiles_[b].knowledge[layer];
            if (ka != kb)
                return ka < kb;
            return net_.id_at(a) < net_.id_at(b);
        });
        return order;
    }

    StepReport make_report() const {
        const std::size_t layers = layer_count();
        StepReport rep;
        rep.step = t_;
        rep.layer_count = layers;
        rep.agent_count = agent_count();
        rep.layer_mean.assign(layers, 0.0);
        if (!profiles_.empty()) {
            for (const AgentProfile& p : profiles_)
                for (std::size_t j = 0; j < layers; ++j)
                    rep.layer_mean[j] += p.knowledge[j];
            for (double& v : rep.layer_mean)
                v /= static_cast<double>(profiles_.size());
        }
        rep.source_gain = flow_.src_gain;
        rep.source_loss = flow_.src_loss;
        rep.inflow_gain.assign(layers * layers, 0.0);
        rep.inflow_loss.assign(layers * layers, 0.0);
        rep.floor_correction = flow_.floor_corr;
        for (std::size_t f = 0; f < layers; ++f)
            for (std::size_t t = 0; t < layers; ++t) {
                if (f == t)
                    continue;
                const std::size_t pair = f * layers + t;
                // derived booking keeps the closure identity exact: the gain
                // received at t from f is r(f,t) times the summed source
                // deltas, with flooring carried in its own column
                rep.inflow_gain[pair] = shared_matrix_.at(f, t) * flow_.src_gain[f] + flow_.ovr_gain[pair];
                const double raw_loss =
                    shared_matrix_.at(f, t) * flow_.src_loss[f] + flow_.ovr_loss_raw[pair];
                rep.inflow_loss[pair] = raw_loss - flow_.floor_corr[pair];
            }
        rep.horizontal_events = flow_.horizontal_events;
        rep.forgetting_events = flow_.forgetting_events;
        rep.self_learning_events = flow_.self_learning_events;
        rep.domain_violations = 0;
        for (const AgentProfile& p : profiles_)
            rep.domain_violations +=
                static_cast<std::int64_t>(domain_.validate_state(p.knowledge).size());
        return rep;
    }

    MultilayerNetwork net_;
    std::vector<AgentProfile> profiles_; // parallel to net_ slots
    KnowledgeDomain domain_;
    VerticalDiffusionMatrix shared_matrix_;
    std::unordered_map<std::size_t, VerticalDiffusionMatrix> overrides_; // by slot
    CompetenceMatrix competences_;
    EngineParams params_;
    Rng rng_;
    KnowledgeInitRange init_range_;
    std::size_t attach_count_;
    std::int64_t t_ = 0;
    FlowScratch flow_;
};

} // namespace kdsim
