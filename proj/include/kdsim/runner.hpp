#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kdsim/config.hpp"
#include "kdsim/engine.hpp"
#include "kdsim/metrics.hpp"

namespace kdsim {

// A stage resolved against the base configuration; one simulation per seed.
struct StagePlan {
    std::string name; // empty for a plain single-stage run
    RunConfig config;
};

inline std::vector<StagePlan> expand_stages(const RunConfig& cfg) {
    std::vector<StagePlan> plans;
    if (cfg.stages.empty()) {
        RunConfig flat = cfg;
        flat.stages.clear();
        plans.push_back({"", std::move(flat)});
        return plans;
    }
    for (const StageConfig& stage : cfg.stages) {
        RunConfig resolved = cfg;
        resolved.stages.clear();
        if (stage.vertical_matrix)
            resolved.engine.vertical_matrix = *stage.vertical_matrix;
        if (stage.events)
            resolved.engine.events = *stage.events;
        plans.push_back({stage.name, std::move(resolved)});
    }
    return plans;
}

inline std::vector<std::uint64_t> replication_seeds(const RunConfig& cfg) {
    if (!cfg.replication.seeds.empty())
        return cfg.replication.seeds;
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < cfg.replication.count; ++i)
        seeds.push_back(cfg.engine.seed + i);
    return seeds;
}

inline ScheduledEvent resolve_event(const EventConfig& ev, const KnowledgeDomain& domain) {
    ScheduledEvent out;
    out.trigger = ev.trigger;
    if (ev.kind == "add_experts") {
        out.kind = ScheduledEvent::Kind::AddExperts;
        out.count = ev.count;
        out.expert_knowledge = ev.expert_knowledge;
        if (ev.target_layer != "all")
            out.target_layer = domain.index_of(ev.target_layer);
    } else if (ev.kind == "remove_random_agents") {
        out.kind = ScheduledEvent::Kind::RemoveRandomAgents;
        out.count = ev.count;
    } else if (ev.kind == "set_vertical_matrix") {
        out.kind = ScheduledEvent::Kind::SetVerticalMatrix;
        out.matrix = VerticalDiffusionMatrix::from_rows(ev.matrix);
    } else if (ev.kind == "set_competence_matrix") {
        out.kind = ScheduledEvent::Kind::SetCompetenceMatrix;
        std::vector<std::string> names;
        std::vector<std::vector<double>> columns;
        for (const auto& [name, weights] : ev.competences) {
            names.push_back(name);
            columns.push_back(weights);
        }
        out.competence = CompetenceMatrix(domain.size(), std::move(names), columns);
    } else {
        throw ConfigError("unknown event kind '" + ev.kind + "'");
    }
    return out;
}

// Builds an engine from a resolved configuration. One seeded stream drives
// topology generation, profile initialization and the whole run, in that
// order, so a (config, seed) pair pins the full trajectory.
inline Engine build_engine(const RunConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t layers = cfg.domain.layers.size();
    KnowledgeDomain domain = KnowledgeDomain::build(cfg.domain.layers, cfg.domain.covers);

    MultilayerNetwork net = [&] {
        if (cfg.network.shared_topology) {
            LayerTopology shared = generate_watts_strogatz(cfg.network.nodes, cfg.network.ring_degree,
                                                           cfg.network.rewiring_p, rng);
            return MultilayerNetwork::with_shared_topology(layers, shared);
        }
        std::vector<LayerTopology> per_layer;
        per_layer.reserve(layers);
        for (std::size_t j = 0; j < layers; ++j)
            per_layer.push_back(generate_watts_strogatz(cfg.network.nodes, cfg.network.ring_degree,
                                                        cfg.network.rewiring_p, rng));
        return MultilayerNetwork::with_layers(std::move(per_layer));
    }();
    for (const ExplicitEdge& e : cfg.network.explicit_edges)
        net.set_edge_strength(e.layer, AgentId{e.a}, AgentId{e.b}, e.strength);

    const std::size_t n = cfg.network.nodes;
    const auto expert_count =
        static_cast<std::size_t>(std::llround(cfg.engine.expert_fraction * static_cast<double>(n)));
    std::vector<bool> expert(n, false);
    for (std::size_t s : rng.sample_indices(n, std::min(expert_count, n)))
        expert[s] = true;

    std::vector<AgentProfile> profiles;
    profiles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        AgentProfile p;
        p.knowledge.resize(layers);
        for (std::size_t j = 0; j < layers; ++j)
            p.knowledge[j] = expert[i] ? cfg.engine.expert_knowledge
                                       : rng.uniform(cfg.engine.init_min, cfg.engine.init_max);
        p.cognitive = rng.next_unit();
        p.social = rng.next_unit();
        profiles.push_back(std::move(p));
    }

    VerticalDiffusionMatrix vertical = cfg.engine.vertical_matrix.empty()
                                           ? VerticalDiffusionMatrix(layers)
                                           : VerticalDiffusionMatrix::from_rows(cfg.engine.vertical_matrix);

    std::vector<std::string> comp_names;
    std::vector<std::vector<double>> comp_columns;
    for (const CompetenceEntry& e : cfg.competence.competences) {
        comp_names.push_back(e.name);
        comp_columns.push_back(e.weights);
    }
    CompetenceMatrix competences(layers, std::move(comp_names), comp_columns);

    EngineParams params{cfg.engine.coeff_a, cfg.engine.coeff_b, cfg.engine.coeff_c,
                        cfg.engine.coeff_d, cfg.engine.omega};
    KnowledgeInitRange init{cfg.engine.init_min, cfg.engine.init_max};

    return Engine(std::move(net), std::move(profiles), std::move(domain), std::move(vertical),
                  std::move(competences), params, std::move(rng), init, cfg.network.ring_degree);
}

// Runs one stage with one seed and returns the full log.
inline TimeSeriesLog run_simulation(const RunConfig& cfg, std::uint64_t seed) {
    Engine engine = build_engine(cfg, seed);
    std::vector<std::pair<std::int64_t, ScheduledEvent>> events;
    for (const EventConfig& ev : cfg.engine.events)
        events.emplace_back(ev.trigger, resolve_event(ev, engine.domain()));

    std::vector<std::string> comp_names;
    for (const CompetenceEntry& e : cfg.competence.competences)
        comp_names.push_back(e.name);
    // wall-clock start is in-memory metadata only; artifacts stay
    // byte-reproducible
    const auto started = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32] = {0};
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&started));
    TimeSeriesLog log(cfg.domain.layers, comp_names, RunMetadata{config_digest(cfg), seed, stamp});

    for (std::int64_t t = 0; t < cfg.engine.steps; ++t) {
        for (const auto& [trigger, ev] : events)
            if (trigger == t)
                engine.apply_event(ev);
        StepReport report = engine.step();
        std::vector<double> means(comp_names.size(), 0.0);
        if (engine.agent_count() > 0 && !comp_names.empty())
            means = engine.competence_report(cfg.competence.k_ref).organizational_mean;
        log.append(std::move(report), std::move(means));
    }
    return log;
}

// Writes the full artifact set for one finished run into dir.
inline void write_outputs(const TimeSeriesLog& log, const RunConfig& effective,
                          const std::filesystem::path& dir, bool charts) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    export_csv(log, dir);
    {
        auto out = detail::open_out(dir / "summary.txt");
        out << summarize(log);
    }
    {
        auto out = detail::open_out(dir / "config.echo");
        out << config_to_json(effective).dump(2) << '\n';
    }
    if (charts) {
        fs::create_directories(dir / "charts");
        for (const char* metric : {"knowledge", "competence", "vertical_inflow", "vertical_outflow"})
            render_svg(log, metric, dir / "charts" / (std::string(metric) + ".svg"));
    }
}

// Cross-seed mean of the per-layer mean-knowledge series.
inline void write_seed_aggregate(const std::vector<TimeSeriesLog>& logs,
                                 const std::filesystem::path& file) {
    if (logs.empty())
        throw InvalidParameter("write_seed_aggregate: no logs");
    const auto& labels = logs.front().layer_labels();
    const std::size_t steps = logs.front().step_count();
    auto out = detail::open_out(file);
    out << "step,layer,mean_knowledge\n";
    for (std::size_t t = 0; t < steps; ++t)
        for (std::size_t j = 0; j < labels.size(); ++j) {
            double sum = 0.0;
            for (const TimeSeriesLog& log : logs)
                sum += log.steps()[t].layer_mean[j];
            out << logs.front().steps()[t].step << ',' << labels[j] << ','
                << format_value(sum / static_cast<double>(logs.size())) << '\n';
        }
}

// Executes every stage and every replication seed of a validated config,
// writing the output layout under cfg.output.directory. Returns the leaf
// run directories in execution order.
inline std::vector<std::filesystem::path> run_all(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<fs::path> run_dirs;
    const std::vector<StagePlan> plans = expand_stages(cfg);
    const std::vector<std::uint64_t> seeds = replication_seeds(cfg);
    for (const StagePlan& plan : plans) {
        const fs::path stage_dir = plan.name.empty() ? fs::path(cfg.output.directory)
                                                     : fs::path(cfg.output.directory) / plan.name;
        std::vector<TimeSeriesLog> logs;
        for (std::uint64_t seed : seeds) {
            RunConfig effective = plan.config;
            effective.engine.seed = seed;
            const fs::path dir =
                seeds.size() == 1 ? stage_dir : stage_dir / ("seed-" + std::to_string(seed));
            TimeSeriesLog log = run_simulation(effective, seed);
            write_outputs(log, effective, dir, cfg.output.charts);
            run_dirs.push_back(dir);
            if (seeds.size() > 1)
                logs.push_back(std::move(log));
        }
        if (seeds.size() > 1)
            write_seed_aggregate(logs, stage_dir / "aggregate_knowledge.csv");
    }
    return run_dirs;
}

} // namespace kdsim
