#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kdsim/errors.hpp"
#include "kdsim/knowledge_domain.hpp"

namespace kdsim {

using json = nlohmann::json;

struct ExplicitEdge {
    std::size_t layer = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double strength = 1.0;
};

struct NetworkConfig {
    std::size_t nodes = 500;
    std::size_t ring_degree = 10;
    double rewiring_p = 0.1;
    bool shared_topology = true;
    std::vector<ExplicitEdge> explicit_edges;
};

struct DomainConfig {
    std::vector<std::string> layers;
    std::vector<std::pair<std::string, std::string>> covers; // (below, above)
};

struct EventConfig {
    std::int64_t trigger = 0;
    std::string kind; // add_experts | remove_random_agents | set_vertical_matrix | set_competence_matrix
    std::size_t count = 0;
    double expert_knowledge = 0.0;
    std::string target_layer = "all"; // layer label or "all"
    std::vector<std::vector<double>> matrix;
    std::vector<std::pair<std::string, std::vector<double>>> competences;
};

struct EngineConfig {
    double coeff_a = 2.0;
    double coeff_b = 0.1;
    double coeff_c = 2.0;
    double coeff_d = 2.0;
    double omega = 0.01;
    std::int64_t steps = 500;
    std::uint64_t seed = 1;
    double init_min = 0.0;
    double init_max = 5.0;
    double expert_fraction = 0.0;
    double expert_knowledge = 0.0;
    std::vector<std::vector<double>> vertical_matrix; // empty = all zero
    std::vector<EventConfig> events;
};

struct CompetenceEntry {
    std::string name;
    std::vector<double> weights; // one per layer
};

struct CompetenceConfig {
    double k_ref = 30.0;
    std::vector<CompetenceEntry> competences;
};

struct OutputConfig {
    std::string directory = "out";
    bool charts = true;
};

struct ReplicationConfig {
    std::size_t count = 1;             // seeds engine.seed .. engine.seed+count-1
    std::vector<std::uint64_t> seeds;  // explicit list wins over count
};

// Per-stage overrides; a preset can bundle several scenario variants.
struct StageConfig {
    std::string name;
    std::optional<std::vector<std::vector<double>>> vertical_matrix;
    std::optional<std::vector<EventConfig>> events;
};

struct RunConfig {
    NetworkConfig network;
    DomainConfig domain;
    EngineConfig engine;
    CompetenceConfig competence;
    OutputConfig output;
    ReplicationConfig replication;
    std::vector<StageConfig> stages;
};

namespace detail {

inline const json& need(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(where + "." + key + ": required field missing");
    return *it;
}

template <typename T>
T get_as(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + ": wrong type");
    }
}

template <typename T>
void read(const json& j, const std::string& key, const std::string& where, T& out) {
    auto it = j.find(key);
    if (it != j.end())
        out = get_as<T>(*it, where + "." + key);
}

inline void expect_object(const json& j, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
}

// typo protection: a misspelled key must not silently fall back to a default
inline void reject_unknown(const json& j, const std::string& where,
                           std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            known = known || key == a;
        if (!known)
            throw ConfigError(where + "." + key + ": unknown field");
    }
}

} // namespace detail

inline EventConfig event_from_json(const json& j, const std::string& where) {
    detail::expect_object(j, where);
    detail::reject_unknown(j, where, {"kind", "trigger", "count", "expert_knowledge",
                                      "target_layer", "matrix", "competences"});
    EventConfig ev;
    ev.kind = detail::get_as<std::string>(detail::need(j, "kind", where), where + ".kind");
    detail::read(j, "trigger", where, ev.trigger);
    detail::read(j, "count", where, ev.count);
    detail::read(j, "expert_knowledge", where, ev.expert_knowledge);
    detail::read(j, "target_layer", where, ev.target_layer);
    detail::read(j, "matrix", where, ev.matrix);
    if (auto it = j.find("competences"); it != j.end()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string w = where + ".competences[" + std::to_string(i) + "]";
            const json& c = (*it)[i];
            detail::expect_object(c, w);
            ev.competences.emplace_back(
                detail::get_as<std::string>(detail::need(c, "name", w), w + ".name"),
                detail::get_as<std::vector<double>>(detail::need(c, "weights", w), w + ".weights"));
        }
    }
    return ev;
}

inline json event_to_json(const EventConfig& ev) {
    json j;
    j["kind"] = ev.kind;
    j["trigger"] = ev.trigger;
    if (ev.kind == "add_experts") {
        j["count"] = ev.count;
        j["expert_knowledge"] = ev.expert_knowledge;
        j["target_layer"] = ev.target_layer;
    } else if (ev.kind == "remove_random_agents") {
        j["count"] = ev.count;
    } else if (ev.kind == "set_vertical_matrix") {
        j["matrix"] = ev.matrix;
    } else if (ev.kind == "set_competence_matrix") {
        json list = json::array();
        for (const auto& [name, weights] : ev.competences)
            list.push_back({{"name", name}, {"weights", weights}});
        j["competences"] = list;
    }
    return j;
}

inline RunConfig config_from_json(const json& root) {
    detail::expect_object(root, "config");
    detail::reject_unknown(root, "config", {"network", "domain", "engine", "competence", "output",
                                            "replication", "stages"});
    RunConfig cfg;

    if (auto it = root.find("network"); it != root.end()) {
        detail::expect_object(*it, "network");
        detail::reject_unknown(*it, "network", {"nodes", "ring_degree", "rewiring_p",
                                                "shared_topology", "explicit_edges"});
        detail::read(*it, "nodes", "network", cfg.network.nodes);
        detail::read(*it, "ring_degree", "network", cfg.network.ring_degree);
        detail::read(*it, "rewiring_p", "network", cfg.network.rewiring_p);
        detail::read(*it, "shared_topology", "network", cfg.network.shared_topology);
        if (auto e = it->find("explicit_edges"); e != it->end()) {
            for (std::size_t i = 0; i < e->size(); ++i) {
                const std::string where = "network.explicit_edges[" + std::to_string(i) + "]";
                const json& row = (*e)[i];
                if (!row.is_array() || row.size() != 4)
                    throw ConfigError(where + ": expected [layer, a, b, strength]");
                cfg.network.explicit_edges.push_back(
                    {detail::get_as<std::size_t>(row[0], where),
                     detail::get_as<std::uint32_t>(row[1], where),
                     detail::get_as<std::uint32_t>(row[2], where),
                     detail::get_as<double>(row[3], where)});
            }
        }
    }

    {
        const json& dom = detail::need(root, "domain", "config");
        detail::expect_object(dom, "domain");
        detail::reject_unknown(dom, "domain", {"layers", "covers"});
        cfg.domain.layers = detail::get_as<std::vector<std::string>>(
            detail::need(dom, "layers", "domain"), "domain.layers");
        if (auto c = dom.find("covers"); c != dom.end()) {
            for (std::size_t i = 0; i < c->size(); ++i) {
                const std::string where = "domain.covers[" + std::to_string(i) + "]";
                const json& row = (*c)[i];
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError(where + ": expected [below, above]");
                cfg.domain.covers.emplace_back(detail::get_as<std::string>(row[0], where),
                                               detail::get_as<std::string>(row[1], where));
            }
        }
    }

    if (auto it = root.find("engine"); it != root.end()) {
        detail::expect_object(*it, "engine");
        detail::reject_unknown(*it, "engine",
                               {"coeff_A", "coeff_B", "coeff_C", "coeff_D", "omega", "steps",
                                "seed", "init_knowledge", "expert_fraction", "expert_knowledge",
                                "vertical_matrix", "events"});
        detail::read(*it, "coeff_A", "engine", cfg.engine.coeff_a);
        detail::read(*it, "coeff_B", "engine", cfg.engine.coeff_b);
        detail::read(*it, "coeff_C", "engine", cfg.engine.coeff_c);
        detail::read(*it, "coeff_D", "engine", cfg.engine.coeff_d);
        detail::read(*it, "omega", "engine", cfg.engine.omega);
        detail::read(*it, "steps", "engine", cfg.engine.steps);
        detail::read(*it, "seed", "engine", cfg.engine.seed);
        detail::read(*it, "expert_fraction", "engine", cfg.engine.expert_fraction);
        detail::read(*it, "expert_knowledge", "engine", cfg.engine.expert_knowledge);
        detail::read(*it, "vertical_matrix", "engine", cfg.engine.vertical_matrix);
        if (auto r = it->find("init_knowledge"); r != it->end()) {
            detail::expect_object(*r, "engine.init_knowledge");
            detail::reject_unknown(*r, "engine.init_knowledge", {"min", "max"});
            detail::read(*r, "min", "engine.init_knowledge", cfg.engine.init_min);
            detail::read(*r, "max", "engine.init_knowledge", cfg.engine.init_max);
        }
        if (auto e = it->find("events"); e != it->end())
            for (std::size_t i = 0; i < e->size(); ++i)
                cfg.engine.events.push_back(
                    event_from_json((*e)[i], "engine.events[" + std::to_string(i) + "]"));
    }

    if (auto it = root.find("competence"); it != root.end()) {
        detail::expect_object(*it, "competence");
        detail::reject_unknown(*it, "competence", {"k_ref", "competences"});
        detail::read(*it, "k_ref", "competence", cfg.competence.k_ref);
        if (auto c = it->find("competences"); c != it->end()) {
            for (std::size_t i = 0; i < c->size(); ++i) {
                const std::string where = "competence.competences[" + std::to_string(i) + "]";
                const json& entry = (*c)[i];
                detail::expect_object(entry, where);
                detail::reject_unknown(entry, where, {"name", "weights"});
                cfg.competence.competences.push_back(
                    {detail::get_as<std::string>(detail::need(entry, "name", where), where + ".name"),
                     detail::get_as<std::vector<double>>(detail::need(entry, "weights", where),
                                                         where + ".weights")});
            }
        }
    }

    if (auto it = root.find("output"); it != root.end()) {
        detail::expect_object(*it, "output");
        detail::reject_unknown(*it, "output", {"directory", "charts"});
        detail::read(*it, "directory", "output", cfg.output.directory);
        detail::read(*it, "charts", "output", cfg.output.charts);
    }

    if (auto it = root.find("replication"); it != root.end()) {
        detail::expect_object(*it, "replication");
        detail::reject_unknown(*it, "replication", {"count", "seeds"});
        detail::read(*it, "count", "replication", cfg.replication.count);
        detail::read(*it, "seeds", "replication", cfg.replication.seeds);
    }

    if (auto it = root.find("stages"); it != root.end()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "stages[" + std::to_string(i) + "]";
            const json& st = (*it)[i];
            detail::expect_object(st, where);
            detail::reject_unknown(st, where, {"name", "vertical_matrix", "events"});
            StageConfig stage;
            stage.name = detail::get_as<std::string>(detail::need(st, "name", where), where + ".name");
            if (auto m = st.find("vertical_matrix"); m != st.end())
                stage.vertical_matrix =
                    detail::get_as<std::vector<std::vector<double>>>(*m, where + ".vertical_matrix");
            if (auto e = st.find("events"); e != st.end()) {
                std::vector<EventConfig> events;
                for (std::size_t k = 0; k < e->size(); ++k)
                    events.push_back(
                        event_from_json((*e)[k], where + ".events[" + std::to_string(k) + "]"));
                stage.events = std::move(events);
            }
            cfg.stages.push_back(std::move(stage));
        }
    }

    return cfg;
}

inline json config_to_json(const RunConfig& cfg) {
    json root;
    json& net = root["network"];
    net["nodes"] = cfg.network.nodes;
    net["ring_degree"] = cfg.network.ring_degree;
    net["rewiring_p"] = cfg.network.rewiring_p;
    net["shared_topology"] = cfg.network.shared_topology;
    if (!cfg.network.explicit_edges.empty()) {
        json list = json::array();
        for (const ExplicitEdge& e : cfg.network.explicit_edges)
            list.push_back({e.layer, e.a, e.b, e.strength});
        net["explicit_edges"] = list;
    }

    json& dom = root["domain"];
    dom["layers"] = cfg.domain.layers;
    json covers = json::array();
    for (const auto& [below, above] : cfg.domain.covers)
        covers.push_back({below, above});
    dom["covers"] = covers;

    json& eng = root["engine"];
    eng["coeff_A"] = cfg.engine.coeff_a;
    eng["coeff_B"] = cfg.engine.coeff_b;
    eng["coeff_C"] = cfg.engine.coeff_c;
    eng["coeff_D"] = cfg.engine.coeff_d;
    eng["omega"] = cfg.engine.omega;
    eng["steps"] = cfg.engine.steps;
    eng["seed"] = cfg.engine.seed;
    eng["init_knowledge"] = {{"min", cfg.engine.init_min}, {"max", cfg.engine.init_max}};
    eng["expert_fraction"] = cfg.engine.expert_fraction;
    eng["expert_knowledge"] = cfg.engine.expert_knowledge;
    eng["vertical_matrix"] = cfg.engine.vertical_matrix;
    json events = json::array();
    for (const EventConfig& ev : cfg.engine.events)
        events.push_back(event_to_json(ev));
    eng["events"] = events;

    json& comp = root["competence"];
    comp["k_ref"] = cfg.competence.k_ref;
    json entries = json::array();
    for (const CompetenceEntry& e : cfg.competence.competences)
        entries.push_back({{"name", e.name}, {"weights", e.weights}});
    comp["competences"] = entries;

    root["output"] = {{"directory", cfg.output.directory}, {"charts", cfg.output.charts}};

    json& rep = root["replication"];
    if (!cfg.replication.seeds.empty())
        rep["seeds"] = cfg.replication.seeds;
    else
        rep["count"] = cfg.replication.count;

    if (!cfg.stages.empty()) {
        json stages = json::array();
        for (const StageConfig& st : cfg.stages) {
            json s;
            s["name"] = st.name;
            if (st.vertical_matrix)
                s["vertical_matrix"] = *st.vertical_matrix;
            if (st.events) {
                json evs = json::array();
                for (const EventConfig& ev : *st.events)
                    evs.push_back(event_to_json(ev));
                s["events"] = evs;
            }
            stages.push_back(std::move(s));
        }
        root["stages"] = stages;
    }
    return root;
}

inline RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
    return config_from_json(root);
}

// FNV-1a over the canonical JSON dump, output section excluded: the digest
// identifies the simulation, not where its artifacts land.
inline std::string config_digest(const RunConfig& cfg) {
    json j = config_to_json(cfg);
    j.erase("output");
    const std::string text = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline void validate_events(const std::vector<EventConfig>& events, const std::string& where,
                            const RunConfig& cfg, std::vector<std::string>& out) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const EventConfig& ev = events[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        const bool known = ev.kind == "add_experts" || ev.kind == "remove_random_agents" ||
                           ev.kind == "set_vertical_matrix" || ev.kind == "set_competence_matrix";
        if (!known) {
            out.push_back(at + ".kind: unknown event kind '" + ev.kind + "'");
            continue;
        }
        if (ev.trigger < 0 || ev.trigger >= cfg.engine.steps)
            out.push_back(at + ".trigger: " + std::to_string(ev.trigger) +
                          " outside the run horizon [0," + std::to_string(cfg.engine.steps) + ")");
        if (ev.kind == "add_experts") {
            if (ev.target_layer != "all" &&
                std::find(cfg.domain.layers.begin(), cfg.domain.layers.end(), ev.target_layer) ==
                    cfg.domain.layers.end())
                out.push_back(at + ".target_layer: unknown layer '" + ev.target_layer +
                              "' (domain.layers does not contain it)");
            if (ev.expert_knowledge < 0.0)
                out.push_back(at + ".expert_knowledge: must be >= 0");
        }
        if (ev.kind == "set_vertical_matrix") {
            if (ev.matrix.size() != cfg.domain.layers.size())
                out.push_back(at + ".matrix: side " + std::to_string(ev.matrix.size()) +
                              " does not match domain.layers count " +
                              std::to_string(cfg.domain.layers.size()));
            for (std::size_t r = 0; r < ev.matrix.size(); ++r) {
                if (ev.matrix[r].size() != ev.matrix.size())
                    out.push_back(at + ".matrix: row " + std::to_string(r) + " is not square");
                else {
                    for (std::size_t c = 0; c < ev.matrix[r].size(); ++c) {
                        if (ev.matrix[r][c] < 0.0)
                            out.push_back(at + ".matrix: negative entry");
                        if (r == c && ev.matrix[r][c] != 0.0)
                            out.push_back(at + ".matrix: diagonal must be zero");
                    }
                }
            }
        }
        if (ev.kind == "set_competence_matrix") {
            for (const auto& [name, weights] : ev.competences) {
                if (weights.size() != cfg.domain.layers.size())
                    out.push_back(at + ".competences: '" + name +
                                  "' weight count does not match domain.layers count");
                double sum = 0.0;
                for (double w : weights)
                    sum += w;
                if (std::abs(sum - 1.0) > 1e-9)
                    out.push_back(at + ".competences: '" + name + "' weights sum to " +
                                  std::to_string(sum) + ", expected 1");
            }
        }
    }
}

} // namespace detail

// Full structural + cross-reference validation without running. Returns every
// violation found; an empty list means the configuration is runnable.
inline std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> out;
    const std::size_t layers = cfg.domain.layers.size();

    if (cfg.network.nodes < 3)
        out.push_back("network.nodes: need at least 3 nodes");
    if (cfg.network.ring_degree % 2 != 0)
        out.push_back("network.ring_degree: must be even");
    if (cfg.network.ring_degree >= cfg.network.nodes)
        out.push_back("network.ring_degree: must be smaller than network.nodes");
    if (!(cfg.network.rewiring_p >= 0.0 && cfg.network.rewiring_p <= 1.0))
        out.push_back("network.rewiring_p: must be in [0,1]");
    for (std::size_t i = 0; i < cfg.network.explicit_edges.size(); ++i) {
        const ExplicitEdge& e = cfg.network.explicit_edges[i];
        const std::string at = "network.explicit_edges[" + std::to_string(i) + "]";
        if (e.layer >= layers)
            out.push_back(at + ": layer index " + std::to_string(e.layer) +
                          " outside domain.layers count " + std::to_string(layers));
        if (e.a >= cfg.network.nodes || e.b >= cfg.network.nodes)
            out.push_back(at + ": node outside network.nodes");
        if (e.a == e.b)
            out.push_back(at + ": self-loop");
        if (e.strength < 0.0)
            out.push_back(at + ": negative strength");
    }

    if (layers == 0)
        out.push_back("domain.layers: need at least one layer");
    try {
        KnowledgeDomain::build(cfg.domain.layers, cfg.domain.covers);
    } catch (const Error& e) {
        out.push_back(std::string("domain.covers: ") + e.what());
    }

    if (cfg.engine.coeff_a <= 0.0)
        out.push_back("engine.coeff_A: must be positive");
    if (cfg.engine.coeff_b <= 0.0)
        out.push_back("engine.coeff_B: must be positive");
    if (cfg.engine.coeff_c <= 0.0)
        out.push_back("engine.coeff_C: must be positive");
    if (cfg.engine.coeff_d <= 0.0)
        out.push_back("engine.coeff_D: must be positive");
    if (cfg.engine.omega <= 0.0)
        out.push_back("engine.omega: must be positive");
    if (cfg.engine.steps < 1)
        out.push_back("engine.steps: must be >= 1");
    if (cfg.engine.init_min < 0.0 || cfg.engine.init_max < cfg.engine.init_min)
        out.push_back("engine.init_knowledge: need 0 <= min <= max");
    if (!(cfg.engine.expert_fraction >= 0.0 && cfg.engine.expert_fraction <= 1.0))
        out.push_back("engine.expert_fraction: must be in [0,1]");
    if (cfg.engine.expert_knowledge < 0.0)
        out.push_back("engine.expert_knowledge: must be >= 0");
    if (!cfg.engine.vertical_matrix.empty()) {
        if (cfg.engine.vertical_matrix.size() != layers)
            out.push_back("engine.vertical_matrix: side " +
                          std::to_string(cfg.engine.vertical_matrix.size()) +
                          " does not match domain.layers count " + std::to_string(layers));
        for (std::size_t r = 0; r < cfg.engine.vertical_matrix.size(); ++r) {
            const auto& row = cfg.engine.vertical_matrix[r];
            if (row.size() != cfg.engine.vertical_matrix.size()) {
                out.push_back("engine.vertical_matrix: row " + std::to_string(r) + " is not square");
                continue;
            }
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c] < 0.0)
                    out.push_back("engine.vertical_matrix: negative entry at row " +
                                  std::to_string(r));
                if (r == c && row[c] != 0.0)
                    out.push_back("engine.vertical_matrix: diagonal must be zero (row " +
                                  std::to_string(r) + ")");
            }
        }
    }
    detail::validate_events(cfg.engine.events, "engine.events", cfg, out);

    if (cfg.competence.k_ref <= 0.0)
        out.push_back("competence.k_ref: must be positive");
    for (std::size_t i = 0; i < cfg.competence.competences.size(); ++i) {
        const CompetenceEntry& e = cfg.competence.competences[i];
        const std::string at = "competence.competences[" + std::to_string(i) + "]";
        if (e.weights.size() != layers)
            out.push_back(at + ".weights: count " + std::to_string(e.weights.size()) +
                          " does not match domain.layers count " + std::to_string(layers));
        double sum = 0.0;
        bool negative = false;
        for (double w : e.weights) {
            sum += w;
            negative = negative || w < 0.0;
        }
        if (negative)
            out.push_back(at + ".weights: negative weight");
        if (std::abs(sum - 1.0) > 1e-9)
            out.push_back(at + ".weights: column sums to " + std::to_string(sum) + ", expected 1");
    }

    if (cfg.output.directory.empty())
        out.push_back("output.directory: must not be empty");
    if (cfg.replication.seeds.empty() && cfg.replication.count < 1)
        out.push_back("replication.count: must be >= 1");

    for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
        const StageConfig& st = cfg.stages[i];
        const std::string at = "stages[" + std::to_string(i) + "]";
        if (st.name.empty())
            out.push_back(at + ".name: must not be empty");
        if (st.vertical_matrix) {
            RunConfig probe = cfg;
            probe.engine.vertical_matrix = *st.vertical_matrix;
            probe.engine.events.clear();
            probe.stages.clear();
            for (const std::string& v : validate(probe))
                if (v.rfind("engine.vertical_matrix", 0) == 0)
                    out.push_back(at + "." + v.substr(std::string("engine.").size()));
        }
        if (st.events)
            detail::validate_events(*st.events, at + ".events", cfg, out);
    }

    return out;
}

// The three scenario bundles of the study this simulator reproduces.
inline RunConfig preset(const std::string& name) {
    const std::vector<std::vector<double>> zero4(4, std::vector<double>(4, 0.0));
    const std::vector<std::vector<double>> symmetric4 = {{0.0, 0.4, 0.4, 0.4},
                                                         {0.4, 0.0, 0.4, 0.4},
                                                         {0.4, 0.4, 0.0, 0.4},
                                                         {0.4, 0.4, 0.4, 0.0}};
    const std::vector<std::vector<double>> asymmetric4 = {{0.0, 0.6, 0.0, 0.0},
                                                          {0.1, 0.0, 0.5, 0.5},
                                                          {0.0, 0.2, 0.0, 0.0},
                                                          {0.0, 0.2, 0.0, 0.0}};

    RunConfig cfg;
    cfg.network = {500, 10, 0.1, true, {}};
    cfg.domain.layers = {"n1", "n2", "n3", "n4"};
    cfg.domain.covers = {{"n2", "n1"}, {"n3", "n2"}, {"n4", "n2"}};
    cfg.engine.coeff_a = 2.0;
    cfg.engine.coeff_b = 0.1;
    cfg.engine.coeff_c = 2.0;
    cfg.engine.coeff_d = 2.0;
    cfg.engine.omega = 0.01;
    cfg.engine.steps = 500;
    cfg.engine.seed = 1;
    cfg.engine.init_min = 0.0;
    cfg.engine.init_max = 5.0;
    cfg.engine.expert_fraction = 0.03;
    cfg.engine.expert_knowledge = 30.0;
    cfg.competence.k_ref = 30.0;
    cfg.competence.competences = {{"c1", {0.5, 0.5, 0.0, 0.0}},
                                  {"c2", {0.10, 0.20, 0.30, 0.40}},
                                  {"c3", {0.25, 0.25, 0.25, 0.25}},
                                  {"c4", {0.40, 0.40, 0.10, 0.10}}};
    cfg.output.charts = true;

    auto add_experts = [](std::int64_t trigger, std::size_t count, double level,
                          const std::string& layer) {
        EventConfig ev;
        ev.kind = "add_experts";
        ev.trigger = trigger;
        ev.count = count;
        ev.expert_knowledge = level;
        ev.target_layer = layer;
        return ev;
    };
    auto remove_agents = [](std::int64_t trigger, std::size_t count) {
        EventConfig ev;
        ev.kind = "remove_random_agents";
        ev.trigger = trigger;
        ev.count = count;
        return ev;
    };

    if (name == "paper-531") {
        // three stages: no vertical diffusion, symmetric coupling, asymmetric coupling
        cfg.engine.vertical_matrix = zero4;
        cfg.output.directory = "runs/paper-531";
        cfg.stages = {{"vertical-off", zero4, std::nullopt},
                      {"symmetric", symmetric4, std::nullopt},
                      {"asymmetric", asymmetric4, std::nullopt}};
        return cfg;
    }
    if (name == "paper-532") {
        // expert injections on the asymmetric coupling: one big dose vs
        // repeated smaller doses
        cfg.engine.vertical_matrix = asymmetric4;
        cfg.engine.events = {add_experts(100, 10, 50.0, "n1")};
        cfg.output.directory = "runs/paper-532";
        cfg.stages = {
            {"single-injection", std::nullopt, std::vector<EventConfig>{add_experts(100, 10, 50.0, "n1")}},
            {"repeated-small", std::nullopt,
             std::vector<EventConfig>{add_experts(100, 5, 25.0, "n1"), add_experts(300, 5, 25.0, "n1")}}};
        return cfg;
    }
    if (name == "paper-533") {
        // employment shock, then expert-driven recovery
        cfg.engine.vertical_matrix = asymmetric4;
        cfg.engine.events = {remove_agents(200, 50), add_experts(300, 10, 50.0, "n1")};
        cfg.output.directory = "runs/paper-533";
        return cfg;
    }
    throw UnknownPreset("unknown preset '" + name + "' (expected paper-531, paper-532 or paper-533)");
}

} // namespace kdsim
