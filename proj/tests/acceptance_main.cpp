// Acceptance suite: runs every scenario-level requirement and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kdsim/config.hpp"
#include "kdsim/metrics.hpp"
#include "kdsim/runner.hpp"
#include "reference_engine.hpp"

using namespace kdsim;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (detail.empty())
            detail = what;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond)
            fail(why);
    }
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::current_path() / "acceptance_tmp";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string fmt(double v) { return format_value(v); }

Engine make_plain_engine(MultilayerNetwork net, std::vector<AgentProfile> profiles,
                         std::vector<std::vector<double>> rows, EngineParams params = {}) {
    const std::size_t layers = net.layer_count();
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < layers; ++j)
        labels.push_back("l" + std::to_string(j));
    KnowledgeDomain domain = KnowledgeDomain::build(labels, {});
    VerticalDiffusionMatrix vertical =
        rows.empty() ? VerticalDiffusionMatrix(layers) : VerticalDiffusionMatrix::from_rows(rows);
    CompetenceMatrix comp(layers, {"c"},
                          {std::vector<double>(layers, 1.0 / static_cast<double>(layers))});
    return Engine(std::move(net), std::move(profiles), std::move(domain), std::move(vertical),
                  std::move(comp), params, Rng(1));
}

// ---- criterion 1: equation-level oracles -----------------------------------

void criterion_equation_oracles(Check& c) {
    const double tol = 1e-12;

    { // horizontal transfer: teacher degree 4, layer max degree 8, A=2
        MultilayerNetwork net(1, 10);
        net.add_edge(0, AgentId{0}, AgentId{1});
        for (std::uint32_t v : {2u, 3u, 4u})
            net.add_edge(0, AgentId{1}, AgentId{v});
        for (std::uint32_t v : {0u, 2u, 3u, 4u, 6u, 7u, 8u, 9u})
            net.add_edge(0, AgentId{5}, AgentId{v});
        std::vector<AgentProfile> profiles{{{4.0}, 0.5, 0.0}, {{10.0}, 0.0, 0.8}};
        for (int i = 0; i < 8; ++i)
            profiles.push_back({{0.0}, 0.0, 0.0});
        Engine eng = make_plain_engine(std::move(net), std::move(profiles), {});
        const double delta = eng.horizontal_increment(AgentId{0}, 0, AgentId{1});
        c.expect(std::abs(delta - 2.4) <= tol, "horizontal transfer: got " + fmt(delta));
    }
    { // transfer potential
        MultilayerNetwork net(1, 3);
        net.add_edge(0, AgentId{0}, AgentId{1});
        net.add_edge(0, AgentId{0}, AgentId{2});
        Engine eng = make_plain_engine(std::move(net),
                                       {{{0.0}, 0.5, 0.5}, {{10.0}, 0.0, 0.5}, {{20.0}, 0.0, 1.0}},
                                       {});
        const double kt = eng.avg_transfer_potential(AgentId{0}, 0);
        c.expect(std::abs(kt - 12.5) <= tol, "transfer potential: got " + fmt(kt));
    }
    { // forgetting decrement
        MultilayerNetwork net(1, 2);
        net.add_edge(0, AgentId{0}, AgentId{1});
        Engine eng = make_plain_engine(std::move(net), {{{10.0}, 0.9, 0.0}, {{8.0}, 0.0, 1.0}}, {});
        const double xi = eng.forgetting_step(AgentId{0}, 0);
        c.expect(std::abs(xi - 2.0) <= tol, "forgetting: got " + fmt(xi));
        c.expect(std::abs(eng.knowledge(AgentId{0}, 0) - 8.0) <= tol, "forgetting result");
    }
    { // forgetting overrun floors at omega
        MultilayerNetwork net(1, 2);
        net.add_edge(0, AgentId{0}, AgentId{1});
        Engine eng = make_plain_engine(std::move(net), {{{10.0}, 0.5, 0.0}, {{4.0}, 0.0, 1.0}}, {});
        eng.forgetting_step(AgentId{0}, 0);
        c.expect(std::abs(eng.knowledge(AgentId{0}, 0) - 0.01) <= tol, "forgetting floor");
    }
    { // clustered self-learning
        MultilayerNetwork net(1, 5);
        for (std::uint32_t v : {1u, 2u, 3u, 4u})
            net.add_edge(0, AgentId{0}, AgentId{v});
        net.add_edge(0, AgentId{1}, AgentId{2});
        net.add_edge(0, AgentId{2}, AgentId{3});
        net.add_edge(0, AgentId{3}, AgentId{4});
        std::vector<AgentProfile> profiles{{{4.0}, 0.5, 0.0}};
        for (int i = 0; i < 4; ++i)
            profiles.push_back({{12.5}, 0.0, 1.0});
        Engine eng = make_plain_engine(std::move(net), std::move(profiles), {});
        const double psi = eng.self_learning_step(AgentId{0}, 0);
        c.expect(std::abs(psi - 1.0625) <= tol, "self-learning cc>0: got " + fmt(psi));
        c.expect(std::abs(eng.knowledge(AgentId{0}, 0) - 5.0625) <= tol, "self-learning result");
    }
    { // unclustered self-learning
        MultilayerNetwork net(1, 3);
        net.add_edge(0, AgentId{0}, AgentId{1});
        net.add_edge(0, AgentId{0}, AgentId{2});
        Engine eng = make_plain_engine(std::move(net),
                                       {{{4.0}, 0.5, 0.0}, {{12.5}, 0.0, 1.0}, {{12.5}, 0.0, 1.0}},
                                       {});
        const double psi = eng.self_learning_step(AgentId{0}, 0);
        c.expect(std::abs(psi - 2.125) <= tol, "self-learning cc=0: got " + fmt(psi));
    }
    { // layer ranking totals over the asymmetric coupling
        std::vector<AgentProfile> profiles(500, AgentProfile{{0, 0, 0, 0}, 0.5, 0.5});
        Engine eng = make_plain_engine(MultilayerNetwork(4, 500), std::move(profiles),
                                       {{0.0, 0.6, 0.0, 0.0},
                                        {0.1, 0.0, 0.5, 0.5},
                                        {0.0, 0.2, 0.0, 0.0},
                                        {0.0, 0.2, 0.0, 0.0}});
        const auto scores = eng.layer_rank_scores();
        const double want[] = {300.0, 550.0, 100.0, 100.0};
        for (int i = 0; i < 4; ++i)
            c.expect(std::abs(scores[i] - want[i]) <= tol * want[i],
                     "ranking score " + std::to_string(i) + ": got " + fmt(scores[i]));
        const auto order = eng.layer_ranking();
        c.expect(order[0] == 1 && order[1] == 0, "ranking order prefix");
    }
}

// ---- criterion 2: naive reference equivalence -------------------------------

void criterion_reference_equivalence(Check& c) {
    Rng gen(424242);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t agents = 2 + gen.index(5);
        const std::size_t layers = 1 + gen.index(3);

        refsim::RefState ref;
        ref.A = gen.uniform(0.5, 3.0);
        ref.B = gen.uniform(0.5, 3.0);
        ref.C = gen.uniform(0.5, 3.0);
        ref.D = gen.uniform(0.5, 3.0);
        ref.omega = 0.01;
        ref.r.assign(layers, std::vector<double>(layers, 0.0));
        for (std::size_t f = 0; f < layers; ++f)
            for (std::size_t t = 0; t < layers; ++t)
                if (f != t)
                    ref.r[f][t] = gen.uniform(0.0, 0.8);
        for (std::size_t f = 1; f < layers; ++f)
            ref.r[f][(f + 1) % layers] += 0.01 * double(f); // distinct row sums

        MultilayerNetwork net(layers, agents);
        ref.adj.assign(layers, std::vector<std::vector<refsim::RefEdge>>(agents));
        for (std::size_t j = 0; j < layers; ++j)
            for (std::size_t a = 0; a < agents; ++a)
                for (std::size_t b = a + 1; b < agents; ++b)
                    if (gen.bernoulli(0.5)) {
                        const double f = gen.uniform(0.0, 2.0);
                        net.add_edge(j, AgentId{std::uint32_t(a)}, AgentId{std::uint32_t(b)}, f);
                        ref.adj[j][a].push_back({b, f});
                        ref.adj[j][b].push_back({a, f});
                    }

        std::vector<AgentProfile> profiles;
        for (std::size_t a = 0; a < agents; ++a) {
            AgentProfile p;
            p.knowledge.resize(layers);
            for (std::size_t j = 0; j < layers; ++j)
                p.knowledge[j] = gen.uniform(0.0, 10.0);
            p.cognitive = gen.next_unit();
            p.social = gen.next_unit();
            ref.knowledge.push_back(p.knowledge);
            ref.cognitive.push_back(p.cognitive);
            ref.social.push_back(p.social);
            profiles.push_back(std::move(p));
        }

        Engine eng = make_plain_engine(std::move(net), std::move(profiles), ref.r,
                                       EngineParams{ref.A, ref.B, ref.C, ref.D, ref.omega});
        eng.step();
        refsim::ref_step(ref);

        for (std::size_t a = 0; a < agents; ++a)
            for (std::size_t j = 0; j < layers; ++j) {
                const double diff = std::abs(eng.profiles()[a].knowledge[j] - ref.knowledge[a][j]);
                worst = std::max(worst, diff);
                if (diff > 1e-12)
                    c.fail("trial " + std::to_string(trial) + " agent " + std::to_string(a) +
                           " layer " + std::to_string(j) + ": |diff| = " + fmt(diff));
            }
    }
    c.note("100 random configurations, worst |diff| = " + fmt(worst));
}

// ---- criteria 3 + 4: floor invariant and flow-ledger closure ----------------

RunConfig small_floor_config() {
    RunConfig cfg = preset("paper-531");
    cfg.network.nodes = 50;
    cfg.stages.clear();
    cfg.engine.vertical_matrix = {{0.0, 0.4, 0.4, 0.4},
                                  {0.4, 0.0, 0.4, 0.4},
                                  {0.4, 0.4, 0.0, 0.4},
                                  {0.4, 0.4, 0.4, 0.0}};
    return cfg;
}

void criterion_floor_invariant(Check& c, std::vector<TimeSeriesLog>& logs_out) {
    const RunConfig cfg = small_floor_config();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Engine eng = build_engine(cfg, seed);
        const double omega = eng.params().omega;
        const std::size_t agents = eng.agent_count(), layers = eng.layer_count();
        std::vector<std::vector<bool>> above(agents, std::vector<bool>(layers, false));
        std::vector<std::vector<bool>> positive(agents, std::vector<bool>(layers, false));
        std::vector<std::vector<double>> previous(agents, std::vector<double>(layers, 0.0));

        auto scan = [&](std::int64_t t) {
            for (std::size_t s = 0; s < agents; ++s)
                for (std::size_t j = 0; j < layers; ++j) {
                    const double k = eng.profiles()[s].knowledge[j];
                    if (above[s][j] && k < omega)
                        c.fail("seed " + std::to_string(seed) + " step " + std::to_string(t) +
                               ": entry fell below omega (" + fmt(k) + ")");
                    if (positive[s][j] && k <= 0.0)
                        c.fail("seed " + std::to_string(seed) + ": positive entry hit zero");
                    if (positive[s][j] && k < omega && k < previous[s][j])
                        c.fail("seed " + std::to_string(seed) + ": sub-omega entry decreased");
                    above[s][j] = above[s][j] || k >= omega;
                    positive[s][j] = positive[s][j] || k > 0.0;
                    previous[s][j] = k;
                }
        };
        scan(-1);

        TimeSeriesLog log(cfg.domain.layers, {"c1", "c2", "c3", "c4"},
                          RunMetadata{config_digest(cfg), seed, ""});
        for (std::int64_t t = 0; t < cfg.engine.steps; ++t) {
            StepReport rep = eng.step();
            scan(t);
            const auto comp = eng.competence_report(cfg.competence.k_ref);
            for (const auto& row : comp.values)
                for (double v : row)
                    if (!(v >= 0.0 && v <= 1.0))
                        c.fail("competence value out of [0,1]: " + fmt(v));
            log.append(std::move(rep), comp.organizational_mean);
        }
        logs_out.push_back(std::move(log));
    }
    c.note("20 seeds x 500 steps x 50 agents x 4 layers");
}

void criterion_flow_ledger(Check& c, const std::vector<TimeSeriesLog>& logs) {
    const RunConfig cfg = small_floor_config();
    const VerticalDiffusionMatrix r = VerticalDiffusionMatrix::from_rows(cfg.engine.vertical_matrix);
    const std::size_t layers = cfg.domain.layers.size();
    std::map<std::string, std::size_t> layer_index;
    for (std::size_t j = 0; j < layers; ++j)
        layer_index[cfg.domain.layers[j]] = j;

    std::size_t rows_checked = 0, floored_rows = 0;
    for (std::size_t run = 0; run < logs.size(); ++run) {
        const TimeSeriesLog& log = logs[run];
        const fs::path dir = work_dir() / ("ledger-" + std::to_string(run));
        export_csv(log, dir);
        const auto rows = load_csv(dir / "flows.csv");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            const std::size_t t = std::stoul(row[0]);
            const std::size_t f = layer_index.at(row[1]);
            const std::size_t to = layer_index.at(row[2]);
            const StepReport& rep = log.steps()[t];
            const double floor_mem = rep.floor_correction_at(f, to);
            // inflow_gain = r * sum(source deltas); losses carry the floor
            // correction in the separate column
            if (row[3] != fmt(r.at(f, to) * rep.source_gain[f]))
                c.fail("gain mismatch at row " + std::to_string(i));
            if (row[4] != fmt(r.at(f, to) * rep.source_loss[f] - floor_mem))
                c.fail("loss mismatch at row " + std::to_string(i));
            if (row[5] != fmt(floor_mem))
                c.fail("floor mismatch at row " + std::to_string(i));
            if (parse_value(row[5]) > 0.0)
                ++floored_rows;
            ++rows_checked;
            if (!c.ok)
                return;
        }
    }
    c.expect(floored_rows > 0, "no flooring observed, ledger untested");
    c.note(std::to_string(rows_checked) + " rows exact, " + std::to_string(floored_rows) +
           " with nonzero floor correction");
}

// ---- criterion 5: vertical diffusion benefit --------------------------------

void criterion_vertical_benefit(Check& c) {
    const RunConfig base = preset("paper-531");
    const auto plans = expand_stages(base);
    const StagePlan* off = nullptr;
    const StagePlan* symmetric = nullptr;
    for (const auto& plan : plans) {
        if (plan.name == "vertical-off")
            off = &plan;
        if (plan.name == "symmetric")
            symmetric = &plan;
    }
    std::vector<double> mean_off(4, 0.0), mean_sym(4, 0.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto final_off = run_simulation(off->config, seed).steps().back().layer_mean;
        const auto final_sym = run_simulation(symmetric->config, seed).steps().back().layer_mean;
        for (int j = 0; j < 4; ++j) {
            mean_off[j] += final_off[j] / 10.0;
            mean_sym[j] += final_sym[j] / 10.0;
        }
    }
    std::string detail;
    for (int j = 0; j < 4; ++j) {
        detail += (j ? ", " : "") + std::string("layer ") + std::to_string(j + 1) + ": " +
                  fmt(mean_sym[j]) + " vs " + fmt(mean_off[j]);
        c.expect(mean_sym[j] > mean_off[j],
                 "layer " + std::to_string(j + 1) + " not improved by vertical diffusion");
    }
    c.note(detail);
}

// ---- criterion 6: expert injection peak and decline --------------------------

void criterion_expert_injection(Check& c) {
    const RunConfig base = preset("paper-532");
    const StagePlan plan = expand_stages(base)[0]; // single injection of 10 @ 50
    int successes = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const TimeSeriesLog log = run_simulation(plan.config, seed);
        std::vector<double> mean1;
        for (const StepReport& rep : log.steps())
            mean1.push_back(rep.layer_mean[0]);

        std::size_t peak_at = 100;
        for (std::size_t t = 100; t <= 110; ++t)
            if (mean1[t] > mean1[peak_at])
                peak_at = t;
        const double peak = mean1[peak_at];
        double trough = peak;
        for (std::size_t t = peak_at + 1; t <= 250; ++t)
            trough = std::min(trough, mean1[t]);
        const bool grew = peak > mean1[99];
        const bool declined = trough <= 0.8 * peak;
        if (grew && declined)
            ++successes;
        if (seed == 1)
            detail = "seed 1: pre " + fmt(mean1[99]) + ", peak " + fmt(peak) + " @ " +
                     std::to_string(peak_at) + ", trough " + fmt(trough);
    }
    c.expect(successes >= 8, "peak-then-decline in only " + std::to_string(successes) + "/10 seeds");
    c.note(detail + "; " + std::to_string(successes) + "/10 seeds");
}

// ---- criterion 7: dosing comparison ------------------------------------------

void criterion_dosing(Check& c) {
    const RunConfig base = preset("paper-532");
    const auto plans = expand_stages(base);
    double final_single = 0.0, final_repeated = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        final_single += run_simulation(plans[0].config, seed).steps().back().layer_mean[0] / 10.0;
        final_repeated += run_simulation(plans[1].config, seed).steps().back().layer_mean[0] / 10.0;
    }
    c.expect(final_repeated >= final_single, "repeated small doses did not win");
    c.note("repeated " + fmt(final_repeated) + " vs single " + fmt(final_single) +
           " (cross-seed mean of final layer-1 mean)");
}

// ---- criterion 8: employment shock and recovery ------------------------------

void criterion_shock_recovery(Check& c) {
    const RunConfig cfg = preset("paper-533");
    const TimeSeriesLog log = run_simulation(cfg, cfg.engine.seed);
    auto total = [&](std::size_t t) {
        const StepReport& rep = log.steps()[t];
        double sum = 0.0;
        for (double m : rep.layer_mean)
            sum += m * static_cast<double>(rep.agent_count);
        return sum;
    };
    c.expect(total(200) < total(199), "no total-knowledge drop at the removal step (" +
                                          fmt(total(199)) + " -> " + fmt(total(200)) + ")");

    double trough = log.steps()[200].layer_mean[1];
    std::size_t trough_at = 200;
    for (std::size_t t = 200; t < 400; ++t)
        if (log.steps()[t].layer_mean[1] < trough) {
            trough = log.steps()[t].layer_mean[1];
            trough_at = t;
        }
    const double at400 = log.steps()[400].layer_mean[1];
    c.expect(at400 > trough, "layer-2 mean did not recover above its trough");
    c.note("total " + fmt(total(199)) + " -> " + fmt(total(200)) + "; layer-2 trough " +
           fmt(trough) + " @ " + std::to_string(trough_at) + ", at step 400 " + fmt(at400));
}

// ---- criterion 9: byte-identical artifacts -----------------------------------

void criterion_determinism(Check& c) {
    RunConfig cfg = preset("paper-533");
    cfg.output.directory = (work_dir() / "det").string();
    auto snapshot = [&] {
        std::map<std::string, std::string> bytes;
        for (const auto& entry : fs::recursive_directory_iterator(cfg.output.directory)) {
            if (!entry.is_regular_file())
                continue;
            std::ifstream in(entry.path(), std::ios::binary);
            bytes[fs::relative(entry.path(), cfg.output.directory).string()] =
                std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        return bytes;
    };
    run_all(cfg);
    const auto first = snapshot();
    fs::remove_all(cfg.output.directory);
    run_all(cfg);
    const auto second = snapshot();

    c.expect(first.size() == second.size(), "artifact sets differ in size");
    for (const auto& [rel, bytes] : first) {
        auto it = second.find(rel);
        if (it == second.end())
            c.fail("missing counterpart for " + rel);
        else if (it->second != bytes)
            c.fail(rel + " differs between identical runs");
    }
    c.expect(first.size() >= 9, "expected the full artifact set, saw " +
                                    std::to_string(first.size()) + " files");
    c.note(std::to_string(first.size()) + " files byte-identical across two executions");
}

// ---- criterion 10: Watts-Strogatz checks --------------------------------------

void criterion_watts_strogatz(Check& c) {
    for (double p : {0.0, 0.1, 0.5, 1.0})
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            Rng rng(seed);
            LayerTopology g = generate_watts_strogatz(500, 10, p, rng);
            if (g.edge_count() != 2500)
                c.fail("edge count " + std::to_string(g.edge_count()) + " at p=" + fmt(p));
        }

    Rng rng(4);
    LayerTopology ring = generate_watts_strogatz(500, 10, 0.0, rng);
    for (std::size_t u = 0; u < 500; ++u)
        if (std::abs(ring.clustering(u) - 2.0 / 3.0) > 1e-12) {
            c.fail("ring clustering " + fmt(ring.clustering(u)) + " at node " + std::to_string(u));
            break;
        }

    double cc_small = 0.0, cc_random = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng ra(seed), rb(seed + 1000);
        LayerTopology a = generate_watts_strogatz(500, 10, 0.1, ra);
        LayerTopology b = generate_watts_strogatz(500, 10, 1.0, rb);
        for (std::size_t u = 0; u < 500; ++u) {
            cc_small += a.clustering(u);
            cc_random += b.clustering(u);
        }
    }
    cc_small /= 5000.0;
    cc_random /= 5000.0;
    c.expect(cc_small > cc_random, "clustering ordering violated");
    c.note("mean clustering p=0.1: " + fmt(cc_small) + ", p=1.0: " + fmt(cc_random));
}

// ---- criterion 11: performance envelope ---------------------------------------

void criterion_performance(Check& c) {
    const RunConfig base = preset("paper-531");
    const auto plans = expand_stages(base);
    const auto start = std::chrono::steady_clock::now();
    run_simulation(plans[1].config, 1); // symmetric stage, 500 agents x 4 layers x 500 steps
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(seconds < 10.0, "full-scale run took " + fmt(seconds) + " s");
    c.note("full-scale run in " + fmt(seconds) + " s");
}

} // namespace

int main() {
    std::vector<TimeSeriesLog> floor_logs;
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"C1 equation oracles (Eqs. 2,4,5,7,9,11; |err| <= 1e-12)", criterion_equation_oracles},
        {"C2 naive-reference step equivalence (100 configs, <= 1e-12/entry)",
         criterion_reference_equivalence},
        {"C3 floor invariant + competence bounds (20 seeds x 500 steps)",
         [&](Check& c) { criterion_floor_invariant(c, floor_logs); }},
        {"C4 flow-ledger closure in flows.csv (exact at output precision)",
         [&](Check& c) { criterion_flow_ledger(c, floor_logs); }},
        {"C5 vertical diffusion raises every layer (10-seed mean)", criterion_vertical_benefit},
        {"C6 expert injection: peak near t=100, >=20% decline by t=250 (>=8/10 seeds)",
         criterion_expert_injection},
        {"C7 repeated small doses beat one large dose (10-seed mean)", criterion_dosing},
        {"C8 employment shock drops the total, layer 2 recovers", criterion_shock_recovery},
        {"C9 byte-identical CSV/SVG artifacts for equal seeds", criterion_determinism},
        {"C10 Watts-Strogatz edge count, ring clustering 2/3, clustering ordering",
         criterion_watts_strogatz},
        {"C11 full paper-scale run under 10 s", criterion_performance},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            fn(check);
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", seconds);
        std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << name << " (" << timing << ")";
        if (!check.detail.empty())
            std::cout << " — " << check.detail;
        std::cout << '\n';
        if (!check.ok)
            ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << '\n';
    return failures;
}
