#include <electron/error.hpp>
#include <electron/io.hpp>
#include <electron/sim.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace electron;

namespace {

std::string read_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fill)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    fill(out);
    if (!out)
        throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

struct SeedOutput {
    std::uint64_t seed{};
    RunResult result;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sybil detection scenarios over a simulated SIoT network"};

    std::string config_path;
    std::size_t nodes = 0;
    double attacker_pct = 0.0;
    std::string behavior, identity, context, relation, friends, roster;
    std::uint64_t seed = 1;
    std::size_t seeds = 1;
    double duration = 0.0;
    std::string out_dir = "out";
    bool quiet = false;

    app.add_option("--config", config_path, "JSON config or run manifest to start from")->check(CLI::ExistingFile);
    auto* o_nodes = app.add_option("--nodes", nodes, "Device count")->check(CLI::PositiveNumber);
    auto* o_pct = app.add_option("--attacker-pct", attacker_pct, "Share of attacker devices in [0,1)");
    auto* o_behavior =
        app.add_option("--behavior", behavior, "Attacker behavior")->check(CLI::IsMember({"churn", "multi"}));
    auto* o_identity = app.add_option("--identity", identity, "Identity source")
                           ->check(CLI::IsMember({"stolen", "fabricated"}));
    auto* o_context = app.add_option("--context", context, "Context kind (residence, office, school, gym, park)");
    auto* o_relation = app.add_option("--relation", relation, "Relation filter for recommendations")
                           ->check(CLI::IsMember({"por", "oor", "clor", "cwor", "sor"}, CLI::ignore_case));
    auto* o_seed = app.add_option("--seed", seed, "First seed");
    auto* o_seeds = app.add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
    auto* o_duration = app.add_option("--duration", duration, "Simulated seconds");
    auto* o_friends = app.add_option("--friends", friends, "Friendship edge list")->check(CLI::ExistingFile);
    auto* o_roster = app.add_option("--roster", roster, "Device roster")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("-q,--quiet", quiet, "Suppress the per-seed summary");

    CLI11_PARSE(app, argc, argv);

    try {
        RunManifest manifest;
        if (!config_path.empty())
            manifest = manifest_from_json(read_file(config_path));
        ScenarioConfig& cfg = manifest.config;

        if (o_nodes->count())
            cfg.node_count = nodes;
        if (o_pct->count())
            cfg.attacker_fraction = attacker_pct;
        if (o_behavior->count())
            cfg.behavior = parse_behavior(behavior);
        if (o_identity->count())
            cfg.identity_source = parse_attack_source(identity);
        if (o_context->count())
            cfg.context = context;
        if (o_relation->count())
            cfg.relation_filter = parse_relation(relation);
        if (o_duration->count())
            cfg.duration = duration;
        if (o_friends->count())
            cfg.friends_path = friends;
        if (o_roster->count())
            cfg.roster_path = roster;

        if (o_seed->count() || o_seeds->count() || manifest.seeds.empty()) {
            if (!o_seed->count() && !manifest.seeds.empty())
                seed = manifest.seeds.front();
            manifest.seeds.clear();
            for (std::size_t k = 0; k < seeds; ++k)
                manifest.seeds.push_back(seed + k);
        }
        cfg.rng_seed = manifest.seeds.front();
        cfg.validate();

        std::optional<FriendshipGraph> graph;
        if (!cfg.friends_path.empty())
            graph = load_friendship_edges(cfg.friends_path);
        std::vector<RosterEntry> entries;
        if (!cfg.roster_path.empty())
            entries = load_roster(cfg.roster_path);
        if (!entries.empty())
            cfg.node_count = entries.size();

        std::vector<std::future<SeedOutput>> jobs;
        for (std::uint64_t s : manifest.seeds) {
            ScenarioConfig run_cfg = cfg;
            run_cfg.rng_seed = s;
            jobs.push_back(std::async(std::launch::async, [run_cfg, s, &graph, &entries] {
                return SeedOutput{s, run_scenario(run_cfg, graph ? &*graph : nullptr, entries)};
            }));
        }

        const fs::path dir(out_dir);
        fs::create_directories(dir);
        std::vector<SeedOutput> runs;
        for (auto& job : jobs)
            runs.push_back(job.get());

        write_file(dir / "metrics.csv", [&](std::ostream& os) {
            write_metrics_header(os);
            for (const auto& r : runs)
                write_metrics_row(os, cfg, r.seed, r.result.metrics);
        });
        for (const auto& r : runs) {
            const auto stem = fmt::format("seed{}", r.seed);
            write_file(dir / fmt::format("esr_{}.csv", stem),
                       [&](std::ostream& os) { write_esr_csv(os, r.result.metrics); });
            write_file(dir / fmt::format("decisions_{}.csv", stem),
                       [&](std::ostream& os) { write_decision_csv(os, r.result.decisions); });
            write_file(dir / fmt::format("trust_{}.csv", stem),
                       [&](std::ostream& os) { write_trust_csv(os, r.result.trust); });
            write_file(dir / fmt::format("attacks_{}.csv", stem),
                       [&](std::ostream& os) { write_attack_csv(os, r.result.attacks); });
            write_file(dir / fmt::format("communities_{}.csv", stem),
                       [&](std::ostream& os) { write_community_csv(os, r.result.communities); });
            write_file(dir / fmt::format("events_{}.log", stem), [&](std::ostream& os) { r.result.log.write(os); });
        }
        std::vector<MetricsReport> reports;
        for (const auto& r : runs)
            reports.push_back(r.result.metrics);
        const auto summary = summarize_metrics(reports);
        write_file(dir / "summary.csv", [&](std::ostream& os) { write_summary_csv(os, summary); });
        write_file(dir / "manifest.json", [&](std::ostream& os) { os << manifest_to_json(manifest); });

        if (!quiet) {
            for (const auto& r : runs) {
                const auto& m = r.result.metrics;
                std::cout << fmt::format("seed {}: attackers={} managers={} decisions={} DR={} ACC={} FN={} FP={}\n",
                                         r.seed, r.result.attacker_count, r.result.manager_count,
                                         r.result.decisions.size(), format_metric(m.dr), format_metric(m.acc),
                                         format_metric(m.fn), format_metric(m.fp));
            }
            if (runs.size() > 1)
                for (const auto& s : summary)
                    std::cout << fmt::format("{}: mean={} ci95=+/-{} over {} runs\n", s.metric, format_metric(s.mean),
                                             format_metric(s.ci95_half), s.runs);
        }
    } catch (const ParseError& e) {
        std::cerr << "electron: parse error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "electron: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "electron: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
