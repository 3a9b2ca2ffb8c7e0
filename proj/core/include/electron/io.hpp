#ifndef ELECTRON_IO_HPP
#define ELECTRON_IO_HPP

#include "electron/community.hpp"
#include "electron/metrics.hpp"
#include "electron/rng.hpp"
#include "electron/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace electron {

using ExternalId = std::uint64_t;

/// Undirected friendship graph over external user ids. Edges are stored once
/// as (low, high), sorted.
struct FriendshipGraph {
    /// Sorted for loaded graphs; sample order for sampled ones.
    std::vector<ExternalId> nodes;
    std::vector<std::pair<ExternalId, ExternalId>> edges;
    std::size_t self_loops_dropped{0};

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
    bool has_edge(ExternalId a, ExternalId b) const;
    /// Adjacency lists indexed like `nodes`.
    std::vector<std::vector<std::size_t>> adjacency() const;
};

/// Whitespace-separated id pairs, one per line; '#' lines ignored. Duplicate
/// and reversed edges collapse; self-loops are dropped and counted.
FriendshipGraph parse_friendship_edges(std::istream& in);
FriendshipGraph load_friendship_edges(const std::filesystem::path& path);

/// Seeded breadth-first sample of n nodes (restarting from a fresh random
/// node when a component runs out) with the induced edges.
FriendshipGraph sample_subgraph(const FriendshipGraph& g, std::size_t n, Engine& rng);

/// Relaxed caveman small world: cliques of `group_size`, each edge rewired to
/// a random endpoint with probability `rewire_prob`. Node ids are 0..n-1.
FriendshipGraph small_world_graph(std::size_t n, std::size_t group_size, double rewire_prob, Engine& rng);

struct RosterEntry {
    std::string device;
    DeviceClass cls{DeviceClass::Subordinate};
    std::string owner;
    std::string batch;
    std::optional<std::string> home;
    std::optional<std::string> work;
    Position position;
};

/// `device_id class owner batch home work x y` per line; '-' marks an absent
/// home or work token.
std::vector<RosterEntry> parse_roster(std::istream& in);
std::vector<RosterEntry> load_roster(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// CSV output (header row, RFC-4180 quoting, '\n' endings)

std::string csv_field(std::string_view text);
/// Fixed six-decimal rendering; empty values render as N/A.
std::string format_metric(std::optional<double> v);

void write_metrics_header(std::ostream& os);
void write_metrics_row(std::ostream& os, const ScenarioConfig& cfg, std::uint64_t seed,
                       const MetricsReport& report);
/// Across-seed statistics for one metric over the runs where it is defined.
struct MetricSummary {
    std::string metric;
    std::size_t runs{0};
    std::optional<double> mean;
    std::optional<double> stddev;       // sample standard deviation, needs two runs
    std::optional<double> ci95_half;    // normal approximation
};

std::vector<MetricSummary> summarize_metrics(std::span<const MetricsReport> reports);
void write_summary_csv(std::ostream& os, std::span<const MetricSummary> summary);

void write_esr_csv(std::ostream& os, const MetricsReport& report);
void write_decision_csv(std::ostream& os, std::span<const DecisionRecord> decisions);
void write_trust_csv(std::ostream& os, std::span<const TrustSample> samples);
void write_attack_csv(std::ostream& os, std::span<const AttackRecord> attacks);
void write_community_csv(std::ostream& os, std::span<const Community> communities);

// ---------------------------------------------------------------------------
// Configuration documents (JSON)

std::string config_to_json(const ScenarioConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig config_from_json(std::string_view text);

struct RunManifest {
    ScenarioConfig config;
    std::vector<std::uint64_t> seeds;
};

std::string manifest_to_json(const RunManifest& manifest);
/// Accepts a manifest ({"config":..., "seeds":[...]}) or a bare config.
RunManifest manifest_from_json(std::string_view text);

} // namespace electron

#endif // ELECTRON_IO_HPP
