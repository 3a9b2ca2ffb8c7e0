#ifndef ELECTRON_SIM_HPP
#define ELECTRON_SIM_HPP

#include "electron/adversary.hpp"
#include "electron/authn.hpp"
#include "electron/community.hpp"
#include "electron/metrics.hpp"
#include "electron/rng.hpp"
#include "electron/social.hpp"
#include "electron/trust.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace electron {

struct FriendshipGraph;
struct RosterEntry;

/// Parameters of the synthetic social world: the relaxed-caveman friendship
/// fallback and the attribute generators behind relation classification.
struct SocialModel {
    std::size_t group_size{10};
    double rewire_prob{0.1};
    std::size_t owner_size{2};
    std::size_t batches{6};
    std::size_t work_groups{4};
    std::size_t group_interests{1};
    std::size_t context_interests{2};
    std::size_t context_topic_pool{3};
};

struct ScenarioConfig {
    std::string name{"default"};
    std::size_t node_count{100};
    double attacker_fraction{0.10};
    double width{100.0};
    double height{100.0};
    double speed{2.0};
    double duration{600.0};
    std::string context{"school"};
    std::map<std::string, double> base_rates;
    RelationType relation_filter{RelationType::SOR};
    double similarity_threshold{0.5};
    SimilarityWeights weights{};
    double trust_threshold{0.6};
    double interaction_radius{15.0};
    double interaction_period{10.0};
    double p_positive_legit{0.95};
    double p_negative_attacker{0.8};
    std::uint64_t rng_seed{1};
    double epoch_interval{30.0};
    double time_step{1.0};
    double manager_fraction{0.2};

    Behavior behavior{Behavior::Churn};
    IdentitySource identity_source{IdentitySource::Stolen};
    std::size_t pool_size{3};
    double attempt_interval{5.0};
    double speed_factor{0.5};
    std::size_t deny_streak_limit{3};
    double idle_fraction{0.0};
    /// Zero means "same as interaction_radius".
    double eavesdrop_radius{0.0};
    std::size_t forged_set_size{3};
    double deny_retry_cooldown{0.0};

    SocialModel social{};
    std::string friends_path;
    std::string roster_path;

    /// Throws ConfigError on the first invalid field.
    void validate() const;
    std::size_t attacker_count() const;
    ContextTable context_table() const;
    double base_rate() const { return context_table().base_rate_of(context); }
    double theft_radius() const { return eavesdrop_radius > 0.0 ? eavesdrop_radius : interaction_radius; }
};

// ---------------------------------------------------------------------------
// Event log

enum class EventKind {
    Found,
    Community,
    Move,
    Theft,
    Fabricate,
    Request,
    Decision,
    Admit,
    Conflict,
    Revoke,
    Interaction,
    Experience,
    Exchange,
};

std::string_view to_string(EventKind k);

struct Event {
    double time{};
    EventKind kind{};
    std::string detail;
};

/// Append-only, timestamp-ordered trace of one run.
class EventLog {
public:
    /// Throws ContractViolation if `time` precedes the last event.
    void append(double time, EventKind kind, std::string detail);

    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    std::size_t count(EventKind kind) const;

    /// One line per event: "<time> <kind> <detail>\n" with time fixed to 3 decimals.
    void write(std::ostream& os) const;
    std::string str() const;

private:
    std::vector<Event> events_;
};

// ---------------------------------------------------------------------------
// Mobility

struct Area {
    double width{100.0};
    double height{100.0};

    bool contains(Position p) const { return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height; }
};

struct MobileNode {
    Position position;
    Position waypoint;
    double speed{2.0};
};

Position random_point(const Area& area, Engine& rng);

/// Random waypoint with zero pause: move toward the waypoint; on arrival
/// (within one step's travel) snap onto it and draw the next waypoint.
Position step_mobility(MobileNode& node, double dt, const Area& area, Engine& rng);

// ---------------------------------------------------------------------------
// Interactions and recommendation exchange

/// An admitted (identity, device) pair visible to interaction generation.
struct Presence {
    IdentityId identity;
    DeviceId device;
    DeviceId manager;
    Position position;
    bool attacker{false};
};

struct Experience {
    DeviceId observer;
    IdentityId subject;
    DeviceId subject_device;
    /// Opinion owner: the manager responsible for the observed presence.
    DeviceId evaluator;
    Outcome outcome{Outcome::Positive};
    bool forced{false};
};

struct InteractionParams {
    double radius{15.0};
    double period{10.0};
    double p_positive_legit{0.95};
    double p_negative_attacker{0.8};
};

/// Last interaction time per unordered pair of presences.
class InteractionClock {
public:
    bool due(std::size_t a, std::size_t b, double now, double period) const;
    void mark(std::size_t a, std::size_t b, double now);

private:
    static std::uint64_t key(std::uint64_t a, std::uint64_t b);
    std::unordered_map<std::uint64_t, double> last_;
};

/// Service interactions for every due pair of presences within radius, one
/// experience per direction. Attackers observe but never report.
std::vector<Experience> generate_interactions(std::span<const Presence> presences,
                                              const InteractionParams& params, double now,
                                              InteractionClock& clock,
                                              const std::function<std::size_t(const Presence&)>& slot_of,
                                              Engine& rng);

/// Every identity presented by two different devices at distinct positions
/// yields one forced negative per presenter.
std::vector<Experience> detect_duplicate_identities(std::span<const Presence> presences);

/// Each Manager shares the expected value of every opinion it holds with
/// every other Manager; receivers tag entries with their relation to the sender.
std::size_t exchange_recommendations(std::span<const DeviceId> managers, const Registry& registry,
                                     const OpinionStore& opinions, RecommendationCache& cache);

// ---------------------------------------------------------------------------
// Scenario

struct AttackRecord {
    double time{};
    DeviceId attacker;
    IdentityId identity;
    IdentitySource source{IdentitySource::Stolen};
    Behavior behavior{Behavior::Churn};
    DeviceId target_manager;
};

struct Population {
    Registry registry;
    std::vector<DeviceId> managers;
    std::vector<DeviceId> attackers;
    std::vector<bool> is_attacker;
    std::vector<MobileNode> nodes;
};

/// Devices, friendship sets, interests, relation attributes, initial positions
/// and the Manager/attacker split for one seeded run.
Population build_population(const ScenarioConfig& cfg, Engine& rng,
                            const FriendshipGraph* friends = nullptr,
                            std::span<const RosterEntry> roster = {});

struct RunResult {
    EventLog log;
    std::vector<DecisionRecord> decisions;
    std::vector<TrustSample> trust;
    std::vector<AttackRecord> attacks;
    std::vector<Community> communities;
    ConfusionCounters counters;
    MetricsReport metrics;
    std::uint64_t experiences{0};
    std::uint64_t opinion_increments{0};
    std::size_t manager_count{0};
    std::size_t attacker_count{0};
    std::size_t max_churn_in_flight{0};
    bool positions_in_area{true};
};

/// Runs the event loop to cfg.duration. Equal (cfg, seed) gives an identical log.
RunResult run_scenario(const ScenarioConfig& cfg, const FriendshipGraph* friends = nullptr,
                       std::span<const RosterEntry> roster = {});

} // namespace electron

#endif // ELECTRON_SIM_HPP
