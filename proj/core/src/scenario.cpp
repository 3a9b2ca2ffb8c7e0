#include "electron/error.hpp"
#include "electron/io.hpp"
#include "electron/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <unordered_map>

namespace electron {

namespace {

void require(bool ok, const char* message)
{
    if (!ok)
        throw ConfigError(message);
}

bool is_probability(double p)
{
    return p >= 0.0 && p <= 1.0;
}

/// Picks ceil(fraction * size) members of every community as Managers.
std::vector<std::size_t> choose_managers(const std::vector<Community>& communities, double fraction,
                                         Engine& rng)
{
    std::vector<std::size_t> out;
    for (const auto& c : communities) {
        std::vector<std::size_t> members;
        for (DeviceId d : c.members)
            members.push_back(d.value);
        const auto wanted = static_cast<std::size_t>(
            std::ceil(fraction * static_cast<double>(members.size()) - 1e-9));
        for (std::size_t k = 0; k < wanted && k < members.size(); ++k) {
            const auto pick = k + uniform_index(rng, members.size() - k);
            std::swap(members[k], members[pick]);
            out.push_back(members[k]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

void ScenarioConfig::validate() const
{
    require(node_count >= 2, "node_count must be at least 2");
    require(attacker_fraction >= 0.0 && attacker_fraction < 1.0, "attacker_fraction must lie in [0,1)");
    require(width > 0.0 && height > 0.0, "area dimensions must be positive");
    require(speed >= 0.0, "speed must be non-negative");
    require(duration >= 0.0, "duration must be non-negative");
    require(similarity_threshold >= 0.0 && similarity_threshold < 1.0,
            "similarity_threshold must lie in [0,1)");
    weights.validate();
    require(is_probability(trust_threshold), "trust_threshold must lie in [0,1]");
    require(interaction_radius > 0.0, "interaction_radius must be positive");
    require(interaction_period > 0.0, "interaction_period must be positive");
    require(is_probability(p_positive_legit), "p_positive_legit must lie in [0,1]");
    require(is_probability(p_negative_attacker), "p_negative_attacker must lie in [0,1]");
    require(epoch_interval > 0.0, "epoch_interval must be positive");
    require(time_step > 0.0, "time_step must be positive");
    require(manager_fraction > 0.0 && manager_fraction <= 1.0, "manager_fraction must lie in (0,1]");
    require(eavesdrop_radius >= 0.0, "eavesdrop_radius must be non-negative");
    require(deny_retry_cooldown >= 0.0, "deny_retry_cooldown must be non-negative");
    require(social.group_size >= 1, "social.group_size must be at least 1");
    require(is_probability(social.rewire_prob), "social.rewire_prob must lie in [0,1]");
    require(social.owner_size >= 1 && social.batches >= 1 && social.work_groups >= 1,
            "social attribute pools must be non-empty");
    require(social.context_interests <= social.context_topic_pool,
            "social.context_interests cannot exceed social.context_topic_pool");
    for (const auto& [name, a] : base_rates)
        require(is_probability(a), "base rates must lie in [0,1]");
    (void)base_rate(); // unknown context throws

    AttackerProfile probe;
    probe.behavior = behavior;
    probe.identity_source = identity_source;
    probe.pool_size = behavior == Behavior::MultiIdentity ? pool_size : 1;
    probe.attempt_interval = attempt_interval;
    probe.speed_factor = speed_factor;
    probe.deny_streak_limit = deny_streak_limit;
    probe.idle_fraction = idle_fraction;
    probe.validate();

    require(attacker_count() < node_count, "at least one legitimate device is required");
}

std::size_t ScenarioConfig::attacker_count() const
{
    return static_cast<std::size_t>(std::llround(static_cast<double>(node_count) * attacker_fraction));
}

ContextTable ScenarioConfig::context_table() const
{
    ContextTable table;
    for (const auto& [name, a] : base_rates)
        table.set_base_rate(name, a);
    return table;
}

Population build_population(const ScenarioConfig& cfg, Engine& rng, const FriendshipGraph* friends,
                            std::span<const RosterEntry> roster)
{
    const std::size_t n = roster.empty() ? cfg.node_count : roster.size();
    const std::size_t attackers = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * cfg.attacker_fraction));
    if (attackers >= n)
        throw ConfigError("at least one legitimate device is required");
    const std::size_t legit = n - attackers;
    const Area area{cfg.width, cfg.height};

    // Which slots are attackers: the tail for synthetic worlds, random
    // subordinates for rosters.
    std::vector<bool> attacker_slot(n, false);
    if (roster.empty()) {
        for (std::size_t k = legit; k < n; ++k)
            attacker_slot[k] = true;
    } else {
        std::vector<std::size_t> subs;
        for (std::size_t k = 0; k < n; ++k)
            if (roster[k].cls == DeviceClass::Subordinate)
                subs.push_back(k);
        if (subs.size() < attackers)
            throw ConfigError("roster has fewer subordinates than requested attackers");
        for (std::size_t k = 0; k < attackers; ++k) {
            const auto pick = k + uniform_index(rng, subs.size() - k);
            std::swap(subs[k], subs[pick]);
            attacker_slot[subs[k]] = true;
        }
    }
    std::vector<std::size_t> legit_slots;
    for (std::size_t k = 0; k < n; ++k)
        if (!attacker_slot[k])
            legit_slots.push_back(k);

    // Friendship: graph node i <-> i-th legitimate slot.
    FriendshipGraph graph;
    if (friends != nullptr && !roster.empty()) {
        std::unordered_map<std::string, std::size_t> by_token;
        for (std::size_t i = 0; i < legit_slots.size(); ++i)
            by_token.emplace(roster[legit_slots[i]].device, i);
        for (std::size_t i = 0; i < legit_slots.size(); ++i)
            graph.nodes.push_back(i);
        for (const auto& [u, v] : friends->edges) {
            auto iu = by_token.find(std::to_string(u));
            auto iv = by_token.find(std::to_string(v));
            if (iu != by_token.end() && iv != by_token.end() && iu->second != iv->second)
                graph.edges.emplace_back(std::min(iu->second, iv->second), std::max(iu->second, iv->second));
        }
        std::sort(graph.edges.begin(), graph.edges.end());
        graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    } else if (friends != nullptr) {
        if (friends->node_count() < legit)
            throw ConfigError("friendship graph has fewer nodes than legitimate devices");
        graph = sample_subgraph(*friends, legit, rng);
    } else {
        graph = small_world_graph(legit, cfg.social.group_size, cfg.social.rewire_prob, rng);
    }
    const auto adjacency = graph.adjacency();

    std::vector<Device> devices(n);
    const auto& sm = cfg.social;
    for (std::size_t i = 0; i < legit_slots.size(); ++i) {
        const std::size_t slot = legit_slots[i];
        Device& d = devices[slot];
        d.id = DeviceId{static_cast<std::uint32_t>(slot)};
        for (std::size_t nb : adjacency[i])
            d.profile.friends.insert(DeviceId{static_cast<std::uint32_t>(legit_slots[nb])});

        const std::size_t group = i / sm.group_size;
        for (std::size_t t = 0; t < sm.group_interests; ++t)
            d.profile.interests.insert(fmt::format("topic-{}", group * sm.group_interests + t));
        std::vector<std::size_t> pool(sm.context_topic_pool);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t t = 0; t < sm.context_interests; ++t) {
            const auto pick = t + uniform_index(rng, pool.size() - t);
            std::swap(pool[t], pool[pick]);
            d.profile.interests.insert(fmt::format("{}-{}", cfg.context, pool[t]));
        }

        if (roster.empty()) {
            d.owner = fmt::format("owner-{}", i / sm.owner_size);
            d.batch = fmt::format("batch-{}", uniform_index(rng, sm.batches));
            d.home_place = fmt::format("place-{}", group);
            d.work_group = fmt::format("work-{}", uniform_index(rng, sm.work_groups));
            d.position = random_point(area, rng);
        } else {
            const auto& e = roster[slot];
            d.owner = e.owner;
            d.batch = e.batch;
            d.home_place = e.home;
            d.work_group = e.work;
            d.position = {std::clamp(e.position.x, 0.0, area.width), std::clamp(e.position.y, 0.0, area.height)};
        }
        d.speed = cfg.speed;
    }
    for (std::size_t slot = 0; slot < n; ++slot) {
        if (!attacker_slot[slot])
            continue;
        Device& d = devices[slot];
        d.id = DeviceId{static_cast<std::uint32_t>(slot)};
        d.cls = DeviceClass::Subordinate;
        d.owner = fmt::format("rogue-{}", slot);
        d.batch = roster.empty() ? "rogue" : roster[slot].batch;
        d.position = roster.empty() ? random_point(area, rng)
                                    : Position{std::clamp(roster[slot].position.x, 0.0, area.width),
                                               std::clamp(roster[slot].position.y, 0.0, area.height)};
        d.speed = cfg.speed;
    }

    // Manager/Subordinate split.
    if (roster.empty()) {
        std::vector<Device> legit_devices;
        for (std::size_t slot : legit_slots)
            legit_devices.push_back(devices[slot]);
        const auto initial = form_communities(legit_devices, cfg.weights, cfg.similarity_threshold, cfg.context);
        for (std::size_t slot : choose_managers(initial, cfg.manager_fraction, rng))
            devices[slot].cls = DeviceClass::Manager;
    } else {
        bool any = false;
        for (std::size_t slot : legit_slots) {
            devices[slot].cls = roster[slot].cls;
            any = any || roster[slot].cls == DeviceClass::Manager;
        }
        if (!any)
            throw ConfigError("roster declares no manager devices");
    }

    Population pop;
    pop.is_attacker = attacker_slot;
    for (auto& d : devices) {
        const DeviceId id = pop.registry.add_device(d);
        if (d.cls == DeviceClass::Manager)
            pop.managers.push_back(id);
        if (attacker_slot[id.value])
            pop.attackers.push_back(id);
        pop.nodes.push_back({d.position, random_point(area, rng), d.speed});
    }
    return pop;
}

} // namespace electron
