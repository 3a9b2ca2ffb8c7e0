#include "electron/sim.hpp"

#include <algorithm>
#include <map>

namespace electron {

std::uint64_t InteractionClock::key(std::uint64_t a, std::uint64_t b)
{
    if (a > b)
        std::swap(a, b);
    return (a << 32) | (b & 0xffffffffULL);
}

bool InteractionClock::due(std::size_t a, std::size_t b, double now, double period) const
{
    auto it = last_.find(key(a, b));
    return it == last_.end() || now - it->second >= period;
}

void InteractionClock::mark(std::size_t a, std::size_t b, double now)
{
    last_[key(a, b)] = now;
}

namespace {

Outcome draw_outcome(bool subject_is_attacker, const InteractionParams& params, Engine& rng)
{
    if (subject_is_attacker)
        return bernoulli(rng, params.p_negative_attacker) ? Outcome::Negative : Outcome::Positive;
    return bernoulli(rng, params.p_positive_legit) ? Outcome::Positive : Outcome::Negative;
}

} // namespace

std::vector<Experience> generate_interactions(std::span<const Presence> presences,
                                              const InteractionParams& params, double now,
                                              InteractionClock& clock,
                                              const std::function<std::size_t(const Presence&)>& slot_of,
                                              Engine& rng)
{
    std::vector<Experience> out;
    for (std::size_t i = 0; i < presences.size(); ++i) {
        const auto& a = presences[i];
        for (std::size_t j = i + 1; j < presences.size(); ++j) {
            const auto& b = presences[j];
            if (a.device == b.device || distance(a.position, b.position) > params.radius)
                continue;
            const auto sa = slot_of(a);
            const auto sb = slot_of(b);
            if (!clock.due(sa, sb, now, params.period))
                continue;
            clock.mark(sa, sb, now);
            if (!a.attacker)
                out.push_back({a.device, b.identity, b.device, b.manager,
                               draw_outcome(b.attacker, params, rng), false});
            if (!b.attacker)
                out.push_back({b.device, a.identity, a.device, a.manager,
                               draw_outcome(a.attacker, params, rng), false});
        }
    }
    return out;
}

std::vector<Experience> detect_duplicate_identities(std::span<const Presence> presences)
{
    std::map<IdentityId, std::vector<const Presence*>> by_identity;
    for (const auto& p : presences)
        by_identity[p.identity].push_back(&p);

    std::vector<Experience> out;
    for (const auto& [identity, group] : by_identity) {
        bool duplicated = false;
        for (std::size_t i = 0; i < group.size() && !duplicated; ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j)
                if (group[i]->device != group[j]->device && !(group[i]->position == group[j]->position)) {
                    duplicated = true;
                    break;
                }
        if (!duplicated)
            continue;
        for (const Presence* p : group)
            out.push_back({p->manager, identity, p->device, p->manager, Outcome::Negative, true});
    }
    return out;
}

std::size_t exchange_recommendations(std::span<const DeviceId> managers, const Registry& registry,
                                     const OpinionStore& opinions, RecommendationCache& cache)
{
    std::size_t stored = 0;
    for (DeviceId sender : managers) {
        const auto held = opinions.opinions_of(sender);
        if (held.empty())
            continue;
        for (DeviceId receiver : managers) {
            if (receiver == sender)
                continue;
            const auto relation = classify_relation(registry.device(receiver), registry.device(sender));
            for (const auto& [subject, op] : held) {
                cache.store(receiver, subject, {sender, relation.type, expected_value(op)});
                ++stored;
            }
        }
    }
    return stored;
}

} // namespace electron
