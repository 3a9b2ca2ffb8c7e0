#include "electron/adversary.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace electron {

namespace {

std::optional<ManagerView> nearest(Position self, std::span<const ManagerView> managers,
                                   const std::set<DeviceId>& excluded)
{
    std::optional<ManagerView> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& m : managers) {
        if (excluded.contains(m.id))
            continue;
        const double d = distance(self, m.position);
        if (d < best_distance || (d == best_distance && best && m.id < best->id)) {
            best = m;
            best_distance = d;
        }
    }
    return best;
}

AccessRequest make_request(IdentityId identity, DeviceId manager, const Registry& registry,
                           const std::string& context, double now)
{
    return {identity, registry.identity(identity).profile, manager, context, now};
}

} // namespace

std::string_view to_string(Behavior b)
{
    return b == Behavior::Churn ? "churn" : "multi";
}

Behavior parse_behavior(std::string_view text)
{
    if (text == "churn")
        return Behavior::Churn;
    if (text == "multi" || text == "multiple" || text == "multi_identity")
        return Behavior::MultiIdentity;
    throw ConfigError("unknown attacker behavior '" + std::string(text) + "'");
}

IdentitySource parse_attack_source(std::string_view text)
{
    if (text == "stolen")
        return IdentitySource::Stolen;
    if (text == "fabricated")
        return IdentitySource::Fabricated;
    throw ConfigError("unknown identity source '" + std::string(text) + "'");
}

void AttackerProfile::validate() const
{
    if (identity_source == IdentitySource::Native)
        throw ConfigError("attacker identities must be stolen or fabricated");
    if (pool_size < 1)
        throw ConfigError("pool_size must be at least 1");
    if (behavior == Behavior::MultiIdentity && pool_size < 2)
        throw ConfigError("multiple-identity attackers need pool_size >= 2");
    if (!(attempt_interval > 0.0))
        throw ConfigError("attempt_interval must be positive");
    if (!(speed_factor > 0.0))
        throw ConfigError("speed_factor must be positive");
    if (!(idle_fraction >= 0.0 && idle_fraction < 1.0))
        throw ConfigError("idle_fraction must lie in [0,1)");
}

SybilAttacker::SybilAttacker(DeviceId device, AttackerProfile profile)
    : device_(device), profile_(std::move(profile))
{
    profile_.validate();
}

void SybilAttacker::add_to_pool(IdentityId id)
{
    auto& pool = profile_.identity_pool;
    if (std::find(pool.begin(), pool.end(), id) == pool.end())
        pool.push_back(id);
}

std::optional<IdentityId> SybilAttacker::steal_identity(Registry& registry, const Device& victim,
                                                        Position self, Position victim_position,
                                                        double radius)
{
    if (victim.id == device_ || distance(self, victim_position) > radius)
        return std::nullopt;
    const IdentityId id = registry.native_identity(victim.id);
    registry.record_theft(device_, id);
    add_to_pool(id);
    return id;
}

IdentityId SybilAttacker::fabricate_identity(Registry& registry, SocialProfile forged)
{
    const IdentityId id = registry.fabricate(device_, std::move(forged));
    add_to_pool(id);
    return id;
}

std::vector<AccessRequest> SybilAttacker::churn_step(double now, Position self,
                                                     std::span<const ManagerView> managers,
                                                     const Registry& registry,
                                                     const std::string& context,
                                                     const IdentitySupplier& next_identity)
{
    if (managers.empty() || now < next_attempt_)
        return {};

    const bool exhausted = !nearest(self, managers, attempted_).has_value();
    if (!active_ || exhausted || deny_streak_ >= profile_.deny_streak_limit) {
        auto fresh = next_identity ? next_identity() : std::nullopt;
        if (!fresh)
            return {};
        add_to_pool(*fresh);
        active_ = fresh;
        attempted_.clear();
        deny_streak_ = 0;
    }

    const auto target = nearest(self, managers, attempted_);
    attempted_.insert(target->id);
    next_attempt_ = now + profile_.attempt_interval;
    return {make_request(*active_, target->id, registry, context, now)};
}

std::size_t SybilAttacker::usable_identities() const
{
    const double share = static_cast<double>(profile_.pool_size) * (1.0 - profile_.idle_fraction);
    const auto allowed = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(share + 1e-9)));
    return std::min(allowed, profile_.identity_pool.size());
}

std::vector<AccessRequest> SybilAttacker::multi_identity_step(double now, Position self,
                                                              std::span<const ManagerView> managers,
                                                              const Registry& registry,
                                                              const std::string& context,
                                                              const MembershipProbe& is_member)
{
    const std::size_t usable = usable_identities();
    if (managers.empty() || usable == 0 || now < next_attempt_)
        return {};

    for (std::size_t tried = 0; tried < usable; ++tried) {
        const IdentityId id = profile_.identity_pool[round_robin_ % usable];
        round_robin_ = (round_robin_ + 1) % usable;
        if (is_member && is_member(id))
            continue;
        const auto target = nearest(self, managers, {});
        active_ = id;
        next_attempt_ = now + profile_.attempt_interval;
        return {make_request(id, target->id, registry, context, now)};
    }
    return {};
}

void SybilAttacker::observe_decision(IdentityId identity, Verdict verdict)
{
    if (active_ && identity != *active_)
        return;
    deny_streak_ = verdict == Verdict::Deny ? deny_streak_ + 1 : 0;
}

void SybilAttacker::switch_behavior(Behavior behavior)
{
    profile_.behavior = behavior;
    if (behavior == Behavior::MultiIdentity)
        profile_.pool_size = std::max<std::size_t>(profile_.pool_size, 2);
    attempted_.clear();
    deny_streak_ = 0;
    round_robin_ = 0;
}

double SybilAttacker::speed(double base_speed) const
{
    return profile_.behavior == Behavior::MultiIdentity ? base_speed * profile_.speed_factor
                                                        : base_speed;
}

} // namespace electron
