#ifndef ELECTRON_ADVERSARY_HPP
#define ELECTRON_ADVERSARY_HPP

#include "electron/authn.hpp"
#include "electron/ids.hpp"
#include "electron/social.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace electron {

enum class Behavior { Churn, MultiIdentity };

std::string_view to_string(Behavior b);
Behavior parse_behavior(std::string_view text);
/// "stolen" or "fabricated"; throws ConfigError otherwise.
IdentitySource parse_attack_source(std::string_view text);

struct AttackerProfile {
    Behavior behavior{Behavior::Churn};
    IdentitySource identity_source{IdentitySource::Stolen};
    std::vector<IdentityId> identity_pool;
    std::size_t pool_size{1};
    double attempt_interval{5.0};
    double speed_factor{1.0};
    std::size_t deny_streak_limit{3};
    /// Share of the pool kept idle by the multiple-identity behavior.
    double idle_fraction{0.0};

    void validate() const;
};

struct ManagerView {
    DeviceId id;
    Position position;
};

/// One Sybil attacker device. Pure step functions; the event loop owns time
/// and the registry.
class SybilAttacker {
public:
    using IdentitySupplier = std::function<std::optional<IdentityId>()>;
    using MembershipProbe = std::function<bool(IdentityId)>;

    SybilAttacker(DeviceId device, AttackerProfile profile);

    DeviceId device() const { return device_; }
    const AttackerProfile& profile() const { return profile_; }
    const std::vector<IdentityId>& pool() const { return profile_.identity_pool; }

    /// Copies the victim's identity (with its friend and interest lists) when
    /// the victim lies within `radius`; nullopt otherwise. Repeat thefts of the
    /// same victim leave the pool unchanged.
    std::optional<IdentityId> steal_identity(Registry& registry, const Device& victim,
                                             Position self, Position victim_position,
                                             double radius);

    IdentityId fabricate_identity(Registry& registry, SocialProfile forged);

    /// One request every attempt_interval to the nearest Manager not yet tried
    /// with the active identity. Rotates identity (via `next_identity`) after
    /// exhausting managers or after deny_streak_limit consecutive denials.
    std::vector<AccessRequest> churn_step(double now, Position self,
                                          std::span<const ManagerView> managers,
                                          const Registry& registry, const std::string& context,
                                          const IdentitySupplier& next_identity);

    /// Round-robin over the non-idle part of the pool, one request per
    /// attempt_interval to the nearest Manager. Identities for which
    /// `is_member` holds are skipped.
    std::vector<AccessRequest> multi_identity_step(double now, Position self,
                                                   std::span<const ManagerView> managers,
                                                   const Registry& registry,
                                                   const std::string& context,
                                                   const MembershipProbe& is_member);

    void observe_decision(IdentityId identity, Verdict verdict);

    /// Keeps the pool; resets behavior-specific schedule state.
    void switch_behavior(Behavior behavior);

    std::optional<IdentityId> active_identity() const { return active_; }
    /// Number of pool identities the multiple-identity behavior may use.
    std::size_t usable_identities() const;
    double speed(double base_speed) const;

private:
    void add_to_pool(IdentityId id);

    DeviceId device_;
    AttackerProfile profile_;
    std::optional<IdentityId> active_;
    std::set<DeviceId> attempted_;
    std::size_t deny_streak_{0};
    std::size_t round_robin_{0};
    double next_attempt_{0.0};
};

} // namespace electron

#endif // ELECTRON_ADVERSARY_HPP
