#ifndef ELECTRON_SOCIAL_HPP
#define ELECTRON_SOCIAL_HPP

#include "electron/ids.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace electron {

enum class DeviceClass { Manager, Subordinate };

std::string_view to_string(DeviceClass c);
DeviceClass parse_device_class(std::string_view text);

struct Position {
    double x{};
    double y{};

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b);

using FriendSet = std::set<DeviceId>;
using InterestSet = std::set<std::string>;

/// The social information an identity presents: its friendship list F and
/// its interest tags I.
struct SocialProfile {
    FriendSet friends;
    InterestSet interests;

    friend bool operator==(const SocialProfile&, const SocialProfile&) = default;
};

struct Device {
    DeviceId id;
    DeviceClass cls{DeviceClass::Subordinate};
    SocialProfile profile;
    std::string owner;
    std::string batch;
    std::optional<std::string> home_place;
    std::optional<std::string> work_group;
    Position position;
    double speed{2.0};
};

// ---------------------------------------------------------------------------
// Environmental contexts

enum class ContextKind { Residence, Office, School, Gym, Park };

inline constexpr std::array<ContextKind, 5> kAllContexts{
    ContextKind::Residence, ContextKind::Office, ContextKind::School, ContextKind::Gym,
    ContextKind::Park};

std::string_view to_string(ContextKind kind);
/// Accepts the lower-case names; throws ConfigError otherwise.
ContextKind parse_context(std::string_view text);
double default_base_rate(ContextKind kind);

/// Base rate a per context name. Seeded with the five built-in kinds; custom
/// kinds and overrides come from scenario configuration.
class ContextTable {
public:
    ContextTable();

    void set_base_rate(std::string_view context, double a);
    double base_rate_of(std::string_view context) const;
    double base_rate_of(ContextKind kind) const { return base_rate_of(to_string(kind)); }
    bool contains(std::string_view context) const;

    const std::map<std::string, double, std::less<>>& entries() const { return rates_; }

private:
    std::map<std::string, double, std::less<>> rates_;
};

// ---------------------------------------------------------------------------
// SIoT relations

enum class RelationType { POR, OOR, CLOR, CWOR, SOR };

inline constexpr std::array<RelationType, 5> kAllRelations{
    RelationType::POR, RelationType::OOR, RelationType::CLOR, RelationType::CWOR,
    RelationType::SOR};

std::string_view to_string(RelationType r);
/// Case-insensitive; throws ConfigError on unknown names.
RelationType parse_relation(std::string_view text);

/// Relationship factor gamma: CLOR 0.3, CWOR 0.2, OOR 0.2, SOR 0.1, POR 0.1.
double relation_gamma(RelationType r);

struct Relation {
    RelationType type{RelationType::SOR};
    /// SOR assigned without a friendship edge: nothing matched at all.
    bool weak{false};

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Single relation between two devices, by precedence
/// OOR > POR > CLOR > CWOR > SOR. Symmetric in its arguments.
Relation classify_relation(const Device& i, const Device& j);

// ---------------------------------------------------------------------------
// Device and identity registry

enum class IdentitySource { Native, Stolen, Fabricated };

std::string_view to_string(IdentitySource s);

struct Identity {
    IdentityId id;
    /// Device the identity was issued to (the victim for stolen copies).
    DeviceId origin;
    IdentitySource source{IdentitySource::Native};
    SocialProfile profile;
};

/// Owns every device and every identity in a run. Mutated only by the owning
/// event loop.
class Registry {
public:
    /// Registers the device (its id is reassigned to the next index) and
    /// issues its native identity.
    DeviceId add_device(Device device);

    const Device& device(DeviceId id) const;
    std::span<const Device> devices() const { return devices_; }
    std::size_t device_count() const { return devices_.size(); }

    IdentityId native_identity(DeviceId id) const;
    /// Legitimate owner of an identity; empty for fabricated identities.
    std::optional<DeviceId> native_device(IdentityId id) const;
    const Identity& identity(IdentityId id) const;
    std::size_t identity_count() const { return identities_.size(); }

    /// Issues a fresh identity never seen in the registry.
    IdentityId fabricate(DeviceId holder, SocialProfile forged);

    /// Records that `thief` now also presents `stolen`. Idempotent per thief.
    void record_theft(DeviceId thief, IdentityId stolen);

    /// Devices currently able to present the identity (owner plus thieves).
    std::vector<DeviceId> presenters(IdentityId id) const;
    const std::vector<IdentityId>& held_identities(DeviceId id) const;

private:
    std::vector<Device> devices_;
    std::vector<Identity> identities_;
    std::vector<IdentityId> native_;
    std::vector<std::vector<IdentityId>> held_;
};

} // namespace electron

#endif // ELECTRON_SOCIAL_HPP
