#include "electron/social.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace electron {

namespace {

std::string lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

template <class T>
bool same_token(const std::optional<T>& a, const std::optional<T>& b)
{
    return a.has_value() && b.has_value() && *a == *b;
}

bool friendship_edge(const Device& i, const Device& j)
{
    return i.profile.friends.contains(j.id) || j.profile.friends.contains(i.id);
}

} // namespace

std::string_view to_string(DeviceClass c)
{
    return c == DeviceClass::Manager ? "manager" : "subordinate";
}

DeviceClass parse_device_class(std::string_view text)
{
    const auto t = lower(text);
    if (t == "manager" || t == "man" || t == "n_man")
        return DeviceClass::Manager;
    if (t == "subordinate" || t == "sub" || t == "n_sub")
        return DeviceClass::Subordinate;
    throw ConfigError("unknown device class '" + std::string(text) + "'");
}

double distance(Position a, Position b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(ContextKind kind)
{
    switch (kind) {
    case ContextKind::Residence: return "residence";
    case ContextKind::Office: return "office";
    case ContextKind::School: return "school";
    case ContextKind::Gym: return "gym";
    case ContextKind::Park: return "park";
    }
    return "unknown";
}

ContextKind parse_context(std::string_view text)
{
    const auto t = lower(text);
    for (auto kind : kAllContexts)
        if (to_string(kind) == t)
            return kind;
    throw ConfigError("unknown context kind '" + std::string(text) + "'");
}

double default_base_rate(ContextKind kind)
{
    switch (kind) {
    case ContextKind::Residence: return 1.0;
    case ContextKind::Office: return 0.7;
    case ContextKind::School: return 0.5;
    case ContextKind::Gym: return 0.4;
    case ContextKind::Park: return 0.2;
    }
    return 0.0;
}

ContextTable::ContextTable()
{
    for (auto kind : kAllContexts)
        rates_.emplace(std::string(to_string(kind)), default_base_rate(kind));
}

void ContextTable::set_base_rate(std::string_view context, double a)
{
    if (context.empty())
        throw ConfigError("context name must not be empty");
    if (!(a >= 0.0 && a <= 1.0))
        throw ConfigError("base rate for '" + std::string(context) + "' must lie in [0,1]");
    rates_.insert_or_assign(lower(context), a);
}

double ContextTable::base_rate_of(std::string_view context) const
{
    if (auto it = rates_.find(lower(context)); it != rates_.end())
        return it->second;
    throw ConfigError("unknown context kind '" + std::string(context) + "'");
}

bool ContextTable::contains(std::string_view context) const
{
    return rates_.find(lower(context)) != rates_.end();
}

std::string_view to_string(RelationType r)
{
    switch (r) {
    case RelationType::POR: return "POR";
    case RelationType::OOR: return "OOR";
    case RelationType::CLOR: return "CLOR";
    case RelationType::CWOR: return "CWOR";
    case RelationType::SOR: return "SOR";
    }
    return "unknown";
}

RelationType parse_relation(std::string_view text)
{
    const auto t = lower(text);
    for (auto r : kAllRelations)
        if (lower(to_string(r)) == t)
            return r;
    throw ConfigError("unknown relation type '" + std::string(text) + "'");
}

double relation_gamma(RelationType r)
{
    switch (r) {
    case RelationType::CLOR: return 0.3;
    case RelationType::CWOR: return 0.2;
    case RelationType::OOR: return 0.2;
    case RelationType::SOR: return 0.1;
    case RelationType::POR: return 0.1;
    }
    return 0.0;
}

Relation classify_relation(const Device& i, const Device& j)
{
    if (!i.owner.empty() && i.owner == j.owner)
        return {RelationType::OOR, false};
    if (!i.batch.empty() && i.batch == j.batch)
        return {RelationType::POR, false};
    if (same_token(i.home_place, j.home_place))
        return {RelationType::CLOR, false};
    if (same_token(i.work_group, j.work_group))
        return {RelationType::CWOR, false};
    return {RelationType::SOR, !friendship_edge(i, j)};
}

std::string_view to_string(IdentitySource s)
{
    switch (s) {
    case IdentitySource::Native: return "native";
    case IdentitySource::Stolen: return "stolen";
    case IdentitySource::Fabricated: return "fabricated";
    }
    return "unknown";
}

DeviceId Registry::add_device(Device device)
{
    const DeviceId id{static_cast<std::uint32_t>(devices_.size())};
    device.id = id;
    device.profile.friends.erase(id);

    const IdentityId identity{static_cast<std::uint32_t>(identities_.size())};
    identities_.push_back({identity, id, IdentitySource::Native, device.profile});
    devices_.push_back(std::move(device));
    native_.push_back(identity);
    held_.push_back({identity});
    return id;
}

const Device& Registry::device(DeviceId id) const
{
    if (id.value >= devices_.size())
        throw ContractViolation("unregistered device " + std::to_string(id.value));
    return devices_[id.value];
}

IdentityId Registry::native_identity(DeviceId id) const
{
    return native_.at(device(id).id.value);
}

std::optional<DeviceId> Registry::native_device(IdentityId id) const
{
    const auto& ident = identity(id);
    if (ident.source == IdentitySource::Fabricated)
        return std::nullopt;
    return ident.origin;
}

const Identity& Registry::identity(IdentityId id) const
{
    if (id.value >= identities_.size())
        throw ContractViolation("unknown identity " + std::to_string(id.value));
    return identities_[id.value];
}

IdentityId Registry::fabricate(DeviceId holder, SocialProfile forged)
{
    device(holder);
    const IdentityId id{static_cast<std::uint32_t>(identities_.size())};
    identities_.push_back({id, holder, IdentitySource::Fabricated, std::move(forged)});
    held_[holder.value].push_back(id);
    return id;
}

void Registry::record_theft(DeviceId thief, IdentityId stolen)
{
    device(thief);
    const auto& ident = identity(stolen);
    if (ident.source != IdentitySource::Native)
        throw ContractViolation("only native identities can be stolen");
    auto& held = held_[thief.value];
    if (std::find(held.begin(), held.end(), stolen) == held.end())
        held.push_back(stolen);
}

std::vector<DeviceId> Registry::presenters(IdentityId id) const
{
    identity(id);
    std::vector<DeviceId> out;
    for (std::size_t d = 0; d < held_.size(); ++d)
        if (std::find(held_[d].begin(), held_[d].end(), id) != held_[d].end())
            out.push_back(DeviceId{static_cast<std::uint32_t>(d)});
    return out;
}

const std::vector<IdentityId>& Registry::held_identities(DeviceId id) const
{
    return held_.at(device(id).id.value);
}

} // namespace electron
