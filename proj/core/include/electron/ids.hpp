#ifndef ELECTRON_IDS_HPP
#define ELECTRON_IDS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace electron {

/// Opaque integral token. Distinct tags keep device and identity spaces apart.
template <class Tag>
struct StrongId {
    std::uint32_t value{};

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
    friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

using DeviceId = StrongId<struct DeviceTag>;
using IdentityId = StrongId<struct IdentityTag>;
using CommunityId = StrongId<struct CommunityTag>;

} // namespace electron

template <class Tag>
struct std::hash<electron::StrongId<Tag>> {
    std::size_t operator()(electron::StrongId<Tag> id) const noexcept
    {
        return std::hash<std::uint32_t>{}(id.value);
    }
};

#endif // ELECTRON_IDS_HPP
