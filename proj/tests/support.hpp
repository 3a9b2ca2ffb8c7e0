#ifndef ELECTRON_TESTS_SUPPORT_HPP
#define ELECTRON_TESTS_SUPPORT_HPP

#include <electron/community.hpp>
#include <electron/rng.hpp>
#include <electron/social.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace electron::testing {

inline FriendSet friends(std::initializer_list<std::uint32_t> ids)
{
    FriendSet out;
    for (auto v : ids)
        out.insert(DeviceId{v});
    return out;
}

inline Device device(DeviceClass cls = DeviceClass::Subordinate, std::string owner = {}, std::string batch = {})
{
    Device d;
    d.cls = cls;
    d.owner = std::move(owner);
    d.batch = std::move(batch);
    return d;
}

inline Device with_profile(Device d, FriendSet f, InterestSet i)
{
    d.profile.friends = std::move(f);
    d.profile.interests = std::move(i);
    return d;
}

/// Random profiles over a small universe so overlaps are common.
inline SocialProfile random_profile(Engine& rng, std::size_t devices, std::size_t tags)
{
    SocialProfile p;
    for (std::size_t k = 0; k < devices; ++k)
        if (bernoulli(rng, 0.4))
            p.friends.insert(DeviceId{static_cast<std::uint32_t>(k)});
    for (std::size_t k = 0; k < tags; ++k)
        if (bernoulli(rng, 0.4))
            p.interests.insert("t" + std::to_string(k));
    return p;
}

} // namespace electron::testing

#endif
