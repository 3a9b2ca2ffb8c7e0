#include "electron/community.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace electron {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

SimilarityWeights SimilarityWeights::make(double friendship, double interest)
{
    SimilarityWeights w{friendship, interest};
    w.validate();
    return w;
}

void SimilarityWeights::validate() const
{
    if (!(friendship >= 0.0 && friendship <= 1.0 && interest >= 0.0 && interest <= 1.0))
        throw ConfigError("similarity weights must lie in [0,1]");
    if (std::abs(friendship + interest - 1.0) > 1e-12)
        throw ConfigError("similarity weights must sum to 1");
}

double friendship_similarity(const FriendSet& a, const FriendSet& b)
{
    return jaccard(a, b);
}

double interest_similarity(const InterestSet& a, const InterestSet& b)
{
    return jaccard(a, b);
}

double pairwise_similarity(const SocialProfile& i, const SocialProfile& j,
                           const SimilarityWeights& w)
{
    return friendship_similarity(i.friends, j.friends) * w.friendship +
           interest_similarity(i.interests, j.interests) * w.interest;
}

std::vector<Community> form_communities(std::span<const Device> devices,
                                        const SimilarityWeights& w, double threshold,
                                        const std::string& context)
{
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw ConfigError("similarity threshold must lie in [0,1)");
    w.validate();

    const std::size_t n = devices.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pairwise_similarity(devices[i].profile, devices[j].profile, w) > threshold)
                sets.unite(i, j);

    std::vector<std::vector<DeviceId>> groups(n);
    for (std::size_t i = 0; i < n; ++i)
        groups[sets.find(i)].push_back(devices[i].id);

    std::vector<Community> out;
    for (auto& g : groups) {
        if (g.empty())
            continue;
        std::sort(g.begin(), g.end());
        out.push_back({CommunityId{}, std::move(g), context, threshold});
    }
    std::sort(out.begin(), out.end(),
              [](const Community& a, const Community& b) { return a.members.front() < b.members.front(); });
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k].id = CommunityId{static_cast<std::uint32_t>(k)};
    return out;
}

double community_similarity(const SocialProfile& candidate, std::optional<DeviceId> self,
                            const Community& community, const ProfileLookup& profile_of,
                            const SimilarityWeights& w)
{
    if (community.members.empty())
        throw ContractViolation("community similarity against an empty community");
    double sum = 0.0;
    std::size_t count = 0;
    for (DeviceId k : community.members) {
        if (self && k == *self)
            continue;
        sum += pairwise_similarity(candidate, profile_of(k), w);
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

CommunityMap::CommunityMap(std::vector<Community> communities, std::size_t device_count)
    : communities_(std::move(communities)), index_(device_count, static_cast<std::size_t>(-1))
{
    for (std::size_t c = 0; c < communities_.size(); ++c)
        for (DeviceId d : communities_[c].members) {
            if (d.value >= index_.size())
                throw ContractViolation("community member outside the device range");
            if (index_[d.value] != static_cast<std::size_t>(-1))
                throw ContractViolation("communities must partition the device set");
            index_[d.value] = c;
        }
    if (std::find(index_.begin(), index_.end(), static_cast<std::size_t>(-1)) != index_.end())
        throw ContractViolation("communities must cover every device");
}

const Community& CommunityMap::community_of(DeviceId d) const
{
    if (d.value >= index_.size() || index_[d.value] == static_cast<std::size_t>(-1))
        throw ContractViolation("device " + std::to_string(d.value) + " has no community");
    return communities_[index_[d.value]];
}

} // namespace electron
