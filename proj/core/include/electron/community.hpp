#ifndef ELECTRON_COMMUNITY_HPP
#define ELECTRON_COMMUNITY_HPP

#include "electron/ids.hpp"
#include "electron/social.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace electron {

/// Weights of the friendship and interest terms; they must sum to one.
struct SimilarityWeights {
    double friendship{0.5};
    double interest{0.5};

    /// Throws ConfigError unless both lie in [0,1] and sum to 1.
    static SimilarityWeights make(double friendship, double interest);
    void validate() const;
};

/// Jaccard coefficient of two sorted sets. Two empty sets score 0.
template <class Set>
double jaccard(const Set& a, const Set& b)
{
    if (a.empty() && b.empty())
        return 0.0;
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t united = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(united);
}

double friendship_similarity(const FriendSet& a, const FriendSet& b);
double interest_similarity(const InterestSet& a, const InterestSet& b);

/// S(i,j) = Sim_F * phi_F + Sim_I * phi_I.
double pairwise_similarity(const SocialProfile& i, const SocialProfile& j,
                           const SimilarityWeights& w);

struct Community {
    CommunityId id;
    std::vector<DeviceId> members; // sorted ascending
    std::string context;
    double similarity_threshold{0.5};

    bool contains(DeviceId d) const
    {
        return std::binary_search(members.begin(), members.end(), d);
    }
};

/// Connected components of the graph joining i and j iff S(i,j) > threshold.
/// Communities are ordered by their smallest member id.
std::vector<Community> form_communities(std::span<const Device> devices,
                                        const SimilarityWeights& w, double threshold,
                                        const std::string& context = "school");

using ProfileLookup = std::function<const SocialProfile&(DeviceId)>;

/// Mean S(candidate, k) over members k of the community other than `self`.
/// Zero when nobody else is left; throws ContractViolation on an empty community.
double community_similarity(const SocialProfile& candidate, std::optional<DeviceId> self,
                            const Community& community, const ProfileLookup& profile_of,
                            const SimilarityWeights& w);

/// Partition lookup: which community a device belongs to.
class CommunityMap {
public:
    CommunityMap() = default;
    CommunityMap(std::vector<Community> communities, std::size_t device_count);

    const std::vector<Community>& communities() const { return communities_; }
    const Community& community_of(DeviceId d) const;
    bool empty() const { return communities_.empty(); }

private:
    std::vector<Community> communities_;
    std::vector<std::size_t> index_;
};

} // namespace electron

#endif // ELECTRON_COMMUNITY_HPP
