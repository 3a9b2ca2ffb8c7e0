#ifndef ELECTRON_AUTHN_HPP
#define ELECTRON_AUTHN_HPP

#include "electron/community.hpp"
#include "electron/ids.hpp"
#include "electron/social.hpp"
#include "electron/trust.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace electron {

struct AccessRequest {
    IdentityId requester;
    SocialProfile presented;
    DeviceId target_manager;
    std::string context;
    double time{};
};

enum class Verdict { Grant, Deny };
enum class DecisionReason { Granted, BelowThreshold };

std::string_view to_string(Verdict v);
std::string_view to_string(DecisionReason r);

struct AccessDecision {
    Verdict verdict{Verdict::Deny};
    double trust_at_decision{};
    DecisionReason reason{DecisionReason::BelowThreshold};
    TrustAssessment assessment;
};

/// Grant iff trust > threshold, strictly.
AccessDecision decide(const TrustAssessment& assessment, double threshold);

/// Read-only snapshot of everything a Manager needs to compute T.
struct TrustContext {
    const Registry& registry;
    const OpinionStore& opinions;
    const RecommendationCache& recommendations;
    const CommunityMap& communities;
    SimilarityWeights weights;
    RelationType relation_filter{RelationType::SOR};
    double base_rate{0.5};
};

/// D from the manager's own opinion, S against the manager's community, R from
/// the relation-filtered recommendations it holds.
TrustAssessment evaluate_trust(const AccessRequest& req, const TrustContext& ctx);

/// Throws RoutingError when the target is not a Manager.
AccessDecision evaluate_access(const AccessRequest& req, double threshold, const TrustContext& ctx);

/// Nearest Manager by Euclidean distance; ties go to the lower id.
std::optional<DeviceId> nearest_manager(Position from, std::span<const DeviceId> managers,
                                        std::span<const Position> positions);

struct Membership {
    IdentityId identity;
    DeviceId presenter;
    DeviceId manager;
    double since{};
    bool founding{false};
};

struct AdmitResult {
    Membership membership;
    /// Other memberships of the same identity held elsewhere when this one was
    /// created: each is an identity-conflict observation.
    std::vector<Membership> conflicts;
};

/// Network membership at Manager nodes. Every non-founding membership is
/// backed by a logged Grant.
class MembershipRoster {
public:
    /// Members of the initial network, present before any request.
    void found(IdentityId identity, DeviceId presenter, DeviceId manager, double time);

    /// Logs a decision. A Grant becomes redeemable by admit(); a Deny cancels
    /// any outstanding grant for the same identity at that manager.
    void note_decision(const AccessRequest& req, DeviceId presenter, const AccessDecision& decision);

    /// Throws ContractViolation without an outstanding Grant.
    AdmitResult admit(IdentityId identity, DeviceId presenter, DeviceId manager, double time);

    bool revoke(IdentityId identity, DeviceId presenter, DeviceId manager);
    std::size_t revoke_all(IdentityId identity, DeviceId presenter);

    const std::vector<Membership>& members() const { return members_; }
    std::optional<Membership> latest(IdentityId identity, DeviceId presenter) const;
    bool is_member(IdentityId identity, DeviceId presenter) const;
    std::size_t size() const { return members_.size(); }

    /// Number of Grants logged for (identity, manager), redeemed or not.
    std::size_t grants_logged(IdentityId identity, DeviceId manager) const;

private:
    std::vector<Membership> members_;
    std::map<std::tuple<IdentityId, DeviceId, DeviceId>, int> pending_; // (identity, presenter, manager)
    std::map<std::pair<IdentityId, DeviceId>, std::size_t> grant_count_;
};

} // namespace electron

#endif // ELECTRON_AUTHN_HPP
