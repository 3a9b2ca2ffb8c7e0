#include "electron/authn.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <limits>

namespace electron {

std::string_view to_string(Verdict v)
{
    return v == Verdict::Grant ? "grant" : "deny";
}

std::string_view to_string(DecisionReason r)
{
    return r == DecisionReason::Granted ? "granted" : "below_threshold";
}

AccessDecision decide(const TrustAssessment& assessment, double threshold)
{
    const bool grant = assessment.trust > threshold;
    return {grant ? Verdict::Grant : Verdict::Deny, assessment.trust,
            grant ? DecisionReason::Granted : DecisionReason::BelowThreshold, assessment};
}

TrustAssessment evaluate_trust(const AccessRequest& req, const TrustContext& ctx)
{
    const Device& manager = ctx.registry.device(req.target_manager);
    if (manager.cls != DeviceClass::Manager)
        throw RoutingError("device " + std::to_string(manager.id.value) +
                           " is a subordinate; requests go to the nearest manager");

    const double direct = ctx.opinions.direct_trust(manager.id, req.requester, ctx.base_rate);

    const auto& community = ctx.communities.community_of(manager.id);
    const auto lookup = [&](DeviceId d) -> const SocialProfile& {
        return ctx.registry.device(d).profile;
    };
    const double similarity = community_similarity(
        req.presented, ctx.registry.native_device(req.requester), community, lookup, ctx.weights);

    const double rec = recommendation(ctx.recommendations.about(manager.id, req.requester),
                                      ctx.relation_filter, ctx.base_rate);

    return assess(manager.id, req.requester, direct, similarity, rec, ctx.relation_filter, req.time);
}

AccessDecision evaluate_access(const AccessRequest& req, double threshold, const TrustContext& ctx)
{
    return decide(evaluate_trust(req, ctx), threshold);
}

std::optional<DeviceId> nearest_manager(Position from, std::span<const DeviceId> managers,
                                        std::span<const Position> positions)
{
    std::optional<DeviceId> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (DeviceId m : managers) {
        const double dist = distance(from, positions[m.value]);
        if (dist < best_distance || (dist == best_distance && best && m < *best)) {
            best = m;
            best_distance = dist;
        }
    }
    return best;
}

void MembershipRoster::found(IdentityId identity, DeviceId presenter, DeviceId manager, double time)
{
    members_.push_back({identity, presenter, manager, time, true});
}

void MembershipRoster::note_decision(const AccessRequest& req, DeviceId presenter,
                                     const AccessDecision& decision)
{
    const auto key = std::make_tuple(req.requester, presenter, req.target_manager);
    if (decision.verdict == Verdict::Grant) {
        pending_[key] = 1;
        ++grant_count_[{req.requester, req.target_manager}];
    } else {
        pending_.erase(key);
    }
}

AdmitResult MembershipRoster::admit(IdentityId identity, DeviceId presenter, DeviceId manager, double time)
{
    auto it = pending_.find(std::make_tuple(identity, presenter, manager));
    if (it == pending_.end())
        throw ContractViolation("admit without a prior Grant for identity " +
                                std::to_string(identity.value) + " at manager " +
                                std::to_string(manager.value));
    pending_.erase(it);

    AdmitResult result;
    for (const auto& m : members_)
        if (m.identity == identity && (m.presenter != presenter || m.manager != manager))
            result.conflicts.push_back(m);

    // Re-admission at the same manager replaces the previous record.
    std::erase_if(members_, [&](const Membership& m) {
        return m.identity == identity && m.presenter == presenter && m.manager == manager;
    });
    result.membership = {identity, presenter, manager, time, false};
    members_.push_back(result.membership);
    return result;
}

bool MembershipRoster::revoke(IdentityId identity, DeviceId presenter, DeviceId manager)
{
    return std::erase_if(members_, [&](const Membership& m) {
               return m.identity == identity && m.presenter == presenter && m.manager == manager;
           }) > 0;
}

std::size_t MembershipRoster::revoke_all(IdentityId identity, DeviceId presenter)
{
    return std::erase_if(members_, [&](const Membership& m) {
        return m.identity == identity && m.presenter == presenter;
    });
}

std::optional<Membership> MembershipRoster::latest(IdentityId identity, DeviceId presenter) const
{
    std::optional<Membership> out;
    for (const auto& m : members_)
        if (m.identity == identity && m.presenter == presenter)
            out = m;
    return out;
}

bool MembershipRoster::is_member(IdentityId identity, DeviceId presenter) const
{
    return latest(identity, presenter).has_value();
}

std::size_t MembershipRoster::grants_logged(IdentityId identity, DeviceId manager) const
{
    auto it = grant_count_.find({identity, manager});
    return it == grant_count_.end() ? 0 : it->second;
}

} // namespace electron
