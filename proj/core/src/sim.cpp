#include "electron/error.hpp"
#include "electron/io.hpp"
#include "electron/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

namespace electron {

std::string_view to_string(EventKind k)
{
    switch (k) {
    case EventKind::Found: return "found";
    case EventKind::Community: return "community";
    case EventKind::Move: return "move";
    case EventKind::Theft: return "theft";
    case EventKind::Fabricate: return "fabricate";
    case EventKind::Request: return "request";
    case EventKind::Decision: return "decision";
    case EventKind::Admit: return "admit";
    case EventKind::Conflict: return "conflict";
    case EventKind::Revoke: return "revoke";
    case EventKind::Interaction: return "interaction";
    case EventKind::Experience: return "experience";
    case EventKind::Exchange: return "exchange";
    }
    return "unknown";
}

void EventLog::append(double time, EventKind kind, std::string detail)
{
    if (!events_.empty() && time < events_.back().time)
        throw ContractViolation("event log timestamps must be nondecreasing");
    events_.push_back({time, kind, std::move(detail)});
}

std::size_t EventLog::count(EventKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [&](const Event& e) { return e.kind == kind; }));
}

void EventLog::write(std::ostream& os) const
{
    for (const auto& e : events_)
        os << fmt::format("{:.3f} {} {}\n", e.time, to_string(e.kind), e.detail);
}

std::string EventLog::str() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

namespace {

class Simulation {
public:
    Simulation(const ScenarioConfig& cfg, const FriendshipGraph* friends,
               std::span<const RosterEntry> roster)
        : cfg_(cfg), rng_(cfg.rng_seed), pop_(build_population(cfg, rng_, friends, roster)),
          registry_(pop_.registry), base_rate_(cfg.base_rate()), area_{cfg.width, cfg.height}
    {
        for (DeviceId d : pop_.attackers) {
            AttackerProfile profile;
            profile.behavior = cfg.behavior;
            profile.identity_source = cfg.identity_source;
            profile.pool_size = cfg.behavior == Behavior::MultiIdentity ? cfg.pool_size : 1;
            profile.attempt_interval = cfg.attempt_interval;
            profile.speed_factor = cfg.speed_factor;
            profile.deny_streak_limit = cfg.deny_streak_limit;
            profile.idle_fraction = cfg.idle_fraction;
            attackers_.emplace_back(d, profile);
            pop_.nodes[d.value].speed = attackers_.back().speed(cfg.speed);
        }
        for (DeviceId m : pop_.managers)
            manager_set_.insert(m);
        result_.manager_count = pop_.managers.size();
        result_.attacker_count = pop_.attackers.size();
    }

    RunResult run()
    {
        const auto steps = static_cast<std::size_t>(std::floor(cfg_.duration / cfg_.time_step + 1e-9));
        const auto epoch_every =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg_.epoch_interval / cfg_.time_step)));

        for (std::size_t step = 0; step < steps; ++step) {
            const double now = static_cast<double>(step) * cfg_.time_step;
            if (step == 0) {
                recompute_communities(now);
                found_network(now);
            }
            if (step % epoch_every == 0)
                epoch(now, step == 0);
            attackers_step(now);
            interactions(now);
            move(now);
        }

        result_.communities = communities_.communities();
        result_.opinion_increments = opinions_.total_experiences();
        result_.metrics = compute_report(result_.counters, result_.trust);
        return std::move(result_);
    }

private:
    // -- helpers -----------------------------------------------------------

    bool is_attacker(DeviceId d) const { return pop_.is_attacker[d.value]; }
    Position position_of(DeviceId d) const { return pop_.nodes[d.value].position; }

    std::vector<Position> positions() const
    {
        std::vector<Position> out;
        out.reserve(pop_.nodes.size());
        for (const auto& n : pop_.nodes)
            out.push_back(n.position);
        return out;
    }

    std::vector<ManagerView> manager_views() const
    {
        std::vector<ManagerView> out;
        for (DeviceId m : pop_.managers)
            out.push_back({m, position_of(m)});
        return out;
    }

    TrustContext trust_context() const
    {
        return {registry_, opinions_, cache_, communities_, cfg_.weights, cfg_.relation_filter, base_rate_};
    }

    void log(double t, EventKind kind, std::string detail) { result_.log.append(t, kind, std::move(detail)); }

    void record(double now, const Experience& e)
    {
        opinions_.record_experience(e.evaluator, e.subject, e.outcome, base_rate_);
        ++result_.experiences;
        log(now, EventKind::Experience,
            fmt::format("observer={} subject={} dev={} evaluator={} outcome={} forced={}", e.observer.value,
                        e.subject.value, e.subject_device.value, e.evaluator.value, to_string(e.outcome),
                        e.forced ? 1 : 0));
    }

    /// One presence per (identity, device): the latest membership decides the
    /// responsible manager.
    std::vector<Presence> presences() const
    {
        std::map<std::pair<IdentityId, DeviceId>, DeviceId> latest;
        for (const auto& m : roster_.members())
            latest[{m.identity, m.presenter}] = m.manager;
        std::vector<Presence> out;
        out.reserve(latest.size());
        for (const auto& [key, manager] : latest)
            out.push_back({key.first, key.second, manager, position_of(key.second), is_attacker(key.second)});
        return out;
    }

    // -- network set-up ----------------------------------------------------

    void recompute_communities(double now)
    {
        communities_ = CommunityMap(
            form_communities(registry_.devices(), cfg_.weights, cfg_.similarity_threshold, cfg_.context),
            registry_.device_count());
        for (const auto& c : communities_.communities()) {
            std::string members;
            for (std::size_t k = 0; k < c.members.size(); ++k)
                members += fmt::format("{}{}", k ? ";" : "", c.members[k].value);
            log(now, EventKind::Community,
                fmt::format("cid={} context={} size={} members={}", c.id.value, c.context, c.members.size(), members));
        }
    }

    void found_network(double now)
    {
        const auto pos = positions();
        for (const auto& d : registry_.devices()) {
            if (is_attacker(d.id))
                continue;
            DeviceId manager = d.id;
            if (d.cls != DeviceClass::Manager) {
                const auto& own = communities_.community_of(d.id);
                std::vector<DeviceId> local;
                for (DeviceId m : own.members)
                    if (manager_set_.contains(m))
                        local.push_back(m);
                const auto pick = nearest_manager(d.position, local.empty() ? std::span<const DeviceId>(pop_.managers)
                                                                            : std::span<const DeviceId>(local),
                                                  pos);
                manager = *pick;
            }
            const IdentityId id = registry_.native_identity(d.id);
            roster_.found(id, d.id, manager, now);
            log(now, EventKind::Found, fmt::format("dev={} id={} mgr={}", d.id.value, id.value, manager.value));
        }
    }

    // -- epoch processing --------------------------------------------------

    void epoch(double now, bool first)
    {
        if (!first)
            recompute_communities(now);

        for (const auto& p : pop_.nodes)
            result_.positions_in_area = result_.positions_in_area && area_.contains(p.position);
        for (std::size_t d = 0; d < pop_.nodes.size(); ++d)
            log(now, EventKind::Move,
                fmt::format("dev={} x={:.6f} y={:.6f}", d, pop_.nodes[d].position.x, pop_.nodes[d].position.y));

        const auto current = presences();
        for (const auto& e : detect_duplicate_identities(current))
            record(now, e);

        const auto entries = exchange_recommendations(pop_.managers, registry_, opinions_, cache_);
        log(now, EventKind::Exchange, fmt::format("managers={} entries={}", pop_.managers.size(), entries));

        if (!first)
            reevaluate_members(now);
        rejoin_legitimate(now);
    }

    void reevaluate_members(double now)
    {
        // Snapshot: re-evaluation revokes while iterating.
        const auto members = roster_.members();
        for (const auto& m : members) {
            if (m.presenter == m.manager)
                continue; // managers anchor the network
            AccessRequest req{m.identity, registry_.identity(m.identity).profile, m.manager, cfg_.context, now};
            const auto decision = evaluate_access(req, cfg_.trust_threshold, trust_context());
            adjudicate(now, req, m.presenter, decision, true);
            if (decision.verdict == Verdict::Deny) {
                roster_.revoke(m.identity, m.presenter, m.manager);
                log(now, EventKind::Revoke,
                    fmt::format("mgr={} id={} dev={}", m.manager.value, m.identity.value, m.presenter.value));
            }
        }
    }

    void rejoin_legitimate(double now)
    {
        const auto pos = positions();
        for (const auto& d : registry_.devices()) {
            if (is_attacker(d.id) || d.cls == DeviceClass::Manager)
                continue;
            const IdentityId id = registry_.native_identity(d.id);
            if (roster_.is_member(id, d.id) || cooling_down(id, d.id, now))
                continue;
            const auto target = nearest_manager(pos[d.id.value], pop_.managers, pos);
            if (!target)
                continue;
            AccessRequest req{id, registry_.identity(id).profile, *target, cfg_.context, now};
            request(now, req, d.id);
        }
    }

    // -- requests and decisions -------------------------------------------

    bool cooling_down(IdentityId id, DeviceId presenter, double now) const
    {
        auto it = last_deny_.find({id, presenter});
        return it != last_deny_.end() && cfg_.deny_retry_cooldown > 0.0 &&
               now - it->second < cfg_.deny_retry_cooldown;
    }

    void adjudicate(double now, const AccessRequest& req, DeviceId presenter, const AccessDecision& decision,
                    bool reevaluation)
    {
        const auto kind = is_attacker(presenter) ? RequesterKind::Attacker : RequesterKind::Legitimate;
        result_.decisions.push_back(
            {now, req.target_manager, req.requester, presenter, kind, decision.verdict, decision.trust_at_decision, reevaluation});
        result_.counters.observe(kind, decision.verdict);
        result_.trust.push_back(
            {decision.assessment, reevaluation ? TrustSplit::Internal : TrustSplit::External, kind});
        const auto& a = decision.assessment;
        log(now, EventKind::Decision,
            fmt::format("mgr={} id={} dev={} kind={} verdict={} D={:.6f} S={:.6f} R={:.6f} T={:.6f} reeval={}",
                        req.target_manager.value, req.requester.value, presenter.value, to_string(kind),
                        to_string(decision.verdict), a.direct, a.similarity, a.recommendation, a.trust,
                        reevaluation ? 1 : 0));
        if (decision.verdict == Verdict::Deny)
            last_deny_[{req.requester, presenter}] = now;
    }

    Verdict request(double now, const AccessRequest& req, DeviceId presenter)
    {
        log(now, EventKind::Request,
            fmt::format("dev={} id={} mgr={}", presenter.value, req.requester.value, req.target_manager.value));
        const auto decision = evaluate_access(req, cfg_.trust_threshold, trust_context());
        adjudicate(now, req, presenter, decision, false);
        roster_.note_decision(req, presenter, decision);
        if (decision.verdict == Verdict::Grant) {
            const auto admitted = roster_.admit(req.requester, presenter, req.target_manager, now);
            log(now, EventKind::Admit,
                fmt::format("mgr={} id={} dev={}", req.target_manager.value, req.requester.value, presenter.value));
            for (const auto& other : admitted.conflicts) {
                log(now, EventKind::Conflict,
                    fmt::format("id={} dev={} mgr={} other_dev={} other_mgr={}", req.requester.value, presenter.value,
                                req.target_manager.value, other.presenter.value, other.manager.value));
                record(now, {req.target_manager, req.requester, presenter, req.target_manager, Outcome::Negative, true});
                record(now, {other.manager, req.requester, other.presenter, other.manager, Outcome::Negative, true});
            }
        }
        return decision.verdict;
    }

    // -- attackers ---------------------------------------------------------

    std::optional<IdentityId> steal_nearby(SybilAttacker& attacker, double now)
    {
        const Position self = position_of(attacker.device());
        const auto& pool = attacker.pool();
        std::optional<DeviceId> best;
        double best_distance = 0.0;
        for (const auto& d : registry_.devices()) {
            if (is_attacker(d.id))
                continue;
            const IdentityId id = registry_.native_identity(d.id);
            if (std::find(pool.begin(), pool.end(), id) != pool.end())
                continue;
            const double dist = distance(self, position_of(d.id));
            if (dist <= cfg_.theft_radius() && (!best || dist < best_distance)) {
                best = d.id;
                best_distance = dist;
            }
        }
        if (!best)
            return std::nullopt;
        auto stolen = attacker.steal_identity(registry_, registry_.device(*best), self, position_of(*best),
                                              cfg_.theft_radius());
        if (stolen)
            log(now, EventKind::Theft,
                fmt::format("attacker={} victim={} id={}", attacker.device().value, best->value, stolen->value));
        return stolen;
    }

    IdentityId fabricate(SybilAttacker& attacker, double now)
    {
        // Forged sets are drawn from what the attacker can observe around it.
        const Position self = position_of(attacker.device());
        std::vector<DeviceId> seen;
        std::vector<std::string> interests;
        for (const auto& d : registry_.devices()) {
            if (is_attacker(d.id) || distance(self, position_of(d.id)) > cfg_.theft_radius())
                continue;
            seen.push_back(d.id);
            for (const auto& tag : d.profile.interests)
                if (std::find(interests.begin(), interests.end(), tag) == interests.end())
                    interests.push_back(tag);
        }
        std::sort(interests.begin(), interests.end());
        SocialProfile forged;
        for (std::size_t k = 0; k < cfg_.forged_set_size && k < seen.size(); ++k) {
            const auto pick = k + uniform_index(rng_, seen.size() - k);
            std::swap(seen[k], seen[pick]);
            forged.friends.insert(seen[k]);
        }
        for (std::size_t k = 0; k < cfg_.forged_set_size && k < interests.size(); ++k) {
            const auto pick = k + uniform_index(rng_, interests.size() - k);
            std::swap(interests[k], interests[pick]);
            forged.interests.insert(interests[k]);
        }
        const auto friends = forged.friends.size();
        const auto tags = forged.interests.size();
        const IdentityId id = attacker.fabricate_identity(registry_, std::move(forged));
        log(now, EventKind::Fabricate,
            fmt::format("attacker={} id={} friends={} interests={}", attacker.device().value, id.value, friends, tags));
        return id;
    }

    std::optional<IdentityId> acquire(SybilAttacker& attacker, double now)
    {
        if (cfg_.identity_source == IdentitySource::Fabricated)
            return fabricate(attacker, now);
        return steal_nearby(attacker, now);
    }

    void attackers_step(double now)
    {
        const auto views = manager_views();
        for (auto& attacker : attackers_) {
            const DeviceId dev = attacker.device();
            const Position self = position_of(dev);
            std::vector<AccessRequest> requests;

            if (attacker.profile().behavior == Behavior::Churn) {
                const auto before = attacker.active_identity();
                requests = attacker.churn_step(now, self, views, registry_, cfg_.context,
                                               [&] { return acquire(attacker, now); });
                const auto after = attacker.active_identity();
                if (before && after && *before != *after) {
                    const auto dropped = roster_.revoke_all(*before, dev);
                    if (dropped > 0)
                        log(now, EventKind::Revoke, fmt::format("mgr=* id={} dev={} abandoned={}", before->value, dev.value, dropped));
                }
            } else {
                if (attacker.pool().size() < attacker.profile().pool_size)
                    acquire(attacker, now);
                requests = attacker.multi_identity_step(now, self, views, registry_, cfg_.context,
                                                        [&](IdentityId id) { return roster_.is_member(id, dev); });
            }

            for (const auto& req : requests) {
                if (cooling_down(req.requester, dev, now))
                    continue;
                result_.attacks.push_back({now, dev, req.requester, cfg_.identity_source, attacker.profile().behavior,
                                           req.target_manager});
                const auto verdict = request(now, req, dev);
                attacker.observe_decision(req.requester, verdict);
            }

            if (attacker.profile().behavior == Behavior::Churn) {
                std::set<IdentityId> in_flight;
                for (const auto& m : roster_.members())
                    if (m.presenter == dev)
                        in_flight.insert(m.identity);
                if (attacker.active_identity())
                    in_flight.insert(*attacker.active_identity());
                result_.max_churn_in_flight = std::max(result_.max_churn_in_flight, in_flight.size());
            }
        }
    }

    // -- interactions and mobility ----------------------------------------

    void interactions(double now)
    {
        const auto current = presences();
        const InteractionParams params{cfg_.interaction_radius, cfg_.interaction_period, cfg_.p_positive_legit,
                                       cfg_.p_negative_attacker};
        const std::size_t devices = registry_.device_count();
        const auto slot = [devices](const Presence& p) {
            return static_cast<std::size_t>(p.identity.value) * devices + p.device.value;
        };
        for (const auto& e : generate_interactions(current, params, now, clock_, slot, rng_))
            record(now, e);
    }

    void move(double)
    {
        for (auto& node : pop_.nodes) {
            step_mobility(node, cfg_.time_step, area_, rng_);
            result_.positions_in_area = result_.positions_in_area && area_.contains(node.position);
        }
    }

    const ScenarioConfig& cfg_;
    Engine rng_;
    Population pop_;
    Registry& registry_;
    double base_rate_;
    Area area_;
    std::set<DeviceId> manager_set_;
    std::vector<SybilAttacker> attackers_;
    OpinionStore opinions_;
    RecommendationCache cache_;
    MembershipRoster roster_;
    CommunityMap communities_;
    InteractionClock clock_;
    std::map<std::pair<IdentityId, DeviceId>, double> last_deny_;
    RunResult result_;
};

} // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const FriendshipGraph* friends,
                       std::span<const RosterEntry> roster)
{
    cfg.validate();
    Simulation sim(cfg, friends, roster);
    return sim.run();
}

} // namespace electron
