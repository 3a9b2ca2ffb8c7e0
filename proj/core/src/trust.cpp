#include "electron/trust.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <string>

namespace electron {

namespace {

void require_unit(double v, const char* name)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw ContractViolation(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

} // namespace

OpinionComponents opinion_components(const Opinion& op)
{
    const double total = static_cast<double>(op.pos) + static_cast<double>(op.neg) + 2.0;
    return {static_cast<double>(op.pos) / total, static_cast<double>(op.neg) / total, 2.0 / total};
}

double expected_value(const Opinion& op)
{
    const auto c = opinion_components(op);
    return c.belief + op.base_rate * c.uncertainty;
}

std::string_view to_string(Outcome o)
{
    return o == Outcome::Positive ? "positive" : "negative";
}

TrustWeights weights_from_relation(RelationType r)
{
    const double gamma = relation_gamma(r);
    const double half = (1.0 - gamma) / 2.0;
    return {half, half, gamma};
}

double overall_trust(double direct, double similarity, double recommendation, RelationType r)
{
    require_unit(direct, "direct trust");
    require_unit(similarity, "similarity");
    require_unit(recommendation, "recommendation");
    const auto w = weights_from_relation(r);
    const double t = w.direct * direct + w.similarity * similarity + w.recommendation * recommendation;
    return std::clamp(t, 0.0, 1.0);
}

double recommendation(std::span<const Recommendation> recommendations, RelationType relation_filter,
                      double base_rate)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& rec : recommendations) {
        if (rec.relation != relation_filter)
            continue;
        sum += rec.expected;
        ++count;
    }
    return count == 0 ? base_rate : sum / static_cast<double>(count);
}

const Opinion& OpinionStore::record_experience(DeviceId evaluator, IdentityId subject,
                                               Outcome outcome, double base_rate)
{
    auto [it, inserted] = opinions_.try_emplace({evaluator, subject}, Opinion{0, 0, base_rate});
    if (outcome == Outcome::Positive)
        ++it->second.pos;
    else
        ++it->second.neg;
    return it->second;
}

const Opinion* OpinionStore::find(DeviceId evaluator, IdentityId subject) const
{
    auto it = opinions_.find({evaluator, subject});
    return it == opinions_.end() ? nullptr : &it->second;
}

double OpinionStore::direct_trust(DeviceId evaluator, IdentityId subject, double base_rate) const
{
    const Opinion* op = find(evaluator, subject);
    return op ? expected_value(*op) : base_rate;
}

std::vector<std::pair<IdentityId, Opinion>> OpinionStore::opinions_of(DeviceId evaluator) const
{
    std::vector<std::pair<IdentityId, Opinion>> out;
    auto it = opinions_.lower_bound({evaluator, IdentityId{0}});
    for (; it != opinions_.end() && it->first.first == evaluator; ++it)
        out.emplace_back(it->first.second, it->second);
    return out;
}

std::uint64_t OpinionStore::total_experiences() const
{
    std::uint64_t total = 0;
    for (const auto& [key, op] : opinions_)
        total += op.pos + op.neg;
    return total;
}

void RecommendationCache::store(DeviceId receiver, IdentityId subject, const Recommendation& rec)
{
    auto& list = entries_[receiver][subject];
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const Recommendation& r) { return r.recommender == rec.recommender; });
    if (it != list.end())
        *it = rec;
    else
        list.push_back(rec);
}

std::span<const Recommendation> RecommendationCache::about(DeviceId receiver, IdentityId subject) const
{
    auto r = entries_.find(receiver);
    if (r == entries_.end())
        return {};
    auto s = r->second.find(subject);
    if (s == r->second.end())
        return {};
    return s->second;
}

std::size_t RecommendationCache::entry_count(DeviceId receiver) const
{
    auto r = entries_.find(receiver);
    if (r == entries_.end())
        return 0;
    std::size_t n = 0;
    for (const auto& [subject, list] : r->second)
        n += list.size();
    return n;
}

std::size_t RecommendationCache::total_entries() const
{
    std::size_t n = 0;
    for (const auto& [receiver, subjects] : entries_)
        n += entry_count(receiver);
    return n;
}

TrustAssessment assess(DeviceId evaluator, IdentityId subject, double direct, double similarity,
                       double recommendation, RelationType relation_filter, double time)
{
    return {evaluator,      subject,         direct,
            similarity,     recommendation,  relation_filter,
            overall_trust(direct, similarity, recommendation, relation_filter),
            time};
}

} // namespace electron
