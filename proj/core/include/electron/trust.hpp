#ifndef ELECTRON_TRUST_HPP
#define ELECTRON_TRUST_HPP

#include "electron/ids.hpp"
#include "electron/social.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace electron {

/// Experience record about one subject, as seen by one evaluator.
struct Opinion {
    std::uint64_t pos{0};
    std::uint64_t neg{0};
    double base_rate{0.5};

    friend bool operator==(const Opinion&, const Opinion&) = default;
};

struct OpinionComponents {
    double belief{};
    double disbelief{};
    double uncertainty{};
};

/// b = pos/(pos+neg+2), d = neg/(pos+neg+2), u = 2/(pos+neg+2).
OpinionComponents opinion_components(const Opinion& op);

/// b + a*u. Direct trust and each recommendation are both this value.
double expected_value(const Opinion& op);

enum class Outcome { Positive, Negative };

std::string_view to_string(Outcome o);

struct TrustWeights {
    double direct{};         // alpha
    double similarity{};     // beta
    double recommendation{}; // gamma
};

/// gamma from the relation table; alpha = beta = (1 - gamma)/2.
TrustWeights weights_from_relation(RelationType r);

/// T = alpha*D + beta*S + gamma*R. Throws ContractViolation if any input is
/// outside [0,1].
double overall_trust(double direct, double similarity, double recommendation, RelationType r);

/// One recommender's view of a subject, tagged with the recommender's relation
/// to the evaluator.
struct Recommendation {
    DeviceId recommender;
    RelationType relation{RelationType::SOR};
    double expected{};
};

/// Mean expected value over the recommendations whose relation tag equals the
/// filter; base_rate when none match.
double recommendation(std::span<const Recommendation> recommendations, RelationType relation_filter,
                      double base_rate);

/// Opinions keyed by (evaluator, subject). Single writer: the event loop.
class OpinionStore {
public:
    using Key = std::pair<DeviceId, IdentityId>;

    /// Creates the opinion at (0,0) with `base_rate` on first contact, then
    /// increments the counter matching `outcome`.
    const Opinion& record_experience(DeviceId evaluator, IdentityId subject, Outcome outcome,
                                     double base_rate);

    const Opinion* find(DeviceId evaluator, IdentityId subject) const;

    /// Expected value of the evaluator's own opinion; base_rate for a fresh contact.
    double direct_trust(DeviceId evaluator, IdentityId subject, double base_rate) const;

    /// Opinions held by one evaluator, ordered by subject.
    std::vector<std::pair<IdentityId, Opinion>> opinions_of(DeviceId evaluator) const;

    std::uint64_t total_experiences() const;
    std::size_t size() const { return opinions_.size(); }

private:
    std::map<Key, Opinion> opinions_;
};

/// Recommendations each evaluator has received, per subject and sender.
class RecommendationCache {
public:
    /// Inserts or replaces the sender's entry for (receiver, subject).
    void store(DeviceId receiver, IdentityId subject, const Recommendation& rec);

    std::span<const Recommendation> about(DeviceId receiver, IdentityId subject) const;
    std::size_t entry_count(DeviceId receiver) const;
    std::size_t total_entries() const;

private:
    std::map<DeviceId, std::map<IdentityId, std::vector<Recommendation>>> entries_;
};

/// The (D, S, R, T) quadruple one evaluator holds about one subject.
struct TrustAssessment {
    DeviceId evaluator;
    IdentityId subject;
    double direct{};
    double similarity{};
    double recommendation{};
    RelationType relation_filter{RelationType::SOR};
    double trust{};
    double time{};
};

TrustAssessment assess(DeviceId evaluator, IdentityId subject, double direct, double similarity,
                       double recommendation, RelationType relation_filter, double time);

} // namespace electron

#endif // ELECTRON_TRUST_HPP
