#ifndef ELECTRON_METRICS_HPP
#define ELECTRON_METRICS_HPP

#include "electron/authn.hpp"
#include "electron/ids.hpp"
#include "electron/trust.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace electron {

enum class RequesterKind { Legitimate, Attacker };

std::string_view to_string(RequesterKind k);

/// One adjudication by a Manager: a fresh access request or the periodic
/// re-evaluation of a member.
struct DecisionRecord {
    double time{};
    DeviceId manager;
    IdentityId identity;
    DeviceId presenter;
    RequesterKind kind{RequesterKind::Legitimate};
    Verdict verdict{Verdict::Deny};
    double trust{};
    bool reevaluation{false};
};

/// Detection confusion counts. An attacker identity denied is an attack
/// detected (ACD = TruePos); granted, it is a FalseNeg. A legitimate identity
/// granted is LCI (= TrueNeg); denied, a FalsePos.
struct ConfusionCounters {
    std::uint64_t acd{0};
    std::uint64_t aot{0};
    std::uint64_t lci{0};
    std::uint64_t ar{0};
    std::uint64_t false_pos{0};
    std::uint64_t true_neg{0};
    std::uint64_t false_neg{0};
    std::uint64_t true_pos{0};

    void observe(RequesterKind kind, Verdict verdict);
    /// AR = ACD + FalseNeg + LCI + FalsePos, TruePos = ACD, TrueNeg = LCI.
    bool consistent() const;

    friend bool operator==(const ConfusionCounters&, const ConfusionCounters&) = default;
};

// Each rate is empty when its denominator is zero.
std::optional<double> detection_rate(const ConfusionCounters& c);      // percent
std::optional<double> accuracy(const ConfusionCounters& c);            // [0,1]
std::optional<double> false_negative_rate(const ConfusionCounters& c); // percent
std::optional<double> false_positive_rate(const ConfusionCounters& c); // percent

enum class TrustSplit { Internal, External };

std::string_view to_string(TrustSplit s);

struct TrustSample {
    TrustAssessment assessment;
    TrustSplit split{TrustSplit::External};
    RequesterKind kind{RequesterKind::Legitimate};
};

struct CdfPoint {
    double trust{};
    double cumulative{};
};

/// Empirical CDF: one point per sample, ascending, value = share of samples <= it.
std::optional<std::vector<CdfPoint>> esr_cdf(std::span<const double> values);
std::optional<std::vector<CdfPoint>> esr_cdf(std::span<const TrustSample> samples, TrustSplit split);

struct MetricsReport {
    ConfusionCounters counters;
    std::optional<double> dr;
    std::optional<double> acc;
    std::optional<double> fn;
    std::optional<double> fp;
    std::optional<std::vector<CdfPoint>> esr_internal;
    std::optional<std::vector<CdfPoint>> esr_external;
};

ConfusionCounters count_decisions(std::span<const DecisionRecord> decisions);
MetricsReport compute_report(const ConfusionCounters& counters, std::span<const TrustSample> samples);
MetricsReport compute_report(std::span<const DecisionRecord> decisions,
                             std::span<const TrustSample> samples);

} // namespace electron

#endif // ELECTRON_METRICS_HPP
