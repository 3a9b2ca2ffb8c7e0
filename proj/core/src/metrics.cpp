#include "electron/metrics.hpp"

#include <algorithm>

namespace electron {

std::string_view to_string(RequesterKind k)
{
    return k == RequesterKind::Attacker ? "attacker" : "legitimate";
}

std::string_view to_string(TrustSplit s)
{
    return s == TrustSplit::Internal ? "internal" : "external";
}

void ConfusionCounters::observe(RequesterKind kind, Verdict verdict)
{
    ++ar;
    if (kind == RequesterKind::Attacker) {
        ++aot;
        if (verdict == Verdict::Deny) {
            ++acd;
            ++true_pos;
        } else {
            ++false_neg;
        }
    } else if (verdict == Verdict::Grant) {
        ++lci;
        ++true_neg;
    } else {
        ++false_pos;
    }
}

bool ConfusionCounters::consistent() const
{
    return ar == acd + false_neg + lci + false_pos && true_pos == acd && true_neg == lci &&
           aot >= acd + false_neg;
}

std::optional<double> detection_rate(const ConfusionCounters& c)
{
    if (c.aot == 0)
        return std::nullopt;
    return static_cast<double>(c.acd) / static_cast<double>(c.aot) * 100.0;
}

std::optional<double> accuracy(const ConfusionCounters& c)
{
    if (c.ar == 0)
        return std::nullopt;
    return static_cast<double>(c.acd + c.lci) / static_cast<double>(c.ar);
}

std::optional<double> false_negative_rate(const ConfusionCounters& c)
{
    const auto denom = c.false_neg + c.true_pos;
    if (denom == 0)
        return std::nullopt;
    return static_cast<double>(c.false_neg) / static_cast<double>(denom) * 100.0;
}

std::optional<double> false_positive_rate(const ConfusionCounters& c)
{
    const auto denom = c.false_pos + c.true_neg;
    if (denom == 0)
        return std::nullopt;
    return static_cast<double>(c.false_pos) / static_cast<double>(denom) * 100.0;
}

std::optional<std::vector<CdfPoint>> esr_cdf(std::span<const double> values)
{
    if (values.empty())
        return std::nullopt;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<CdfPoint> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        // Ties share the cumulative share of their last occurrence.
        const auto last = std::upper_bound(sorted.begin() + static_cast<std::ptrdiff_t>(i), sorted.end(), sorted[i]);
        out.push_back({sorted[i], static_cast<double>(last - sorted.begin()) / n});
    }
    return out;
}

std::optional<std::vector<CdfPoint>> esr_cdf(std::span<const TrustSample> samples, TrustSplit split)
{
    std::vector<double> values;
    for (const auto& s : samples)
        if (s.split == split)
            values.push_back(s.assessment.trust);
    return esr_cdf(values);
}

ConfusionCounters count_decisions(std::span<const DecisionRecord> decisions)
{
    ConfusionCounters c;
    for (const auto& d : decisions)
        c.observe(d.kind, d.verdict);
    return c;
}

MetricsReport compute_report(const ConfusionCounters& counters, std::span<const TrustSample> samples)
{
    MetricsReport r;
    r.counters = counters;
    r.dr = detection_rate(counters);
    r.acc = accuracy(counters);
    r.fn = false_negative_rate(counters);
    r.fp = false_positive_rate(counters);
    r.esr_internal = esr_cdf(samples, TrustSplit::Internal);
    r.esr_external = esr_cdf(samples, TrustSplit::External);
    return r;
}

MetricsReport compute_report(std::span<const DecisionRecord> decisions,
                             std::span<const TrustSample> samples)
{
    return compute_report(count_decisions(decisions), samples);
}

} // namespace electron
