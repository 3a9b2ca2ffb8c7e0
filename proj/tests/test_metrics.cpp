#include "oracles.hpp"

#include <doctest.h>
#include <electron/metrics.hpp>
#include <electron/rng.hpp>

#include <cmath>

using namespace electron;

namespace {

ConfusionCounters counters(std::uint64_t acd, std::uint64_t aot, std::uint64_t lci, std::uint64_t ar)
{
    ConfusionCounters c;
    c.acd = c.true_pos = acd;
    c.aot = aot;
    c.false_neg = aot - acd;
    c.lci = c.true_neg = lci;
    c.ar = ar;
    c.false_pos = ar - aot - lci;
    return c;
}

std::vector<DecisionRecord> random_log(Engine& rng, std::size_t n)
{
    std::vector<DecisionRecord> log;
    const double attack_share = uniform01(rng);
    const double deny_share = uniform01(rng);
    for (std::size_t k = 0; k < n; ++k) {
        DecisionRecord d;
        d.time = static_cast<double>(k);
        d.kind = bernoulli(rng, attack_share) ? RequesterKind::Attacker : RequesterKind::Legitimate;
        d.verdict = bernoulli(rng, deny_share) ? Verdict::Deny : Verdict::Grant;
        d.trust = uniform01(rng);
        log.push_back(d);
    }
    return log;
}

} // namespace

TEST_CASE("detection rate")
{
    CHECK(*detection_rate(counters(9, 10, 0, 10)) == doctest::Approx(90.0));
    CHECK(*detection_rate(counters(5, 5, 0, 5)) == 100.0);
    CHECK(*detection_rate(counters(0, 5, 0, 5)) == 0.0);
    CHECK_FALSE(detection_rate(counters(0, 0, 3, 3)).has_value());
}

TEST_CASE("accuracy")
{
    CHECK(*accuracy(counters(8, 10, 85, 100)) == doctest::Approx(0.93));
    CHECK(*accuracy(counters(10, 10, 90, 100)) == 1.0);
    CHECK(*accuracy(counters(0, 10, 0, 100)) == 0.0);
    CHECK_FALSE(accuracy(ConfusionCounters{}).has_value());
}

TEST_CASE("false negative rate")
{
    CHECK(*false_negative_rate(counters(7, 10, 0, 10)) == doctest::Approx(30.0));
    CHECK(*false_negative_rate(counters(7, 7, 0, 7)) == 0.0);
    CHECK(*false_negative_rate(counters(0, 4, 0, 4)) == 100.0);
    CHECK_FALSE(false_negative_rate(counters(0, 0, 2, 2)).has_value());
}

TEST_CASE("false positive rate")
{
    CHECK(*false_positive_rate(counters(0, 0, 10, 10)) == 0.0);
    CHECK(*false_positive_rate(counters(0, 0, 5, 10)) == 50.0);
    CHECK(*false_positive_rate(counters(0, 0, 3, 4)) == doctest::Approx(25.0));
    CHECK_FALSE(false_positive_rate(counters(3, 3, 0, 3)).has_value());
}

TEST_CASE("observe classifies each decision once")
{
    ConfusionCounters c;
    c.observe(RequesterKind::Attacker, Verdict::Deny);
    c.observe(RequesterKind::Attacker, Verdict::Grant);
    c.observe(RequesterKind::Legitimate, Verdict::Grant);
    c.observe(RequesterKind::Legitimate, Verdict::Deny);
    CHECK(c == counters(1, 2, 1, 4));
    CHECK(c.consistent());
    c.true_pos += 1;
    CHECK_FALSE(c.consistent());
}

TEST_CASE("incremental counters equal an independent recount on random logs")
{
    Engine rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const auto log = random_log(rng, uniform_index(rng, 10001));
        ConfusionCounters inc;
        for (const auto& d : log) {
            inc.observe(d.kind, d.verdict);
            REQUIRE(inc.consistent());
        }
        CHECK(inc == oracle::recount(log));
        CHECK(count_decisions(log) == inc);
        if (inc.aot > 0 && inc.aot == inc.false_neg + inc.true_pos)
            CHECK(std::abs(*detection_rate(inc) - (100.0 - *false_negative_rate(inc))) <= 1e-9);
    }
}

TEST_CASE("ESR cumulative distribution")
{
    SUBCASE("constant samples step at that value")
    {
        const std::vector<double> v{0.5, 0.5, 0.5};
        const auto cdf = esr_cdf(v);
        REQUIRE(cdf);
        for (const auto& p : *cdf) {
            CHECK(p.trust == 0.5);
            CHECK(p.cumulative == 1.0);
        }
    }
    SUBCASE("ties share their rank")
    {
        const std::vector<double> v{0.8, 0.4, 0.2, 0.4};
        const auto cdf = esr_cdf(v);
        REQUIRE(cdf);
        REQUIRE(cdf->size() == 4);
        const double trust[] = {0.2, 0.4, 0.4, 0.8};
        const double cum[] = {0.25, 0.75, 0.75, 1.0};
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK((*cdf)[k].trust == trust[k]);
            CHECK((*cdf)[k].cumulative == cum[k]);
        }
    }
    SUBCASE("empty input is undefined")
    {
        CHECK_FALSE(esr_cdf(std::vector<double>{}).has_value());
    }
    SUBCASE("random samples give a nondecreasing curve ending at one")
    {
        Engine rng(59);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(1 + uniform_index(rng, 300));
            for (auto& x : v)
                x = std::round(uniform01(rng) * 20) / 20;
            const auto cdf = esr_cdf(v);
            REQUIRE(cdf);
            CHECK(cdf->front().cumulative > 0.0);
            CHECK(cdf->back().cumulative == 1.0);
            for (std::size_t k = 1; k < cdf->size(); ++k) {
                CHECK((*cdf)[k].trust >= (*cdf)[k - 1].trust);
                CHECK((*cdf)[k].cumulative >= (*cdf)[k - 1].cumulative);
            }
        }
    }
}

TEST_CASE("ESR series are split by requester position")
{
    std::vector<TrustSample> samples(3);
    samples[0].assessment.trust = 0.3;
    samples[0].split = TrustSplit::Internal;
    samples[1].assessment.trust = 0.7;
    samples[1].split = TrustSplit::External;
    samples[2].assessment.trust = 0.1;
    samples[2].split = TrustSplit::External;
    const auto internal = esr_cdf(samples, TrustSplit::Internal);
    const auto external = esr_cdf(samples, TrustSplit::External);
    REQUIRE(internal);
    REQUIRE(external);
    CHECK(internal->size() == 1);
    CHECK(external->size() == 2);
    CHECK(external->front().trust == 0.1);
    CHECK_FALSE(esr_cdf(std::span<const TrustSample>{samples.data(), 1}, TrustSplit::External).has_value());
}

TEST_CASE("report from an empty log flags every metric undefined")
{
    const auto r = compute_report(std::vector<DecisionRecord>{}, std::vector<TrustSample>{});
    CHECK_FALSE(r.dr);
    CHECK_FALSE(r.acc);
    CHECK_FALSE(r.fn);
    CHECK_FALSE(r.fp);
    CHECK_FALSE(r.esr_internal);
    CHECK_FALSE(r.esr_external);
}
