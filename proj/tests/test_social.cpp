#include "support.hpp"

#include <doctest.h>
#include <electron/error.hpp>
#include <electron/trust.hpp>

using namespace electron;
using namespace electron::testing;

TEST_CASE("default base rates per context")
{
    ContextTable t;
    CHECK(t.base_rate_of(ContextKind::Residence) == 1.0);
    CHECK(t.base_rate_of(ContextKind::Office) == 0.7);
    CHECK(t.base_rate_of(ContextKind::School) == 0.5);
    CHECK(t.base_rate_of(ContextKind::Gym) == 0.4);
    CHECK(t.base_rate_of(ContextKind::Park) == 0.2);
    CHECK(t.base_rate_of("park") == 0.2);
}

TEST_CASE("custom context passes its configured rate through")
{
    ContextTable t;
    t.set_base_rate("library", 0.55);
    CHECK(t.base_rate_of("library") == 0.55);
    CHECK(t.contains("library"));
    t.set_base_rate("office", 0.9);
    CHECK(t.base_rate_of(ContextKind::Office) == 0.9);
}

TEST_CASE("unknown context and out-of-range rates are configuration errors")
{
    ContextTable t;
    CHECK_THROWS_AS(t.base_rate_of("mall"), ConfigError);
    CHECK_THROWS_AS(t.set_base_rate("mall", 1.5), ConfigError);
    CHECK_THROWS_AS(t.set_base_rate("mall", -0.1), ConfigError);
    CHECK_THROWS_AS(parse_context("mall"), ConfigError);
    CHECK(parse_context("gym") == ContextKind::Gym);
}

TEST_CASE("relation factors")
{
    CHECK(relation_gamma(RelationType::CLOR) == 0.3);
    CHECK(relation_gamma(RelationType::CWOR) == 0.2);
    CHECK(relation_gamma(RelationType::OOR) == 0.2);
    CHECK(relation_gamma(RelationType::SOR) == 0.1);
    CHECK(relation_gamma(RelationType::POR) == 0.1);
    for (auto r : kAllRelations) {
        CHECK(relation_gamma(r) >= 0.0);
        CHECK(relation_gamma(r) <= 1.0);
        CHECK(parse_relation(to_string(r)) == r);
    }
    CHECK(parse_relation("clor") == RelationType::CLOR);
    CHECK_THROWS_AS(parse_relation("xor"), ConfigError);
}

TEST_CASE("classify_relation examples")
{
    SUBCASE("same owner, different batch is OOR")
    {
        CHECK(classify_relation(device(DeviceClass::Subordinate, "ann", "b1"),
                                device(DeviceClass::Subordinate, "ann", "b2"))
                  .type == RelationType::OOR);
    }
    SUBCASE("same batch, different owner is POR")
    {
        CHECK(classify_relation(device(DeviceClass::Subordinate, "ann", "b1"),
                                device(DeviceClass::Subordinate, "bob", "b1"))
                  .type == RelationType::POR);
    }
    SUBCASE("owner and batch both shared resolves to OOR")
    {
        CHECK(classify_relation(device(DeviceClass::Subordinate, "ann", "b1"),
                                device(DeviceClass::Subordinate, "ann", "b1"))
                  .type == RelationType::OOR);
    }
    SUBCASE("home place gives CLOR, work group gives CWOR")
    {
        auto a = device(DeviceClass::Subordinate, "ann", "b1");
        auto b = device(DeviceClass::Subordinate, "bob", "b2");
        a.home_place = b.home_place = "flat-3";
        a.work_group = b.work_group = "lab";
        CHECK(classify_relation(a, b).type == RelationType::CLOR);
        b.home_place = "flat-4";
        CHECK(classify_relation(a, b).type == RelationType::CWOR);
        b.home_place.reset();
        a.home_place.reset();
        CHECK(classify_relation(a, b).type == RelationType::CWOR);
    }
    SUBCASE("fallback is SOR, weak without a friendship edge")
    {
        auto a = device(DeviceClass::Subordinate, "ann", "b1");
        auto b = device(DeviceClass::Subordinate, "bob", "b2");
        a.id = DeviceId{0};
        b.id = DeviceId{1};
        auto r = classify_relation(a, b);
        CHECK(r.type == RelationType::SOR);
        CHECK(r.weak);
        a.profile.friends.insert(b.id);
        r = classify_relation(a, b);
        CHECK(r.type == RelationType::SOR);
        CHECK_FALSE(r.weak);
        CHECK_FALSE(classify_relation(b, a).weak);
    }
}

TEST_CASE("classify_relation is symmetric over random attribute draws")
{
    Engine rng(11);
    const char* owners[] = {"o1", "o2", "o3"};
    const char* batches[] = {"b1", "b2", "b3"};
    const char* places[] = {"p1", "p2"};
    auto random_device = [&](std::uint32_t id) {
        Device d = device(DeviceClass::Subordinate, owners[uniform_index(rng, 3)], batches[uniform_index(rng, 3)]);
        d.id = DeviceId{id};
        if (bernoulli(rng, 0.5))
            d.home_place = places[uniform_index(rng, 2)];
        if (bernoulli(rng, 0.5))
            d.work_group = places[uniform_index(rng, 2)];
        if (bernoulli(rng, 0.3))
            d.profile.friends.insert(DeviceId{id ^ 1u});
        return d;
    };
    for (int k = 0; k < 2000; ++k) {
        const auto a = random_device(0);
        const auto b = random_device(1);
        const auto ab = classify_relation(a, b);
        const auto ba = classify_relation(b, a);
        CHECK(ab.type == ba.type);
        CHECK(ab.weak == ba.weak);
    }
}

TEST_CASE("registry issues unique native identities and strips self-friendship")
{
    Registry reg;
    const auto a = reg.add_device(with_profile(device(), friends({0, 1}), {"x"}));
    const auto b = reg.add_device(device());
    CHECK(a == DeviceId{0});
    CHECK(b == DeviceId{1});
    CHECK_FALSE(reg.device(a).profile.friends.contains(a));
    CHECK(reg.native_identity(a) != reg.native_identity(b));
    CHECK(reg.native_device(reg.native_identity(b)) == b);
    CHECK_THROWS_AS(reg.device(DeviceId{7}), ContractViolation);
}

TEST_CASE("stolen identities are the only duplicates among presented identities")
{
    Registry reg;
    const auto victim = reg.add_device(device());
    const auto thief = reg.add_device(device());
    const auto stolen = reg.native_identity(victim);
    reg.record_theft(thief, stolen);
    reg.record_theft(thief, stolen);
    CHECK(reg.presenters(stolen) == std::vector<DeviceId>{victim, thief});
    CHECK(reg.held_identities(thief).size() == 2);

    const auto forged = reg.fabricate(thief, {});
    CHECK(reg.presenters(forged) == std::vector<DeviceId>{thief});
    CHECK_FALSE(reg.native_device(forged).has_value());
    CHECK_THROWS_AS(reg.record_theft(victim, forged), ContractViolation);

    std::map<IdentityId, int> presented;
    for (const auto& d : reg.devices())
        for (auto id : reg.held_identities(d.id))
            ++presented[id];
    for (const auto& [id, count] : presented)
        if (count > 1)
            CHECK(reg.identity(id).source == IdentitySource::Native);
}

TEST_CASE("device class parsing")
{
    CHECK(parse_device_class("manager") == DeviceClass::Manager);
    CHECK(parse_device_class("subordinate") == DeviceClass::Subordinate);
    CHECK_THROWS_AS(parse_device_class("router"), ConfigError);
}
