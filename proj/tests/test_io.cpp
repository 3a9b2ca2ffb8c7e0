#include <doctest.h>
#include <electron/error.hpp>
#include <electron/io.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

using namespace electron;

namespace {

FriendshipGraph parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_friendship_edges(in);
}

const std::string kData = ELECTRON_TEST_DATA;

} // namespace

TEST_CASE("edge lists deduplicate and drop self-loops")
{
    const auto g = parse("1 2\n2 1\n");
    CHECK(g.edge_count() == 1);
    CHECK(g.node_count() == 2);
    CHECK(g.has_edge(2, 1));

    const auto loop = parse("3 3\n");
    CHECK(loop.edge_count() == 0);
    CHECK(loop.self_loops_dropped == 1);

    const auto mixed = parse("# header\n\n5\t6\r\n  7   5 \n");
    CHECK(mixed.edge_count() == 2);
    CHECK(mixed.nodes == std::vector<ExternalId>{5, 6, 7});

    CHECK(parse("").edge_count() == 0);
    CHECK(parse("").node_count() == 0);
}

TEST_CASE("malformed edge lines report their line number")
{
    try {
        parse("1 2\n# ok\n3 x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
    CHECK_THROWS_AS(load_friendship_edges(kData + "/missing.txt"), std::runtime_error);
}

TEST_CASE("loading is order-insensitive and idempotent")
{
    const auto g = load_friendship_edges(kData + "/friends_small.txt");
    CHECK(g.self_loops_dropped == 1);
    CHECK(g.edge_count() == 12);
    CHECK(g.node_count() == 10);

    std::vector<std::string> lines;
    for (const auto& [a, b] : g.edges)
        lines.push_back(std::to_string(b) + " " + std::to_string(a));
    Engine rng(89);
    for (int trial = 0; trial < 20; ++trial) {
        for (std::size_t k = lines.size(); k > 1; --k)
            std::swap(lines[k - 1], lines[uniform_index(rng, k)]);
        std::string text;
        for (const auto& l : lines)
            text += l + "\n" + (trial % 2 ? l + "\n" : "");
        const auto shuffled = parse(text);
        CHECK(shuffled.edges == g.edges);
        CHECK(shuffled.nodes == g.nodes);
    }
    CHECK(load_friendship_edges(kData + "/friends_small.txt").edges == g.edges);
}

TEST_CASE("breadth-first sampling")
{
    const auto g = load_friendship_edges(kData + "/friends_small.txt");
    Engine rng(97);

    SUBCASE("the whole graph is an identity sample")
    {
        auto s = sample_subgraph(g, g.node_count(), rng);
        auto nodes = s.nodes;
        std::sort(nodes.begin(), nodes.end());
        CHECK(nodes == g.nodes);
        CHECK(s.edges == g.edges);
    }
    SUBCASE("one node has no edges")
    {
        const auto s = sample_subgraph(g, 1, rng);
        CHECK(s.node_count() == 1);
        CHECK(s.edge_count() == 0);
    }
    SUBCASE("same seed, same sample")
    {
        Engine a(5), b(5);
        const auto sa = sample_subgraph(g, 6, a);
        const auto sb = sample_subgraph(g, 6, b);
        CHECK(sa.nodes == sb.nodes);
        CHECK(sa.edges == sb.edges);
    }
    SUBCASE("induced edges only")
    {
        const auto s = sample_subgraph(g, 5, rng);
        for (const auto& [a, b] : s.edges) {
            CHECK(std::find(s.nodes.begin(), s.nodes.end(), a) != s.nodes.end());
            CHECK(std::find(s.nodes.begin(), s.nodes.end(), b) != s.nodes.end());
            CHECK(g.has_edge(a, b));
        }
        std::size_t induced = 0;
        for (const auto& [a, b] : g.edges)
            induced += std::find(s.nodes.begin(), s.nodes.end(), a) != s.nodes.end() &&
                       std::find(s.nodes.begin(), s.nodes.end(), b) != s.nodes.end();
        CHECK(induced == s.edge_count());
    }
    SUBCASE("sampling across components")
    {
        const auto split = parse("1 2\n3 4\n5 6\n");
        const auto s = sample_subgraph(split, 6, rng);
        CHECK(s.node_count() == 6);
        CHECK(s.edge_count() == 3);
    }
    SUBCASE("size out of range")
    {
        CHECK_THROWS_AS(sample_subgraph(g, 0, rng), ConfigError);
        CHECK_THROWS_AS(sample_subgraph(g, g.node_count() + 1, rng), ConfigError);
    }
}

TEST_CASE("small world fallback")
{
    Engine a(3), b(3);
    const auto g = small_world_graph(100, 10, 0.1, a);
    CHECK(g.node_count() == 100);
    CHECK(g.edge_count() <= 10 * 45);
    CHECK(g.edge_count() > 400);
    CHECK(g.edges == small_world_graph(100, 10, 0.1, b).edges);
    for (const auto& [u, v] : g.edges)
        CHECK(u < v);

    Engine c(3);
    const auto caves = small_world_graph(30, 10, 0.0, c);
    CHECK(caves.edge_count() == 3 * 45);
    CHECK(caves.has_edge(0, 9));
    CHECK_FALSE(caves.has_edge(9, 10));
}

TEST_CASE("full Brightkite graph counts (set ELECTRON_BRIGHTKITE_EDGES to run)")
{
    const char* path = std::getenv("ELECTRON_BRIGHTKITE_EDGES");
    if (path == nullptr) {
        MESSAGE("ELECTRON_BRIGHTKITE_EDGES not set; dataset check skipped");
        return;
    }
    const auto g = load_friendship_edges(path);
    CHECK(g.node_count() == 58228);
    CHECK(g.edge_count() == 214078);
}

TEST_CASE("roster parsing")
{
    const auto roster = load_roster(kData + "/roster_small.txt");
    REQUIRE(roster.size() == 10);
    CHECK(roster[0].device == "0");
    CHECK(roster[0].owner == "alice");
    CHECK(roster[0].cls == DeviceClass::Manager);
    CHECK(roster[0].home == "flat-1");
    CHECK_FALSE(roster[0].work.has_value());
    CHECK(roster[2].work == "lab");
    CHECK(roster[5].position == Position{63, 62});

    std::istringstream dup("a manager o b - - 1 1\na subordinate o b - - 1 1\n");
    CHECK_THROWS_AS(parse_roster(dup), ParseError);
    std::istringstream short_line("a manager o b - - 1\n");
    CHECK_THROWS_AS(parse_roster(short_line), ParseError);
    std::istringstream bad_class("a router o b - - 1 1\n");
    try {
        parse_roster(bad_class);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    std::istringstream bad_x("# c\na manager o b - - x 1\n");
    try {
        parse_roster(bad_x);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("roster-driven scenario keeps declared classes and friendships")
{
    const auto roster = load_roster(kData + "/roster_small.txt");
    const auto friends = load_friendship_edges(kData + "/friends_small.txt");
    ScenarioConfig cfg;
    cfg.node_count = roster.size();
    cfg.duration = 60.0;
    Engine rng(1);
    const auto pop = build_population(cfg, rng, &friends, roster);
    CHECK(pop.attackers.size() == 1);
    CHECK(pop.managers.size() == 2);
    for (DeviceId m : pop.managers)
        CHECK(roster[m.value].cls == DeviceClass::Manager);
    for (DeviceId a : pop.attackers)
        CHECK(roster[a.value].cls == DeviceClass::Subordinate);
    for (const auto& d : pop.registry.devices()) {
        if (pop.is_attacker[d.id.value])
            continue;
        CHECK(d.owner == roster[d.id.value].owner);
        CHECK(d.batch == roster[d.id.value].batch);
        CHECK(d.home_place == roster[d.id.value].home);
        CHECK(d.work_group == roster[d.id.value].work);
        for (const auto& other : pop.registry.devices())
            if (!pop.is_attacker[other.id.value] && other.id != d.id)
                CHECK(d.profile.friends.contains(other.id) == friends.has_edge(d.id.value, other.id.value));
    }
    const auto r = run_scenario(cfg, &friends, roster);
    CHECK(r.counters.consistent());
}

TEST_CASE("CSV fields and metric rendering")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(format_metric(std::nullopt) == "N/A");
    CHECK(format_metric(12.5) == "12.500000");
}

TEST_CASE("CSV writers emit headers and one row per record")
{
    ScenarioConfig cfg;
    cfg.name = "demo,1";
    MetricsReport report;
    report.dr = 90.0;
    std::ostringstream m;
    write_metrics_header(m);
    write_metrics_row(m, cfg, 42, report);
    CHECK(m.str() == "scenario,context,relation,seed,DR,ACC,FN,FP\n\"demo,1\",school,SOR,42,90.000000,N/A,N/A,N/A\n");

    report.esr_external = std::vector<CdfPoint>{{0.25, 0.5}, {0.5, 1.0}};
    std::ostringstream e;
    write_esr_csv(e, report);
    CHECK(e.str() == "split,trust,cum_fraction\nexternal,0.250000,0.500000\nexternal,0.500000,1.000000\n");

    std::vector<DecisionRecord> decisions(1);
    decisions[0] = {1.5, DeviceId{2}, IdentityId{7}, DeviceId{9}, RequesterKind::Attacker, Verdict::Deny, 0.4, false};
    std::ostringstream d;
    write_decision_csv(d, decisions);
    CHECK(d.str() == "time,manager,identity,true_device_kind,verdict,trust\n1.500,2,7,attacker,deny,0.400000\n");

    std::vector<TrustSample> samples(1);
    samples[0].assessment = assess(DeviceId{2}, IdentityId{7}, 0.5, 0.5, 0.5, RelationType::CLOR, 3.0);
    std::ostringstream t;
    write_trust_csv(t, samples);
    CHECK(t.str() == "time,evaluator,subject,relation,D,S,R,T\n3.000,2,7,CLOR,0.500000,0.500000,0.500000,0.500000\n");

    std::vector<AttackRecord> attacks{{4.0, DeviceId{9}, IdentityId{1}, IdentitySource::Stolen, Behavior::Churn, DeviceId{2}}};
    std::ostringstream a;
    write_attack_csv(a, attacks);
    CHECK(a.str() == "time,attacker_device,identity,source,behavior,target_manager\n4.000,9,1,stolen,churn,2\n");

    std::vector<Community> communities{{CommunityId{0}, {DeviceId{0}, DeviceId{3}}, "park", 0.5}};
    std::ostringstream c;
    write_community_csv(c, communities);
    CHECK(c.str() == "community_id,device_id,context_kind\n0,0,park\n0,3,park\n");
}

TEST_CASE("seed summaries")
{
    std::vector<MetricsReport> reports(3);
    reports[0].dr = 80.0;
    reports[1].dr = 90.0;
    reports[2].dr = 100.0;
    const auto s = summarize_metrics(reports);
    REQUIRE(s.size() == 4);
    CHECK(s[0].metric == "DR");
    CHECK(s[0].runs == 3);
    CHECK(*s[0].mean == doctest::Approx(90.0));
    CHECK(*s[0].stddev == doctest::Approx(10.0));
    CHECK(s[1].runs == 0);
    CHECK_FALSE(s[1].mean.has_value());
}

TEST_CASE("configuration JSON round-trips and rejects unknown keys")
{
    ScenarioConfig cfg;
    cfg.name = "rt";
    cfg.node_count = 150;
    cfg.context = "office";
    cfg.relation_filter = RelationType::CLOR;
    cfg.behavior = Behavior::MultiIdentity;
    cfg.identity_source = IdentitySource::Fabricated;
    cfg.base_rates["library"] = 0.55;
    cfg.weights = SimilarityWeights::make(0.3, 0.7);
    cfg.social.group_size = 7;
    const auto back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back) == config_to_json(cfg));
    CHECK(back.context_table().base_rate_of("library") == 0.55);
    CHECK(back.relation_filter == RelationType::CLOR);
    CHECK(back.weights.friendship == 0.3);

    CHECK(config_from_json("{}").node_count == ScenarioConfig{}.node_count);
    CHECK_THROWS_AS(config_from_json("{\"nodes\": 3}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"social\": {\"groups\": 3}}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"node_count\": \"many\"}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"attacker_fraction\": 1.5}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"relation_filter\": \"XOR\"}"), ConfigError);
}

TEST_CASE("a manifest replays to identical event logs")
{
    RunManifest m;
    m.config.node_count = 40;
    m.config.duration = 90.0;
    m.config.context = "gym";
    m.seeds = {11, 12};
    const auto replay = manifest_from_json(manifest_to_json(m));
    CHECK(replay.seeds == m.seeds);
    for (auto seed : m.seeds) {
        auto a = m.config;
        auto b = replay.config;
        a.rng_seed = b.rng_seed = seed;
        CHECK(run_scenario(a).log.str() == run_scenario(b).log.str());
    }
    const auto bare = manifest_from_json("{\"rng_seed\": 9}");
    CHECK(bare.seeds == std::vector<std::uint64_t>{9});
}
