#include "electron/error.hpp"
#include "electron/io.hpp"

#include <json.hpp>
#include <set>

namespace electron {

using nlohmann::json;

namespace {

json social_to_json(const SocialModel& s)
{
    return {{"group_size", s.group_size},
            {"rewire_prob", s.rewire_prob},
            {"owner_size", s.owner_size},
            {"batches", s.batches},
            {"work_groups", s.work_groups},
            {"group_interests", s.group_interests},
            {"context_interests", s.context_interests},
            {"context_topic_pool", s.context_topic_pool}};
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where)
{
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void take(const json& j, const char* key, T& out)
{
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

SocialModel social_from_json(const json& j)
{
    reject_unknown(j,
                   {"group_size", "rewire_prob", "owner_size", "batches", "work_groups", "group_interests",
                    "context_interests", "context_topic_pool"},
                   "social");
    SocialModel s;
    take(j, "group_size", s.group_size);
    take(j, "rewire_prob", s.rewire_prob);
    take(j, "owner_size", s.owner_size);
    take(j, "batches", s.batches);
    take(j, "work_groups", s.work_groups);
    take(j, "group_interests", s.group_interests);
    take(j, "context_interests", s.context_interests);
    take(j, "context_topic_pool", s.context_topic_pool);
    return s;
}

json to_json_object(const ScenarioConfig& c)
{
    json base_rates = json::object();
    const auto table = c.context_table();
    for (const auto& [context, rate] : table.entries())
        base_rates[context] = rate;
    return {{"name", c.name},
            {"node_count", c.node_count},
            {"attacker_fraction", c.attacker_fraction},
            {"width", c.width},
            {"height", c.height},
            {"speed", c.speed},
            {"duration", c.duration},
            {"context", c.context},
            {"base_rates", base_rates},
            {"relation_filter", std::string(to_string(c.relation_filter))},
            {"similarity_threshold", c.similarity_threshold},
            {"friendship_weight", c.weights.friendship},
            {"interest_weight", c.weights.interest},
            {"trust_threshold", c.trust_threshold},
            {"interaction_radius", c.interaction_radius},
            {"interaction_period", c.interaction_period},
            {"p_positive_legit", c.p_positive_legit},
            {"p_negative_attacker", c.p_negative_attacker},
            {"rng_seed", c.rng_seed},
            {"epoch_interval", c.epoch_interval},
            {"time_step", c.time_step},
            {"manager_fraction", c.manager_fraction},
            {"behavior", std::string(to_string(c.behavior))},
            {"identity_source", std::string(to_string(c.identity_source))},
            {"pool_size", c.pool_size},
            {"attempt_interval", c.attempt_interval},
            {"speed_factor", c.speed_factor},
            {"deny_streak_limit", c.deny_streak_limit},
            {"idle_fraction", c.idle_fraction},
            {"eavesdrop_radius", c.eavesdrop_radius},
            {"forged_set_size", c.forged_set_size},
            {"deny_retry_cooldown", c.deny_retry_cooldown},
            {"social", social_to_json(c.social)},
            {"friends_path", c.friends_path},
            {"roster_path", c.roster_path}};
}

ScenarioConfig from_json_object(const json& j)
{
    if (!j.is_object())
        throw ConfigError("configuration must be a JSON object");
    reject_unknown(j,
                   {"name", "node_count", "attacker_fraction", "width", "height", "speed", "duration", "context",
                    "base_rates", "relation_filter", "similarity_threshold", "friendship_weight", "interest_weight",
                    "trust_threshold", "interaction_radius", "interaction_period", "p_positive_legit",
                    "p_negative_attacker", "rng_seed", "epoch_interval", "time_step", "manager_fraction", "behavior",
                    "identity_source", "pool_size", "attempt_interval", "speed_factor", "deny_streak_limit",
                    "idle_fraction", "eavesdrop_radius", "forged_set_size", "deny_retry_cooldown", "social",
                    "friends_path", "roster_path"},
                   "config");
    ScenarioConfig c;
    take(j, "name", c.name);
    take(j, "node_count", c.node_count);
    take(j, "attacker_fraction", c.attacker_fraction);
    take(j, "width", c.width);
    take(j, "height", c.height);
    take(j, "speed", c.speed);
    take(j, "duration", c.duration);
    take(j, "context", c.context);
    take(j, "base_rates", c.base_rates);
    take(j, "similarity_threshold", c.similarity_threshold);
    take(j, "friendship_weight", c.weights.friendship);
    take(j, "interest_weight", c.weights.interest);
    take(j, "trust_threshold", c.trust_threshold);
    take(j, "interaction_radius", c.interaction_radius);
    take(j, "interaction_period", c.interaction_period);
    take(j, "p_positive_legit", c.p_positive_legit);
    take(j, "p_negative_attacker", c.p_negative_attacker);
    take(j, "rng_seed", c.rng_seed);
    take(j, "epoch_interval", c.epoch_interval);
    take(j, "time_step", c.time_step);
    take(j, "manager_fraction", c.manager_fraction);
    take(j, "pool_size", c.pool_size);
    take(j, "attempt_interval", c.attempt_interval);
    take(j, "speed_factor", c.speed_factor);
    take(j, "deny_streak_limit", c.deny_streak_limit);
    take(j, "idle_fraction", c.idle_fraction);
    take(j, "eavesdrop_radius", c.eavesdrop_radius);
    take(j, "forged_set_size", c.forged_set_size);
    take(j, "deny_retry_cooldown", c.deny_retry_cooldown);
    take(j, "friends_path", c.friends_path);
    take(j, "roster_path", c.roster_path);

    std::string text;
    if (j.contains("relation_filter")) {
        take(j, "relation_filter", text);
        c.relation_filter = parse_relation(text);
    }
    if (j.contains("behavior")) {
        take(j, "behavior", text);
        c.behavior = parse_behavior(text);
    }
    if (j.contains("identity_source")) {
        take(j, "identity_source", text);
        c.identity_source = parse_attack_source(text);
    }
    if (j.contains("social"))
        c.social = social_from_json(j.at("social"));
    c.validate();
    return c;
}

json parse_document(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

std::string config_to_json(const ScenarioConfig& cfg)
{
    return to_json_object(cfg).dump(2) + "\n";
}

ScenarioConfig config_from_json(std::string_view text)
{
    return from_json_object(parse_document(text));
}

std::string manifest_to_json(const RunManifest& manifest)
{
    json j{{"config", to_json_object(manifest.config)}, {"seeds", manifest.seeds}};
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text)
{
    const json j = parse_document(text);
    RunManifest m;
    if (j.is_object() && j.contains("config")) {
        reject_unknown(j, {"config", "seeds"}, "manifest");
        m.config = from_json_object(j.at("config"));
        take(j, "seeds", m.seeds);
    } else {
        m.config = from_json_object(j);
    }
    if (m.seeds.empty())
        m.seeds.push_back(m.config.rng_seed);
    return m;
}

} // namespace electron
