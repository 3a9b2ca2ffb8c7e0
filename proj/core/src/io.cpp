#include "electron/io.hpp"

#include "electron/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace electron {

namespace {

std::vector<std::string_view> tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool skippable(const std::vector<std::string_view>& t)
{
    return t.empty() || t.front().front() == '#';
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* what)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(fmt::format("invalid {} '{}'", what, text), line);
    return value;
}

double parse_double(std::string_view text, std::size_t line, const char* what)
{
    // from_chars for double is missing on older standard libraries.
    std::string copy(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(copy, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != copy.size() || copy.empty())
        throw ParseError(fmt::format("invalid {} '{}'", what, text), line);
    return v;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
    return in;
}

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }
std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

} // namespace

// ---------------------------------------------------------------------------
// Friendship graphs

bool FriendshipGraph::has_edge(ExternalId a, ExternalId b) const
{
    const auto e = std::make_pair(std::min(a, b), std::max(a, b));
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

std::vector<std::vector<std::size_t>> FriendshipGraph::adjacency() const
{
    std::map<ExternalId, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        index.emplace(nodes[i], i);
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& [a, b] : edges) {
        const auto ia = index.find(a);
        const auto ib = index.find(b);
        if (ia == index.end() || ib == index.end())
            continue;
        adj[ia->second].push_back(ib->second);
        adj[ib->second].push_back(ia->second);
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end());
    return adj;
}

FriendshipGraph parse_friendship_edges(std::istream& in)
{
    std::set<ExternalId> nodes;
    std::set<std::pair<ExternalId, ExternalId>> edges;
    FriendshipGraph g;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto t = tokens(line);
        if (skippable(t))
            continue;
        if (t.size() != 2)
            throw ParseError(fmt::format("expected two ids, found {} fields", t.size()), number);
        const auto a = parse_number<ExternalId>(t[0], number, "node id");
        const auto b = parse_number<ExternalId>(t[1], number, "node id");
        if (a == b) {
            ++g.self_loops_dropped;
            continue;
        }
        nodes.insert(a);
        nodes.insert(b);
        edges.emplace(std::min(a, b), std::max(a, b));
    }
    g.nodes.assign(nodes.begin(), nodes.end());
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

FriendshipGraph load_friendship_edges(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_friendship_edges(in);
}

FriendshipGraph sample_subgraph(const FriendshipGraph& g, std::size_t n, Engine& rng)
{
    if (n < 1 || n > g.node_count())
        throw ConfigError(fmt::format("sample size {} outside [1, {}]", n, g.node_count()));
    const auto adj = g.adjacency();
    std::vector<bool> seen(g.node_count(), false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t unseen = g.node_count();

    while (order.size() < n) {
        // Fresh random start among the nodes not yet reached.
        std::size_t pick = uniform_index(rng, unseen);
        std::size_t start = 0;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i])
                continue;
            if (pick-- == 0) {
                start = i;
                break;
            }
        }
        std::deque<std::size_t> queue{start};
        seen[start] = true;
        --unseen;
        while (!queue.empty() && order.size() < n) {
            const auto u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (std::size_t v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    --unseen;
                    queue.push_back(v);
                }
            }
        }
        // Anything still queued was never sampled; release it.
        for (std::size_t v : queue) {
            seen[v] = false;
            ++unseen;
        }
    }

    FriendshipGraph out;
    std::set<ExternalId> chosen;
    for (std::size_t i : order) {
        out.nodes.push_back(g.nodes[i]);
        chosen.insert(g.nodes[i]);
    }
    for (const auto& e : g.edges)
        if (chosen.contains(e.first) && chosen.contains(e.second))
            out.edges.push_back(e);
    return out;
}

FriendshipGraph small_world_graph(std::size_t n, std::size_t group_size, double rewire_prob, Engine& rng)
{
    if (group_size == 0)
        throw ConfigError("group size must be positive");
    if (rewire_prob < 0.0 || rewire_prob > 1.0)
        throw ConfigError("rewire probability must lie in [0,1]");
    FriendshipGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.nodes.push_back(i);

    std::set<std::pair<ExternalId, ExternalId>> edges;
    for (std::size_t base = 0; base < n; base += group_size) {
        const std::size_t end = std::min(n, base + group_size);
        for (std::size_t u = base; u < end; ++u)
            for (std::size_t v = u + 1; v < end; ++v)
                edges.emplace(u, v);
    }
    std::vector<std::pair<ExternalId, ExternalId>> original(edges.begin(), edges.end());
    for (const auto& e : original) {
        if (n < 3 || !bernoulli(rng, rewire_prob))
            continue;
        const ExternalId u = e.first;
        const ExternalId w = uniform_index(rng, n);
        const auto replacement = std::make_pair(std::min(u, w), std::max(u, w));
        if (w == u || edges.contains(replacement))
            continue;
        edges.erase(e);
        edges.insert(replacement);
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

// ---------------------------------------------------------------------------
// Rosters

std::vector<RosterEntry> parse_roster(std::istream& in)
{
    std::vector<RosterEntry> out;
    std::set<std::string> ids;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto t = tokens(line);
        if (skippable(t))
            continue;
        if (t.size() != 8)
            throw ParseError(fmt::format("expected 8 fields, found {}", t.size()), number);
        RosterEntry e;
        e.device = std::string(t[0]);
        if (!ids.insert(e.device).second)
            throw ParseError(fmt::format("duplicate device '{}'", e.device), number);
        try {
            e.cls = parse_device_class(t[1]);
        } catch (const ConfigError& err) {
            throw ParseError(err.what(), number);
        }
        e.owner = std::string(t[2]);
        e.batch = std::string(t[3]);
        if (t[4] != "-")
            e.home = std::string(t[4]);
        if (t[5] != "-")
            e.work = std::string(t[5]);
        e.position = {parse_double(t[6], number, "x coordinate"), parse_double(t[7], number, "y coordinate")};
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<RosterEntry> load_roster(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_roster(in);
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_metric(std::optional<double> v)
{
    return v ? fixed6(*v) : std::string("N/A");
}

void write_metrics_header(std::ostream& os)
{
    os << "scenario,context,relation,seed,DR,ACC,FN,FP\n";
}

void write_metrics_row(std::ostream& os, const ScenarioConfig& cfg, std::uint64_t seed, const MetricsReport& report)
{
    os << csv_field(cfg.name) << ',' << csv_field(cfg.context) << ',' << to_string(cfg.relation_filter) << ','
       << seed << ',' << format_metric(report.dr) << ',' << format_metric(report.acc) << ','
       << format_metric(report.fn) << ',' << format_metric(report.fp) << '\n';
}

std::vector<MetricSummary> summarize_metrics(std::span<const MetricsReport> reports)
{
    using Getter = std::optional<double> MetricsReport::*;
    const std::pair<const char*, Getter> fields[] = {
        {"DR", &MetricsReport::dr}, {"ACC", &MetricsReport::acc}, {"FN", &MetricsReport::fn}, {"FP", &MetricsReport::fp}};
    std::vector<MetricSummary> out;
    for (const auto& [name, field] : fields) {
        MetricSummary s;
        s.metric = name;
        double sum = 0.0;
        for (const auto& r : reports)
            if (r.*field) {
                sum += *(r.*field);
                ++s.runs;
            }
        if (s.runs > 0)
            s.mean = sum / static_cast<double>(s.runs);
        if (s.runs > 1) {
            double sq = 0.0;
            for (const auto& r : reports)
                if (r.*field)
                    sq += (*(r.*field) - *s.mean) * (*(r.*field) - *s.mean);
            s.stddev = std::sqrt(sq / static_cast<double>(s.runs - 1));
            s.ci95_half = 1.96 * *s.stddev / std::sqrt(static_cast<double>(s.runs));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_summary_csv(std::ostream& os, std::span<const MetricSummary> summary)
{
    os << "metric,runs,mean,stddev,ci95_half_width\n";
    for (const auto& s : summary)
        os << s.metric << ',' << s.runs << ',' << format_metric(s.mean) << ',' << format_metric(s.stddev) << ','
           << format_metric(s.ci95_half) << '\n';
}

void write_esr_csv(std::ostream& os, const MetricsReport& report)
{
    os << "split,trust,cum_fraction\n";
    const auto emit = [&](TrustSplit split, const std::optional<std::vector<CdfPoint>>& cdf) {
        if (!cdf)
            return;
        for (const auto& p : *cdf)
            os << to_string(split) << ',' << fixed6(p.trust) << ',' << fixed6(p.cumulative) << '\n';
    };
    emit(TrustSplit::Internal, report.esr_internal);
    emit(TrustSplit::External, report.esr_external);
}

void write_decision_csv(std::ostream& os, std::span<const DecisionRecord> decisions)
{
    os << "time,manager,identity,true_device_kind,verdict,trust\n";
    for (const auto& d : decisions)
        os << fixed3(d.time) << ',' << d.manager.value << ',' << d.identity.value << ',' << to_string(d.kind) << ','
           << to_string(d.verdict) << ',' << fixed6(d.trust) << '\n';
}

void write_trust_csv(std::ostream& os, std::span<const TrustSample> samples)
{
    os << "time,evaluator,subject,relation,D,S,R,T\n";
    for (const auto& s : samples) {
        const auto& a = s.assessment;
        os << fixed3(a.time) << ',' << a.evaluator.value << ',' << a.subject.value << ','
           << to_string(a.relation_filter) << ',' << fixed6(a.direct) << ',' << fixed6(a.similarity) << ','
           << fixed6(a.recommendation) << ',' << fixed6(a.trust) << '\n';
    }
}

void write_attack_csv(std::ostream& os, std::span<const AttackRecord> attacks)
{
    os << "time,attacker_device,identity,source,behavior,target_manager\n";
    for (const auto& a : attacks)
        os << fixed3(a.time) << ',' << a.attacker.value << ',' << a.identity.value << ',' << to_string(a.source)
           << ',' << to_string(a.behavior) << ',' << a.target_manager.value << '\n';
}

void write_community_csv(std::ostream& os, std::span<const Community> communities)
{
    os << "community_id,device_id,context_kind\n";
    for (const auto& c : communities)
        for (DeviceId d : c.members)
            os << c.id.value << ',' << d.value << ',' << csv_field(c.context) << '\n';
}

} // namespace electron
