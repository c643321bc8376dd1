#include "snlab/metric_graph.hpp"
#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace snlab {

std::size_t WeightedGraph::add_vertex(std::string name) {
    if (by_name_.count(name)) {
        throw PreconditionError("duplicate vertex '" + name + "'");
    }
    std::size_t idx = names_.size();
    by_name_.emplace(name, idx);
    names_.push_back(std::move(name));
    adjacency_.emplace_back();
    return idx;
}

std::optional<std::size_t> WeightedGraph::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t WeightedGraph::index_of(std::string_view name) const {
    auto idx = find(name);
    if (!idx) {
        throw PreconditionError("unknown vertex '" + std::string(name) + "'");
    }
    return *idx;
}

void WeightedGraph::add_edge(std::string_view u, std::string_view v, const Rational& weight) {
    if (weight <= 0) {
        throw PreconditionError("edge " + std::string(u) + "-" + std::string(v) + " has nonpositive weight " +
                                to_string(weight));
    }
    if (u == v) {
        throw PreconditionError("loop at vertex " + std::string(u));
    }
    auto iu = find(u);
    std::size_t a = iu ? *iu : add_vertex(std::string(u));
    auto iv = find(v);
    std::size_t b = iv ? *iv : add_vertex(std::string(v));
    add_edge(a, b, weight);
}

void WeightedGraph::add_edge(std::size_t u, std::size_t v, const Rational& weight) {
    if (u >= names_.size() || v >= names_.size()) {
        throw PreconditionError("edge endpoint out of range");
    }
    if (u == v) {
        throw PreconditionError("loop at vertex '" + names_[u] + "'");
    }
    if (weight <= 0) {
        throw PreconditionError("nonpositive weight on edge " + names_[u] + "-" + names_[v]);
    }
    if (edge_between(u, v)) {
        throw PreconditionError("multiple edge " + names_[u] + "-" + names_[v]);
    }
    std::size_t e = edges_.size();
    edges_.push_back({u, v, weight});
    auto insert = [&](std::size_t from, std::size_t to) {
        auto& list = adjacency_[from];
        auto pos = std::lower_bound(list.begin(), list.end(), std::make_pair(to, std::size_t{0}));
        list.insert(pos, {to, e});
    };
    insert(u, v);
    insert(v, u);
    validation_ = ValidationState::unvalidated;
}

std::optional<std::size_t> WeightedGraph::edge_between(std::size_t u, std::size_t v) const {
    const auto& list = adjacency_.at(u);
    auto pos = std::lower_bound(list.begin(), list.end(), std::make_pair(v, std::size_t{0}));
    if (pos != list.end() && pos->first == v) {
        return pos->second;
    }
    return std::nullopt;
}

const Rational& WeightedGraph::weight(std::size_t u, std::size_t v) const {
    auto e = edge_between(u, v);
    if (!e) {
        throw PreconditionError("no edge " + names_.at(u) + "-" + names_.at(v));
    }
    return edges_[*e].weight;
}

std::size_t WeightedGraph::max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adjacency_) {
        best = std::max(best, list.size());
    }
    return best;
}

void WeightedGraph::set_degree_bound(std::size_t bound) {
    if (bound < max_degree()) {
        throw PreconditionError("degree bound " + std::to_string(bound) + " below maximum degree " +
                                std::to_string(max_degree()));
    }
    degree_bound_ = bound;
}

std::vector<long> WeightedGraph::hop_distances(std::span<const std::size_t> sources) const {
    std::vector<long> dist(names_.size(), -1);
    std::deque<std::size_t> queue;
    for (auto s : sources) {
        if (dist.at(s) < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto [v, e] : adjacency_[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

bool WeightedGraph::connected() const {
    if (names_.empty()) {
        return true;
    }
    std::size_t zero = 0;
    auto dist = hop_distances(std::span<const std::size_t>(&zero, 1));
    return std::none_of(dist.begin(), dist.end(), [](long d) { return d < 0; });
}

bool WeightedGraph::unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1; });
}

void WeightedGraph::record_validation(const CompatibilityReport& report) {
    validation_ = report.valid() ? ValidationState::valid : ValidationState::invalid;
    validated_budget_ = report.hop_budget;
}

std::size_t hop_diameter(const WeightedGraph& graph) {
    long best = 0;
    for (std::size_t s = 0; s < graph.vertex_count(); ++s) {
        auto dist = graph.hop_distances(std::span<const std::size_t>(&s, 1));
        for (long d : dist) {
            if (d < 0) {
                throw PreconditionError("graph is disconnected");
            }
            best = std::max(best, d);
        }
    }
    return static_cast<std::size_t>(best);
}

namespace {

GraphPath make_path(const WeightedGraph& graph, std::vector<std::size_t> vertices) {
    GraphPath path;
    path.weight = 0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        path.weight += graph.weight(vertices[i - 1], vertices[i]);
    }
    path.vertices = std::move(vertices);
    return path;
}

// Drops closed sub-walks so that every vertex appears once.
std::vector<std::size_t> simplify_walk(const std::vector<std::size_t>& walk) {
    std::vector<std::size_t> out;
    std::unordered_map<std::size_t, std::size_t> position;
    for (auto v : walk) {
        auto it = position.find(v);
        if (it != position.end()) {
            for (std::size_t i = it->second + 1; i < out.size(); ++i) {
                position.erase(out[i]);
            }
            out.resize(it->second + 1);
        } else {
            position[v] = out.size();
            out.push_back(v);
        }
    }
    return out;
}

struct SourceCheck {
    std::vector<long> hops;
    std::vector<Rational> min_short;
    std::vector<Rational> max_short;
    std::vector<std::size_t> min_parent;
    std::vector<std::size_t> max_parent;
};

constexpr std::size_t no_vertex = std::numeric_limits<std::size_t>::max();

SourceCheck shortest_path_sums(const WeightedGraph& graph, std::size_t source) {
    SourceCheck sc;
    const std::size_t n = graph.vertex_count();
    sc.hops = graph.hop_distances(std::span<const std::size_t>(&source, 1));
    sc.min_short.assign(n, Rational(0));
    sc.max_short.assign(n, Rational(0));
    sc.min_parent.assign(n, no_vertex);
    sc.max_parent.assign(n, no_vertex);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sc.hops[a] < sc.hops[b]; });
    for (auto v : order) {
        if (v == source || sc.hops[v] < 0) {
            continue;
        }
        for (auto [u, e] : graph.incident(v)) {
            if (sc.hops[u] != sc.hops[v] - 1) {
                continue;
            }
            const Rational& w = graph.edges()[e].weight;
            Rational lo = sc.min_short[u] + w;
            Rational hi = sc.max_short[u] + w;
            if (sc.min_parent[v] == no_vertex || lo < sc.min_short[v]) {
                sc.min_short[v] = lo;
                sc.min_parent[v] = u;
            }
            if (sc.max_parent[v] == no_vertex || hi > sc.max_short[v]) {
                sc.max_short[v] = hi;
                sc.max_parent[v] = u;
            }
        }
    }
    return sc;
}

std::vector<std::size_t> trace(const std::vector<std::size_t>& parent, std::size_t source, std::size_t target) {
    std::vector<std::size_t> path{target};
    while (path.back() != source) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

void check_source(const WeightedGraph& graph, std::size_t source, std::size_t budget,
                  std::optional<std::size_t> only_target, std::size_t max_witnesses, CompatibilityReport& report) {
    const std::size_t n = graph.vertex_count();
    SourceCheck sc = shortest_path_sums(graph, source);

    auto wanted = [&](std::size_t t) { return t != source && (!only_target || *only_target == t); };

    for (std::size_t t = 0; t < n; ++t) {
        if (!wanted(t) || sc.min_short[t] == sc.max_short[t]) {
            continue;
        }
        report.condition1.pass = false;
        if (report.condition1.witnesses.size() < max_witnesses) {
            report.condition1.witnesses.push_back({source, t, make_path(graph, trace(sc.min_parent, source, t)),
                                                   make_path(graph, trace(sc.max_parent, source, t))});
        }
    }

    // best[h][v]: lightest walk from the source with exactly h hops ending at v.
    // Any walk that is longer but not heavier than a hop-shortest path reduces
    // to a simple path with the same property once cycles are removed, unless
    // the reduction lands on a hop-shortest path; such candidates are skipped.
    std::vector<std::vector<Rational>> best(budget + 1, std::vector<Rational>(n));
    std::vector<std::vector<std::size_t>> from(budget + 1, std::vector<std::size_t>(n, no_vertex));
    std::vector<std::vector<char>> reached(budget + 1, std::vector<char>(n, 0));
    reached[0][source] = 1;
    best[0][source] = 0;
    for (std::size_t h = 1; h <= budget; ++h) {
        for (std::size_t u = 0; u < n; ++u) {
            if (!reached[h - 1][u]) {
                continue;
            }
            for (auto [v, e] : graph.incident(u)) {
                Rational w = best[h - 1][u] + graph.edges()[e].weight;
                if (!reached[h][v] || w < best[h][v]) {
                    best[h][v] = std::move(w);
                    from[h][v] = u;
                    reached[h][v] = 1;
                }
            }
        }
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (!wanted(t) || sc.hops[t] < 0) {
            continue;
        }
        for (std::size_t h = static_cast<std::size_t>(sc.hops[t]) + 1; h <= budget; ++h) {
            if (!reached[h][t] || best[h][t] > sc.max_short[t]) {
                continue;
            }
            std::vector<std::size_t> walk{t};
            for (std::size_t layer = h; layer > 0; --layer) {
                walk.push_back(from[layer][walk.back()]);
            }
            std::reverse(walk.begin(), walk.end());
            GraphPath longer = make_path(graph, simplify_walk(walk));
            if (static_cast<long>(longer.hops()) <= sc.hops[t] || longer.weight > sc.max_short[t]) {
                continue;
            }
            report.condition2.pass = false;
            if (report.condition2.witnesses.size() < max_witnesses) {
                report.condition2.witnesses.push_back(
                    {source, t, make_path(graph, trace(sc.max_parent, source, t)), std::move(longer)});
            }
            break;
        }
    }
}

void require_connected(const WeightedGraph& graph) {
    if (graph.vertex_count() == 0) {
        throw PreconditionError("graph has no vertices");
    }
    if (!graph.connected()) {
        throw PreconditionError("graph is disconnected");
    }
}

}

CompatibilityReport validate_metric_graph(const WeightedGraph& graph, const ValidationOptions& options) {
    require_connected(graph);
    CompatibilityReport report;
    report.hop_budget = options.hop_budget ? *options.hop_budget : hop_diameter(graph) + 4;
    for (std::size_t s = 0; s < graph.vertex_count(); ++s) {
        check_source(graph, s, report.hop_budget, std::nullopt, options.max_witnesses, report);
    }
    return report;
}

CompatibilityReport validate_pair(const WeightedGraph& graph, std::size_t source, std::size_t target,
                                  std::size_t hop_budget) {
    require_connected(graph);
    CompatibilityReport report;
    report.hop_budget = hop_budget;
    check_source(graph, source, hop_budget, target, 8, report);
    return report;
}

SpaceHandle induced_metric(const WeightedGraph& graph) {
    if (graph.validation() != ValidationState::valid) {
        throw PreconditionError("induced_metric: graph has not been validated as a metric graph");
    }
    const std::size_t n = graph.vertex_count();
    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n));
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < n; ++s) {
        labels.push_back(graph.name(s));
        // weight sums along the breadth-first tree (one hop-shortest path per target)
        std::vector<char> seen(n, 0);
        std::deque<std::size_t> queue{s};
        seen[s] = 1;
        table[s][s] = 0;
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto [v, e] : graph.incident(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    table[s][v] = table[s][u] + graph.edges()[e].weight;
                    queue.push_back(v);
                }
            }
        }
    }
    bool unit = graph.unit_weights();
    return std::make_shared<FiniteMetricSpace>(unit ? "graph" : "metric-graph", std::move(labels), std::move(table),
                                               Arithmetic::exact(), false);
}

namespace {

// Shared sphere-growth search over an adjacency callback.
template <class Neighbors>
TripodSearch sphere_search(std::uint64_t root, int radius_budget, Neighbors&& neighbors, std::size_t point_cap) {
    TripodSearch result;
    std::unordered_map<std::uint64_t, long> hop;
    std::vector<std::vector<std::uint64_t>> spheres{{root}};
    hop[root] = 0;
    std::vector<std::uint64_t> nbrs;
    std::size_t total = 1;
    for (int n = 0; n <= radius_budget; ++n) {
        std::vector<std::uint64_t> next;
        for (auto v : spheres[static_cast<std::size_t>(n)]) {
            nbrs.clear();
            neighbors(v, nbrs);
            for (auto w : nbrs) {
                if (hop.emplace(w, n + 1).second) {
                    next.push_back(w);
                    if (++total > point_cap) {
                        throw HorizonExceeded("find_tripod: sphere growth exceeds point cap");
                    }
                }
            }
        }
        std::sort(next.begin(), next.end());
        spheres.push_back(std::move(next));
    }
    for (int n = 2; n <= radius_budget; ++n) {
        result.radius_searched = n;
        for (auto v : spheres[static_cast<std::size_t>(n)]) {
            nbrs.clear();
            neighbors(v, nbrs);
            std::sort(nbrs.begin(), nbrs.end());
            std::vector<std::uint64_t> outward;
            std::vector<std::uint64_t> inward;
            for (auto w : nbrs) {
                long h = hop.at(w);
                if (h == n + 1) {
                    outward.push_back(w);
                } else if (h == n - 1) {
                    inward.push_back(w);
                }
            }
            if (outward.size() < 2 || inward.empty()) {
                continue;
            }
            TripodWitness witness;
            witness.center = v;
            witness.arms = {outward[0], outward[1], inward[0]};
            witness.sphere = n;
            int links = 0;
            auto adjacent = [&](std::uint64_t a, std::uint64_t b) {
                nbrs.clear();
                neighbors(a, nbrs);
                return std::find(nbrs.begin(), nbrs.end(), b) != nbrs.end();
            };
            links += adjacent(witness.arms[0], witness.arms[1]) ? 1 : 0;
            links += adjacent(witness.arms[0], witness.arms[2]) ? 1 : 0;
            links += adjacent(witness.arms[1], witness.arms[2]) ? 1 : 0;
            witness.connections_among_arms = links;
            witness.kind = links == 0 ? TripodKind::tripod : TripodKind::semi_tripod;
            result.witness = witness;
            return result;
        }
    }
    result.diagnostics = "no sphere vertex with two outward neighbors up to radius " + std::to_string(radius_budget) +
                         " (budget exhausted; not a disproof)";
    return result;
}

}

TripodSearch find_tripod(const WeightedGraph& graph, std::size_t root, int radius_budget) {
    if (root >= graph.vertex_count()) {
        throw PreconditionError("find_tripod: root out of range");
    }
    return sphere_search(
        root, radius_budget,
        [&](std::uint64_t v, std::vector<std::uint64_t>& out) {
            for (auto [w, e] : graph.incident(static_cast<std::size_t>(v))) {
                out.push_back(w);
            }
        },
        default_point_cap);
}

TripodSearch find_tripod(const GraphStructure& graph, PointId root, int radius_budget, std::size_t point_cap) {
    std::vector<PointId> buffer;
    return sphere_search(
        root.value, radius_budget,
        [&](std::uint64_t v, std::vector<std::uint64_t>& out) {
            buffer.clear();
            graph.neighbors(PointId{v}, buffer);
            for (auto p : buffer) {
                out.push_back(p.value);
            }
        },
        point_cap);
}

namespace {

template <class Adjacent>
bool tripod_predicate(const TripodWitness& w, Adjacent&& adjacent) {
    const auto& a = w.arms;
    if (a[0] == a[1] || a[0] == a[2] || a[1] == a[2]) {
        return false;
    }
    for (auto arm : a) {
        if (arm == w.center || !adjacent(w.center, arm)) {
            return false;
        }
    }
    int links = (adjacent(a[0], a[1]) ? 1 : 0) + (adjacent(a[0], a[2]) ? 1 : 0) + (adjacent(a[1], a[2]) ? 1 : 0);
    if (links != w.connections_among_arms) {
        return false;
    }
    return w.kind == TripodKind::tripod ? links == 0 : links <= 1;
}

}

bool satisfies_tripod_definition(const WeightedGraph& graph, const TripodWitness& witness) {
    return tripod_predicate(witness, [&](std::uint64_t u, std::uint64_t v) {
        if (u >= graph.vertex_count() || v >= graph.vertex_count()) {
            return false;
        }
        return graph.edge_between(static_cast<std::size_t>(u), static_cast<std::size_t>(v)).has_value();
    });
}

bool satisfies_tripod_definition(const GraphStructure& graph, const TripodWitness& witness) {
    std::vector<PointId> buffer;
    return tripod_predicate(witness, [&](std::uint64_t u, std::uint64_t v) {
        buffer.clear();
        graph.neighbors(PointId{u}, buffer);
        return std::find(buffer.begin(), buffer.end(), PointId{v}) != buffer.end();
    });
}

GraphBoundary graph_boundary(const WeightedGraph& graph, const PointSet& A, int k) {
    if (A.empty()) {
        throw PreconditionError("graph_boundary: empty set");
    }
    if (k < 0) {
        throw PreconditionError("graph_boundary: k must be nonnegative");
    }
    std::vector<std::size_t> sources;
    for (auto p : A) {
        if (p.value >= graph.vertex_count()) {
            throw PreconditionError("graph_boundary: vertex index out of range");
        }
        sources.push_back(static_cast<std::size_t>(p.value));
    }
    auto hops = graph.hop_distances(sources);
    std::vector<PointId> hop_boundary;
    for (std::size_t v = 0; v < hops.size(); ++v) {
        if (hops[v] > 0 && hops[v] <= k) {
            hop_boundary.push_back(PointId{v});
        }
    }
    GraphBoundary out;
    out.k = k;
    out.hop_boundary = PointSet(std::move(hop_boundary));
    auto space = induced_metric(graph);
    out.discrete_boundary = discrete_neighborhood(*space, A, k).dB;
    out.contained = out.discrete_boundary.is_subset_of(out.hop_boundary);
    return out;
}

namespace {

Rational json_number(const nlohmann::json& value) {
    if (value.is_string()) {
        return parse_rational(value.get<std::string>());
    }
    if (value.is_number_integer()) {
        return Rational(value.get<long>());
    }
    if (value.is_number_float()) {
        // shortest round-trip decimal, then exact decimal parsing
        double d = value.get<double>();
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
        return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
    }
    throw ParseError("expected a number or rational string, got " + value.dump());
}

std::string json_name(const nlohmann::json& value) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_number_integer()) {
        return std::to_string(value.get<long>());
    }
    throw ParseError("vertex names must be strings or integers, got " + value.dump());
}

}

WeightedGraph parse_graph_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "weighted_graph") {
        throw ParseError("expected an object with \"type\": \"weighted_graph\"");
    }
    WeightedGraph graph;
    try {
        if (doc.contains("vertices")) {
            for (const auto& v : doc.at("vertices")) {
                graph.add_vertex(json_name(v));
            }
        }
        if (!doc.contains("edges") || !doc.at("edges").is_array()) {
            throw ParseError("missing \"edges\" array");
        }
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) {
                throw ParseError("edge entries must be [u, v, weight], got " + e.dump());
            }
            Rational w = e.size() == 3 ? json_number(e[2]) : Rational(1);
            graph.add_edge(json_name(e[0]), json_name(e[1]), w);
        }
        if (doc.contains("degree_bound")) {
            graph.set_degree_bound(doc.at("degree_bound").get<std::size_t>());
        }
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return graph;
}

WeightedGraph parse_edge_list(std::string_view text) {
    WeightedGraph graph;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) {
            tokens.push_back(tok);
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ParseError("expected 'u v w'", line_no);
        }
        try {
            Rational w = tokens.size() == 3 ? parse_rational(tokens[2]) : Rational(1);
            graph.add_edge(tokens[0], tokens[1], w);
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (graph.vertex_count() == 0) {
        throw ParseError("edge list has no edges");
    }
    return graph;
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open graph file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_graph_json(text);
    }
    return parse_edge_list(text);
}

WeightedGraph path_graph(std::size_t n) {
    WeightedGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.add_vertex(std::to_string(i));
    }
    for (std::size_t i = 1; i < n; ++i) {
        g.add_edge(i - 1, i, Rational(1));
    }
    return g;
}

WeightedGraph cycle_graph(std::size_t n) {
    if (n < 3) {
        throw PreconditionError("cycle_graph needs at least 3 vertices");
    }
    WeightedGraph g = path_graph(n);
    g.add_edge(n - 1, 0, Rational(1));
    return g;
}

WeightedGraph grid_graph(std::size_t width, std::size_t height, const Rational& horizontal, const Rational& vertical) {
    WeightedGraph g;
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            g.add_vertex(std::to_string(x) + "," + std::to_string(y));
        }
    }
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            std::size_t v = y * width + x;
            if (x + 1 < width) {
                g.add_edge(v, v + 1, horizontal);
            }
            if (y + 1 < height) {
                g.add_edge(v, v + width, vertical);
            }
        }
    }
    return g;
}

WeightedGraph rooted_tree(std::size_t branching, std::size_t depth, const Rational& base) {
    WeightedGraph g;
    g.add_vertex("e");
    std::vector<std::size_t> frontier{0};
    Rational w = 1;
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<std::size_t> next;
        for (auto parent : frontier) {
            for (std::size_t c = 0; c < branching; ++c) {
                std::string name = parent == 0 ? std::to_string(c) : g.name(parent) + "." + std::to_string(c);
                auto child = g.add_vertex(name);
                g.add_edge(parent, child, w);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
        w *= base;
    }
    return g;
}

WeightedGraph regular_tree_ball(std::size_t degree, std::size_t depth) {
    if (degree < 2) {
        throw PreconditionError("regular tree degree must be at least 2");
    }
    WeightedGraph g;
    g.add_vertex("e");
    std::vector<std::size_t> frontier{0};
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<std::size_t> next;
        for (auto parent : frontier) {
            std::size_t kids = parent == 0 ? degree : degree - 1;
            for (std::size_t c = 0; c < kids; ++c) {
                std::string name = parent == 0 ? std::to_string(c) : g.name(parent) + "." + std::to_string(c);
                auto child = g.add_vertex(name);
                g.add_edge(parent, child, Rational(1));
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return g;
}

namespace {

// splitmix64; deterministic across standard libraries
struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

}

WeightedGraph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
    if (degree >= n || (n * degree) % 2 != 0 || degree == 0) {
        throw PreconditionError("random_regular_graph: need 0 < degree < n and n * degree even");
    }
    SplitMix rng{seed};
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::size_t> stubs;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t d = 0; d < degree; ++d) {
                stubs.push_back(v);
            }
        }
        std::vector<std::unordered_set<std::size_t>> adj(n);
        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            stuck = true;
            for (int trial = 0; trial < 200; ++trial) {
                std::size_t i = rng.below(stubs.size());
                std::size_t j = rng.below(stubs.size());
                std::size_t u = stubs[i];
                std::size_t v = stubs[j];
                if (i == j || u == v || adj[u].count(v)) {
                    continue;
                }
                adj[u].insert(v);
                adj[v].insert(u);
                if (i < j) {
                    std::swap(i, j);
                }
                stubs[i] = stubs.back();
                stubs.pop_back();
                stubs[j] = stubs.back();
                stubs.pop_back();
                stuck = false;
                break;
            }
        }
        if (stuck) {
            continue;
        }
        WeightedGraph g;
        for (std::size_t v = 0; v < n; ++v) {
            g.add_vertex(std::to_string(v));
        }
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<std::size_t> nb(adj[u].begin(), adj[u].end());
            std::sort(nb.begin(), nb.end());
            for (auto v : nb) {
                if (u < v) {
                    g.add_edge(u, v, Rational(1));
                }
            }
        }
        if (g.connected()) {
            return g;
        }
    }
    throw Error("random_regular_graph: could not generate a simple connected graph");
}

}
