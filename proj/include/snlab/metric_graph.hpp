#ifndef snlab_metric_graph_hpp
#define snlab_metric_graph_hpp

#include "snlab/neighborhood.hpp"
#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snlab {

struct CompatibilityReport;

enum class ValidationState { unvalidated, valid, invalid };

/*
 * Simple undirected graph with positive rational edge labels. Vertices are
 * named; vertex indices follow insertion order.
 */
class WeightedGraph {
public:
    struct Edge {
        std::size_t u;
        std::size_t v;
        Rational weight;
    };

    std::size_t add_vertex(std::string name);
    // Adds missing endpoints. Rejects loops, duplicate edges, nonpositive weights.
    void add_edge(std::string_view u, std::string_view v, const Rational& weight);
    void add_edge(std::size_t u, std::size_t v, const Rational& weight);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& name(std::size_t v) const { return names_.at(v); }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    // (neighbor, edge index), sorted by neighbor index
    const std::vector<std::pair<std::size_t, std::size_t>>& incident(std::size_t v) const { return adjacency_.at(v); }
    std::optional<std::size_t> edge_between(std::size_t u, std::size_t v) const;
    const Rational& weight(std::size_t u, std::size_t v) const;

    std::size_t max_degree() const;
    std::size_t degree_bound() const { return degree_bound_ ? *degree_bound_ : max_degree(); }
    void set_degree_bound(std::size_t bound);
    bool connected() const;
    bool unit_weights() const;

    // Hop distances from a vertex set; unreachable vertices get -1.
    std::vector<long> hop_distances(std::span<const std::size_t> sources) const;

    ValidationState validation() const { return validation_; }
    std::size_t validated_hop_budget() const { return validated_budget_; }
    void record_validation(const CompatibilityReport& report);

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
    std::optional<std::size_t> degree_bound_;
    ValidationState validation_ = ValidationState::unvalidated;
    std::size_t validated_budget_ = 0;
};

// Vertex sequence with its weight sum.
struct GraphPath {
    std::vector<std::size_t> vertices;
    Rational weight;

    std::size_t hops() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct CompatibilityViolation {
    std::size_t source;
    std::size_t target;
    // condition 1: two hop-shortest paths with different sums.
    // condition 2: first = hop-shortest path, second = longer path that is not heavier.
    GraphPath first;
    GraphPath second;
};

struct ConditionResult {
    bool pass = true;
    std::vector<CompatibilityViolation> witnesses;
};

struct CompatibilityReport {
    ConditionResult condition1;
    ConditionResult condition2;
    std::size_t hop_budget = 0;

    bool valid() const { return condition1.pass && condition2.pass; }
};

struct ValidationOptions {
    // Longest path (in hops) inspected for condition 2; default hop-diameter + 4.
    std::optional<std::size_t> hop_budget;
    std::size_t max_witnesses = 8;
};

std::size_t hop_diameter(const WeightedGraph& graph);

// Checks both compatibility conditions over every ordered vertex pair.
CompatibilityReport validate_metric_graph(const WeightedGraph& graph, const ValidationOptions& options = {});

// The same checks for one ordered pair; used for direction-symmetry checks.
CompatibilityReport validate_pair(const WeightedGraph& graph, std::size_t source, std::size_t target,
                                  std::size_t hop_budget);

// Distances obtained by summing weights along hop-shortest paths. The graph
// must have been validated.
SpaceHandle induced_metric(const WeightedGraph& graph);

enum class TripodKind { tripod, semi_tripod };

struct TripodWitness {
    std::uint64_t center;
    std::array<std::uint64_t, 3> arms;
    TripodKind kind;
    int connections_among_arms;
    int sphere;  // n with center in the sphere of radius n
};

struct TripodSearch {
    std::optional<TripodWitness> witness;
    int radius_searched = 0;
    std::string diagnostics;
};

// Sphere-growth procedure: center v in sphere n >= 2 with two neighbors in
// sphere n + 1 and one in sphere n - 1.
TripodSearch find_tripod(const WeightedGraph& graph, std::size_t root, int radius_budget);
// Same procedure on an implicit unit-step graph (vertex ids are PointId values).
TripodSearch find_tripod(const GraphStructure& graph, PointId root, int radius_budget,
                         std::size_t point_cap = default_point_cap);

// Independent check of the tripod / semi-tripod definition.
bool satisfies_tripod_definition(const WeightedGraph& graph, const TripodWitness& witness);
bool satisfies_tripod_definition(const GraphStructure& graph, const TripodWitness& witness);

struct GraphBoundary {
    int k = 0;
    PointSet hop_boundary;       // cB_k(A) in the unlabeled graph
    PointSet discrete_boundary;  // dB_k(A) in the induced metric
    bool contained = false;      // dB_k(A) within cB_k(A)
};

// Point ids are vertex indices.
GraphBoundary graph_boundary(const WeightedGraph& graph, const PointSet& A, int k);

// Graph files: JSON {"type":"weighted_graph",...} or "u v w" edge lists.
WeightedGraph parse_graph_json(std::string_view text);
WeightedGraph parse_edge_list(std::string_view text);
WeightedGraph load_graph_file(const std::string& path);

// Generators.
WeightedGraph path_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph grid_graph(std::size_t width, std::size_t height, const Rational& horizontal = 1,
                         const Rational& vertical = 1);
// Rooted tree with `branching` children per vertex; edge from depth j to j+1
// has weight base^j (base 1 gives unit weights).
WeightedGraph rooted_tree(std::size_t branching, std::size_t depth, const Rational& base = 1);
// Ball of radius `depth` in the degree-regular tree.
WeightedGraph regular_tree_ball(std::size_t degree, std::size_t depth);
// Uniform pairing model with rejection; retries until simple and connected.
WeightedGraph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed);

}

#endif /* snlab_metric_graph_hpp */
