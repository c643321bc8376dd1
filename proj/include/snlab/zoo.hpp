#ifndef snlab_zoo_hpp
#define snlab_zoo_hpp

#include "snlab/metric_graph.hpp"
#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace snlab {

// X = {x_n = 1 + 1/2 + ... + 1/n : n >= 1} with the metric of the real line.
// Point id n is x_n.
class HarmonicSpace final : public MetricSpace {
public:
    std::string id() const override { return "harmonic"; }
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                            std::size_t point_cap = default_point_cap) const override;
    PointId base_point() const override { return PointId{1}; }
    bool is_point(PointId p) const override { return p.value >= 1; }
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;

    static PointId x(std::uint64_t n) { return PointId{n}; }
    // {x_1, ..., x_n}
    static PointSet prefix(std::uint64_t n);
    Rational harmonic_number(std::uint64_t n) const;

private:
    mutable std::mutex mutex_;
    mutable std::vector<Rational> prefix_sums_{Rational(0)};
};

// Z^d with the word metric of the standard generators (the l1 metric).
class LatticeSpace final : public GraphSpace {
public:
    explicit LatticeSpace(int dimension);

    std::string id() const override { return "integer-lattice"; }
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    PointId base_point() const override;
    bool is_point(PointId p) const override;
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;
    std::optional<std::size_t> finite_size() const override;
    PointSet all_points() const override;
    void neighbors(PointId p, std::vector<PointId>& out) const override;

    int dimension() const { return dimension_; }
    PointId point(std::span<const long> coordinates) const;
    PointId point(std::initializer_list<long> coordinates) const;
    std::vector<long> coordinates(PointId p) const;
    // Convenience for d = 1.
    PointId at(long n) const { return point({n}); }
    PointSet interval(long lo, long hi) const;

private:
    int dimension_;
    int bits_;
};

/*
 * Rooted trees whose vertices are words. Covers regular trees, free-group
 * Cayley graphs (reduced words), and weighted rooted trees where the edge
 * from depth j to depth j + 1 has weight base^j.
 */
class WordTreeSpace final : public GraphSpace {
public:
    enum class Kind { regular_tree, free_group, weighted_tree };

    static std::shared_ptr<WordTreeSpace> regular_tree(int degree);
    static std::shared_ptr<WordTreeSpace> free_group(int rank);
    static std::shared_ptr<WordTreeSpace> weighted_tree(int branching, const Rational& base);

    std::string id() const override;
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                            std::size_t point_cap = default_point_cap) const override;
    PointId base_point() const override { return root(); }
    bool is_point(PointId p) const override;
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;
    const GraphStructure* graph_structure() const override;
    void neighbors(PointId p, std::vector<PointId>& out) const override;

    Kind kind() const { return kind_; }
    PointId root() const { return PointId{0}; }
    std::size_t depth(PointId p) const;
    std::vector<int> letters(PointId p) const;
    PointId word(std::span<const int> letters) const;
    PointId word(std::initializer_list<int> letters) const;
    // Children in canonical order.
    std::vector<PointId> children(PointId p) const;
    std::optional<PointId> parent(PointId p) const;
    std::size_t common_prefix(PointId a, PointId b) const;
    // Distance from the root to depth n.
    Rational depth_weight(std::size_t n) const;

private:
    WordTreeSpace(Kind kind, int alphabet, int root_children, int other_children, const Rational& base);
    bool letter_allowed(int previous, int letter, bool at_root) const;
    void append_children(PointId p, std::vector<PointId>& out) const;

    Kind kind_;
    int alphabet_;
    int root_children_;
    int other_children_;
    Rational base_;
    int bits_;
    std::size_t max_depth_;
    std::vector<Rational> depth_weights_;
};

// Regular tree of the given degree with a one-sided ray of integers glued at the root.
class TreeWithRaySpace final : public GraphSpace {
public:
    explicit TreeWithRaySpace(int degree);

    std::string id() const override { return "tree-plus-ray"; }
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    PointId base_point() const override { return tree_->root(); }
    bool is_point(PointId p) const override;
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;
    void neighbors(PointId p, std::vector<PointId>& out) const override;

    const WordTreeSpace& tree() const { return *tree_; }
    // Ray point at distance i >= 1 from the gluing vertex.
    static PointId ray(std::uint64_t i);
    static bool on_ray(PointId p);

private:
    std::shared_ptr<WordTreeSpace> tree_;
};

// Finite space with an explicit distance table. Point id i is row i.
class FiniteMetricSpace final : public MetricSpace {
public:
    // Checks the metric axioms exactly; throws MetricAxiomError with a witness.
    FiniteMetricSpace(std::string id, std::vector<std::string> labels, std::vector<std::vector<Rational>> distances,
                      Arithmetic arithmetic = Arithmetic::exact(), bool check_axioms = true);

    std::string id() const override { return id_; }
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                            std::size_t point_cap = default_point_cap) const override;
    Arithmetic arithmetic() const override { return arithmetic_; }
    std::optional<std::size_t> finite_size() const override { return labels_.size(); }
    PointSet all_points() const override;
    PointId base_point() const override { return PointId{0}; }
    bool is_point(PointId p) const override { return p.value < labels_.size(); }
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;
    Rational radius_hint() const override;

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<Rational>>& table() const { return distances_; }

private:
    std::string id_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> distances_;
    Arithmetic arithmetic_;
};

// Restriction of a space to finitely many points, relabeled 0..n-1 in canonical order.
std::shared_ptr<FiniteMetricSpace> truncate(const MetricSpace& space, const PointSet& points);

/*
 * Disjoint union of finite connected graphs G_1, G_2, ... with the graph
 * metric inside components and d(p, q) = R_n + R_m across components, where
 * R_n = max(diam(G_n), n, R_{n-1} + 1).
 */
class BoxSpace final : public MetricSpace {
public:
    explicit BoxSpace(std::vector<WeightedGraph> components);

    std::string id() const override { return "box-space"; }
    std::string description() const override;
    Rational distance(PointId a, PointId b) const override;
    std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                            std::size_t point_cap = default_point_cap) const override;
    std::optional<std::size_t> finite_size() const override { return total_; }
    PointSet all_points() const override;
    PointId base_point() const override { return point(1, 0); }
    bool is_point(PointId p) const override;
    std::string format_point(PointId p) const override;
    PointId parse_point(std::string_view text) const override;

    std::size_t component_count() const { return components_.size(); }
    // 1-based component index, vertex index inside the component.
    static PointId point(std::size_t component, std::size_t vertex);
    static std::size_t component_of(PointId p);
    static std::size_t vertex_of(PointId p);
    const WeightedGraph& component(std::size_t n) const { return components_.at(n - 1); }
    long offset(std::size_t n) const { return offsets_.at(n - 1); }
    long diameter(std::size_t n) const { return diameters_.at(n - 1); }
    PointSet component_points(std::size_t n) const;

    struct Witness {
        std::size_t n;
        PointSet set;
    };
    // F_k^n = G_1 u ... u G_n u (G_{n+1} \ B(x, k)), x = vertex 0 of G_{n+1},
    // for every n >= n_k where diam(G_{n+1}) >= k and d(G_n, G_{n+1}) > k.
    std::vector<Witness> witness_family(int k) const;

private:
    std::vector<long> bfs_component(std::size_t n, std::span<const std::size_t> sources) const;

    std::vector<WeightedGraph> components_;
    std::vector<long> offsets_;
    std::vector<long> diameters_;
    std::size_t total_ = 0;
};

SpaceHandle box_space(std::vector<WeightedGraph> components);

enum class SpaceKind {
    harmonic,
    integer_lattice,
    free_group,
    regular_tree,
    tree_plus_ray,
    weighted_tree,
    box_space,
    tripod,
    semi_tripod,
    from_file,
};

struct SpaceSpec {
    SpaceKind kind = SpaceKind::harmonic;
    int dimension = 1;            // integer-lattice
    int rank = 2;                 // free-group
    int degree = 3;               // regular-tree, tree-plus-ray, box-space components
    int branching = 2;            // weighted-tree
    Rational weight_base = 10;    // weighted-tree
    // tripod: three arm weights; semi-tripod: three arm weights then the arm-arm edge
    std::vector<Rational> weights;
    // box-space
    std::string box_family = "random-regular";  // or "cycles"
    int box_components = 8;
    std::size_t box_base_size = 16;
    std::uint64_t seed = 1;
    std::string path;             // from-file
};

std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(std::string_view text);

struct ZooEntry {
    std::string kind;
    std::string parameters;
    std::string summary;
};
std::vector<ZooEntry> zoo_listing();

SpaceHandle make_space(const SpaceSpec& spec);

// The 4-point metric of a tripod / semi-tripod (center first, then the arms).
SpaceHandle tripod_space(const Rational& a1, const Rational& a2, const Rational& a3);
SpaceHandle semi_tripod_space(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& beta);
WeightedGraph tripod_graph(const Rational& a1, const Rational& a2, const Rational& a3);
WeightedGraph semi_tripod_graph(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& beta);

// Finite metric file: {"type":"finite_metric","points":[...],"distances":[[...]]}.
std::shared_ptr<FiniteMetricSpace> parse_finite_metric_json(std::string_view text);
SpaceHandle load_space_file(const std::string& path);

}

#endif /* snlab_zoo_hpp */
