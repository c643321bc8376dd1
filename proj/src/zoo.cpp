#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

namespace snlab {

namespace {

struct KindName {
    SpaceKind kind;
    const char* name;
};

constexpr KindName kind_names[] = {
    {SpaceKind::harmonic, "harmonic"},
    {SpaceKind::integer_lattice, "integer-lattice"},
    {SpaceKind::free_group, "free-group"},
    {SpaceKind::regular_tree, "regular-tree"},
    {SpaceKind::tree_plus_ray, "tree-plus-ray"},
    {SpaceKind::weighted_tree, "weighted-tree"},
    {SpaceKind::box_space, "box-space"},
    {SpaceKind::tripod, "tripod"},
    {SpaceKind::semi_tripod, "semi-tripod"},
    {SpaceKind::from_file, "from-file"},
};

void require_positive(const std::vector<Rational>& weights) {
    for (const auto& w : weights) {
        if (w <= 0) {
            throw PreconditionError("weights must be positive, got " + to_string(w));
        }
    }
}

}

std::string to_string(SpaceKind kind) {
    for (const auto& k : kind_names) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "unknown";
}

SpaceKind parse_space_kind(std::string_view text) {
    for (const auto& k : kind_names) {
        if (text == k.name) {
            return k.kind;
        }
    }
    if (text == "lattice" || text == "Z") {
        return SpaceKind::integer_lattice;
    }
    if (text == "ivanov-tree") {
        return SpaceKind::weighted_tree;
    }
    throw PreconditionError("unknown space kind '" + std::string(text) + "'");
}

std::vector<ZooEntry> zoo_listing() {
    return {
        {"harmonic", "", "x_n = 1 + 1/2 + ... + 1/n on the real line (exact)"},
        {"integer-lattice", "--dim d", "Z^d with the word metric"},
        {"free-group", "--rank r", "Cayley graph of the free group with its standard generators"},
        {"regular-tree", "--degree d", "d-regular tree"},
        {"tree-plus-ray", "--degree d", "d-regular tree with a one-sided integer ray glued at the root"},
        {"weighted-tree", "--branching b --weight-base q", "rooted tree, edge below depth j weighs q^j"},
        {"box-space", "--box-family random-regular|cycles --box-components n --box-base-size s --degree d --seed s",
         "disjoint union of growing finite graphs with diverging cross distances"},
        {"tripod", "--weights a1,a2,a3", "center joined to three arms"},
        {"semi-tripod", "--weights a1,a2,a3,beta", "tripod with one edge between the first two arms"},
        {"from-file", "--file path", "weighted graph (JSON or edge list) or finite metric JSON"},
    };
}

WeightedGraph tripod_graph(const Rational& a1, const Rational& a2, const Rational& a3) {
    require_positive({a1, a2, a3});
    WeightedGraph g;
    g.add_vertex("v");
    g.add_vertex("v1");
    g.add_vertex("v2");
    g.add_vertex("v3");
    g.add_edge(0, 1, a1);
    g.add_edge(0, 2, a2);
    g.add_edge(0, 3, a3);
    return g;
}

WeightedGraph semi_tripod_graph(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& beta) {
    WeightedGraph g = tripod_graph(a1, a2, a3);
    require_positive({beta});
    g.add_edge(1, 2, beta);
    return g;
}

namespace {

SpaceHandle validated_metric(WeightedGraph graph, const std::string& what) {
    auto report = validate_metric_graph(graph);
    graph.record_validation(report);
    if (!report.valid()) {
        throw PreconditionError(what + " weights violate the metric-graph compatibility conditions");
    }
    return induced_metric(graph);
}

}

SpaceHandle tripod_space(const Rational& a1, const Rational& a2, const Rational& a3) {
    return validated_metric(tripod_graph(a1, a2, a3), "tripod");
}

SpaceHandle semi_tripod_space(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& beta) {
    return validated_metric(semi_tripod_graph(a1, a2, a3, beta), "semi-tripod");
}

SpaceHandle make_space(const SpaceSpec& spec) {
    switch (spec.kind) {
    case SpaceKind::harmonic:
        return std::make_shared<HarmonicSpace>();
    case SpaceKind::integer_lattice:
        return std::make_shared<LatticeSpace>(spec.dimension);
    case SpaceKind::free_group:
        return WordTreeSpace::free_group(spec.rank);
    case SpaceKind::regular_tree:
        return WordTreeSpace::regular_tree(spec.degree);
    case SpaceKind::tree_plus_ray:
        if (spec.degree < 3) {
            throw PreconditionError("tree-plus-ray needs degree at least 3");
        }
        return std::make_shared<TreeWithRaySpace>(spec.degree);
    case SpaceKind::weighted_tree:
        return WordTreeSpace::weighted_tree(spec.branching, spec.weight_base);
    case SpaceKind::box_space: {
        if (spec.box_components < 1) {
            throw PreconditionError("box space needs at least one component");
        }
        std::vector<WeightedGraph> parts;
        for (int n = 1; n <= spec.box_components; ++n) {
            std::size_t size = spec.box_base_size << (n - 1);
            if (spec.box_family == "random-regular") {
                parts.push_back(random_regular_graph(size, static_cast<std::size_t>(spec.degree),
                                                     spec.seed + static_cast<std::uint64_t>(n)));
            } else if (spec.box_family == "cycles") {
                parts.push_back(cycle_graph(size));
            } else {
                throw PreconditionError("unknown box family '" + spec.box_family + "'");
            }
        }
        return box_space(std::move(parts));
    }
    case SpaceKind::tripod: {
        std::vector<Rational> w = spec.weights.empty() ? std::vector<Rational>{1, 1, 1} : spec.weights;
        if (w.size() != 3) {
            throw PreconditionError("tripod takes three arm weights");
        }
        return tripod_space(w[0], w[1], w[2]);
    }
    case SpaceKind::semi_tripod: {
        std::vector<Rational> w = spec.weights.empty() ? std::vector<Rational>{1, 1, 1, 1} : spec.weights;
        if (w.size() != 4) {
            throw PreconditionError("semi-tripod takes three arm weights and the arm-arm weight");
        }
        return semi_tripod_space(w[0], w[1], w[2], w[3]);
    }
    case SpaceKind::from_file:
        if (spec.path.empty()) {
            throw PreconditionError("from-file needs a path");
        }
        return load_space_file(spec.path);
    }
    throw PreconditionError("unknown space kind");
}

}
