#include "support.hpp"

#include "snlab/errors.hpp"
#include "snlab/metric_graph.hpp"
#include "snlab/zoo.hpp"

#include <doctest.h>

using namespace snlab;
using snlab::test::q;

namespace {

WeightedGraph weighted_cycle(std::initializer_list<long> weights) {
    WeightedGraph g;
    std::size_t n = weights.size();
    std::size_t i = 0;
    for (long w : weights) {
        g.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % n), w);
        ++i;
    }
    return g;
}

// Independent path-enumeration check of both compatibility conditions.
bool brute_compatible(const WeightedGraph& g, std::size_t max_hops) {
    const std::size_t n = g.vertex_count();
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t sources[] = {s};
        auto hops = g.hop_distances(sources);
        std::vector<std::vector<Rational>> sums_by_len(n);
        std::vector<std::vector<std::vector<Rational>>> all(n, std::vector<std::vector<Rational>>(max_hops + 1));
        std::vector<bool> on_path(n, false);
        std::function<void(std::size_t, std::size_t, Rational)> dfs = [&](std::size_t v, std::size_t len, Rational w) {
            all[v][len].push_back(w);
            if (len == max_hops) {
                return;
            }
            on_path[v] = true;
            for (auto [u, e] : g.incident(v)) {
                if (!on_path[u]) {
                    dfs(u, len + 1, w + g.edges()[e].weight);
                }
            }
            on_path[v] = false;
        };
        dfs(s, 0, 0);
        for (std::size_t t = 0; t < n; ++t) {
            if (t == s) {
                continue;
            }
            auto h = static_cast<std::size_t>(hops[t]);
            const auto& shortest = all[t][h];
            for (const auto& w : shortest) {
                if (w != shortest.front()) {
                    return false;
                }
            }
            for (std::size_t len = h + 1; len <= max_hops; ++len) {
                for (const auto& w : all[t][len]) {
                    if (w <= shortest.front()) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

WeightedGraph random_small_graph(test::Gen& gen) {
    for (;;) {
        WeightedGraph g;
        std::size_t n = 3 + gen.below(4);
        for (std::size_t v = 0; v < n; ++v) {
            g.add_vertex("v" + std::to_string(v));
        }
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (gen.below(100) < 45) {
                    g.add_edge(u, v, gen.between(1, 4));
                }
            }
        }
        if (g.connected()) {
            return g;
        }
    }
}

}

TEST_CASE("graph construction rejects malformed input") {
    WeightedGraph g;
    g.add_edge("a", "b", 1);
    CHECK_THROWS_AS(g.add_edge("a", "a", 1), PreconditionError);
    CHECK_THROWS_AS(g.add_edge("b", "a", 2), PreconditionError);
    CHECK_THROWS_AS(g.add_edge("a", "c", 0), PreconditionError);
    CHECK_THROWS_AS(g.add_edge("a", "c", -1), PreconditionError);
    CHECK(g.vertex_count() == 2);
    WeightedGraph split;
    split.add_edge("a", "b", 1);
    split.add_edge("c", "d", 1);
    CHECK_FALSE(split.connected());
    CHECK_THROWS_AS(validate_metric_graph(split), PreconditionError);
}

TEST_CASE("trees are metric graphs") {
    CHECK(validate_metric_graph(rooted_tree(2, 4, 10)).valid());
    CHECK(validate_metric_graph(rooted_tree(3, 3, q(7, 3))).valid());
    CHECK(validate_metric_graph(path_graph(9)).valid());
}

TEST_CASE("heavy edge on a 4-cycle breaks condition 1") {
    auto g = weighted_cycle({1, 1, 1, 10});
    auto report = validate_metric_graph(g);
    CHECK_FALSE(report.condition1.pass);
    REQUIRE_FALSE(report.condition1.witnesses.empty());
    const auto& w = report.condition1.witnesses.front();
    CHECK(w.first.hops() == 2);
    CHECK(w.second.hops() == 2);
    CHECK(w.first.weight != w.second.weight);
    std::vector<Rational> sums{w.first.weight, w.second.weight};
    std::sort(sums.begin(), sums.end());
    CHECK(sums == std::vector<Rational>{2, 11});
}

TEST_CASE("triangle shortcut breaks condition 2") {
    auto g = parse_graph_json(R"({"type":"weighted_graph","edges":[["a","b",1],["b","c",1],["a","c","3"]]})");
    auto report = validate_metric_graph(g);
    CHECK(report.condition1.pass);
    CHECK_FALSE(report.condition2.pass);
    REQUIRE_FALSE(report.condition2.witnesses.empty());
    const auto& w = report.condition2.witnesses.front();
    CHECK(w.first.hops() == 1);
    CHECK(w.first.weight == 3);
    CHECK(w.second.hops() == 2);
    CHECK(w.second.weight == 2);
    CHECK_THROWS_AS(induced_metric(g), PreconditionError);
}

TEST_CASE("validation matches brute-force path enumeration") {
    test::Gen gen(2024);
    for (int trial = 0; trial < 150; ++trial) {
        auto g = random_small_graph(gen);
        std::size_t budget = g.vertex_count() - 1;
        ValidationOptions options;
        options.hop_budget = budget;
        CHECK(validate_metric_graph(g, options).valid() == brute_compatible(g, budget));
    }
}

TEST_CASE("violations are found in both directions") {
    test::Gen gen(5);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; ++trial) {
        auto g = random_small_graph(gen);
        std::size_t budget = g.vertex_count() - 1;
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
            for (std::size_t t = s + 1; t < g.vertex_count(); ++t) {
                auto forward = validate_pair(g, s, t, budget);
                auto backward = validate_pair(g, t, s, budget);
                CHECK(forward.condition1.pass == backward.condition1.pass);
                CHECK(forward.condition2.pass == backward.condition2.pass);
                checked += forward.valid() ? 0 : 1;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("induced metric") {
    SUBCASE("unit weights give the hop metric") {
        auto g = grid_graph(4, 3);
        g.record_validation(validate_metric_graph(g));
        auto space = induced_metric(g);
        for (std::size_t u = 0; u < g.vertex_count(); ++u) {
            std::size_t src[] = {u};
            auto hops = g.hop_distances(src);
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                CHECK(space->distance(PointId{u}, PointId{v}) == hops[v]);
            }
        }
    }
    SUBCASE("ivanov tree") {
        auto g = rooted_tree(2, 3, 10);
        g.record_validation(validate_metric_graph(g));
        auto space = induced_metric(g);
        auto root = g.index_of("e");
        auto grandchild = g.index_of("0.1");
        CHECK(space->distance(PointId{root}, PointId{grandchild}) == 11);
        CHECK(space->distance(PointId{g.index_of("0.0.0")}, PointId{g.index_of("1.0.0")}) == 222);
    }
    SUBCASE("semi-tripod arms") {
        auto g = semi_tripod_graph(1, 2, 3, 2);
        g.record_validation(validate_metric_graph(g));
        CHECK(g.validation() == ValidationState::valid);
        auto space = induced_metric(g);
        CHECK(space->distance(PointId{g.index_of("v2")}, PointId{g.index_of("v3")}) == 5);
        CHECK(space->distance(PointId{g.index_of("v1")}, PointId{g.index_of("v2")}) == 2);
    }
    SUBCASE("unvalidated graphs are refused") {
        CHECK_THROWS_AS(induced_metric(path_graph(3)), PreconditionError);
    }
}

TEST_CASE("induced metrics are additive along hop-shortest paths") {
    auto g = rooted_tree(2, 4, q(3, 2));
    g.record_validation(validate_metric_graph(g));
    auto space = induced_metric(g);
    auto grid = grid_graph(5, 4, 2, 3);
    grid.record_validation(validate_metric_graph(grid));
    CHECK(grid.validation() == ValidationState::valid);
    auto grid_space = induced_metric(grid);
    for (const auto* pair : {&g, &grid}) {
        const WeightedGraph& graph = *pair;
        const MetricSpace& m = pair == &g ? *space : *grid_space;
        for (std::size_t u = 0; u < graph.vertex_count(); ++u) {
            std::size_t src[] = {u};
            auto hu = graph.hop_distances(src);
            for (std::size_t z = 0; z < graph.vertex_count(); ++z) {
                for (std::size_t w = 0; w < graph.vertex_count(); ++w) {
                    std::size_t wsrc[] = {w};
                    auto hw = graph.hop_distances(wsrc);
                    if (hu[w] + hw[z] == hu[z]) {
                        CHECK(m.distance(PointId{u}, PointId{z}) ==
                              m.distance(PointId{u}, PointId{w}) + m.distance(PointId{w}, PointId{z}));
                    }
                }
            }
        }
    }
}

TEST_CASE("tripod finder") {
    SUBCASE("regular tree") {
        auto tree = WordTreeSpace::regular_tree(3);
        auto search = find_tripod(*tree, tree->root(), 5);
        REQUIRE(search.witness);
        CHECK(search.witness->sphere == 2);
        CHECK(search.witness->kind == TripodKind::tripod);
        CHECK(satisfies_tripod_definition(*tree, *search.witness));
    }
    SUBCASE("lattice plane") {
        LatticeSpace z2(2);
        auto search = find_tripod(z2, z2.point({0, 0}), 5);
        REQUIRE(search.witness);
        CHECK(satisfies_tripod_definition(z2, *search.witness));
    }
    SUBCASE("integer line has none") {
        LatticeSpace z(1);
        auto search = find_tripod(z, z.at(0), 8);
        CHECK_FALSE(search.witness);
        CHECK(search.diagnostics.find("not a disproof") != std::string::npos);
    }
    SUBCASE("explicit weighted graphs") {
        auto ball = regular_tree_ball(3, 4);
        auto search = find_tripod(ball, 0, 4);
        REQUIRE(search.witness);
        CHECK(satisfies_tripod_definition(ball, *search.witness));
        auto grid = grid_graph(7, 7);
        auto center = grid.index_of("3,3");
        auto gs = find_tripod(grid, center, 3);
        REQUIRE(gs.witness);
        CHECK(satisfies_tripod_definition(grid, *gs.witness));
        CHECK_FALSE(find_tripod(path_graph(12), 0, 10).witness);
    }
    SUBCASE("predicate rejects non-tripods") {
        auto tri = tripod_graph(1, 1, 1);
        TripodWitness w{0, {1, 2, 3}, TripodKind::tripod, 0, 1};
        CHECK(satisfies_tripod_definition(tri, w));
        auto semi = semi_tripod_graph(1, 1, 1, 1);
        CHECK_FALSE(satisfies_tripod_definition(semi, w));
        w.kind = TripodKind::semi_tripod;
        w.connections_among_arms = 1;
        CHECK(satisfies_tripod_definition(semi, w));
        TripodWitness bad{1, {0, 2, 3}, TripodKind::tripod, 0, 1};
        CHECK_FALSE(satisfies_tripod_definition(tri, bad));
    }
}

TEST_CASE("graph boundaries") {
    SUBCASE("unit weights: discrete and hop boundaries coincide") {
        auto g = grid_graph(6, 6);
        g.record_validation(validate_metric_graph(g));
        test::Gen gen(8);
        std::vector<PointId> all;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            all.push_back(PointId{v});
        }
        for (int trial = 0; trial < 40; ++trial) {
            auto A = gen.subset(PointSet(all), 5);
            int k = static_cast<int>(gen.between(1, 3));
            auto b = graph_boundary(g, A, k);
            CHECK(b.discrete_boundary == b.hop_boundary);
            CHECK(b.contained);
        }
    }
    SUBCASE("ivanov root") {
        auto g = rooted_tree(2, 3, 10);
        g.record_validation(validate_metric_graph(g));
        auto b = graph_boundary(g, PointSet{PointId{g.index_of("e")}}, 1);
        PointSet children{PointId{g.index_of("0")}, PointId{g.index_of("1")}};
        CHECK(b.discrete_boundary == children);
        CHECK(b.hop_boundary == children);
    }
    SUBCASE("weighted graphs: discrete boundary within the hop boundary") {
        test::Gen gen(41);
        std::vector<WeightedGraph> graphs{rooted_tree(2, 4, 10), rooted_tree(3, 3, q(5, 2)),
                                          grid_graph(5, 5, 1, 3), semi_tripod_graph(1, 2, 3, 2)};
        for (auto& g : graphs) {
            g.record_validation(validate_metric_graph(g));
            REQUIRE(g.validation() == ValidationState::valid);
            std::vector<PointId> all;
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                all.push_back(PointId{v});
            }
            for (int trial = 0; trial < 100; ++trial) {
                auto A = gen.subset(PointSet(all), 4);
                int k = static_cast<int>(gen.between(1, 4));
                auto b = graph_boundary(g, A, k);
                CHECK(b.discrete_boundary.is_subset_of(b.hop_boundary));
                CHECK(b.contained);
            }
        }
    }
}

TEST_CASE("graph file formats") {
    auto g = parse_edge_list("# comment\na b 1\nb c 7/3\n\nc d 0.5\nd e\n");
    CHECK(g.weight(g.index_of("d"), g.index_of("e")) == 1);
    CHECK(g.vertex_count() == 5);
    CHECK(g.weight(g.index_of("b"), g.index_of("c")) == q(7, 3));
    CHECK(g.weight(g.index_of("c"), g.index_of("d")) == q(1, 2));
    try {
        parse_edge_list("a b 1\nb c x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_graph_json("{\"type\":\"weighted_graph\"}"), ParseError);
    CHECK_THROWS_AS(parse_graph_json("not json"), ParseError);
    auto j = parse_graph_json(R"({"type":"weighted_graph","vertices":["x","y"],"edges":[["x","y",0.25]],"degree_bound":3})");
    CHECK(j.weight(0, 1) == q(1, 4));
    CHECK(j.degree_bound() == 3);
    auto square = load_graph_file(test::data_path("square_bad_weight.txt"));
    CHECK_FALSE(validate_metric_graph(square).condition1.pass);
    auto ivanov = load_graph_file(test::data_path("ivanov_depth3.txt"));
    CHECK(validate_metric_graph(ivanov).valid());
}

TEST_CASE("random regular graphs") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto g = random_regular_graph(32, 4, seed);
        CHECK(g.vertex_count() == 32);
        CHECK(g.connected());
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            CHECK(g.incident(v).size() == 4);
        }
    }
    auto a = random_regular_graph(16, 3, 9);
    auto b = random_regular_graph(16, 3, 9);
    REQUIRE(a.edge_count() == b.edge_count());
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        CHECK(a.edges()[i].u == b.edges()[i].u);
        CHECK(a.edges()[i].v == b.edges()[i].v);
    }
    CHECK_THROWS_AS(random_regular_graph(7, 3, 1), PreconditionError);
}
