#include "support.hpp"

#include "snlab/errors.hpp"
#include "snlab/neighborhood.hpp"
#include "snlab/zoo.hpp"

#include <doctest.h>

using namespace snlab;
using snlab::test::q;

namespace {

struct Sample {
    std::string name;
    SpaceHandle space;
    PointSet pool;
};

std::vector<Sample> zoo_samples() {
    std::vector<Sample> out;
    auto add = [&](std::string name, SpaceHandle space, const Rational& radius) {
        auto pool = space->enumerate_within(PointSet{space->base_point()}, radius);
        out.push_back({std::move(name), std::move(space), std::move(pool)});
    };
    SpaceSpec spec;
    spec.kind = SpaceKind::harmonic;
    add("harmonic", make_space(spec), 3);
    spec.kind = SpaceKind::integer_lattice;
    spec.dimension = 1;
    add("Z", make_space(spec), 30);
    spec.dimension = 3;
    add("Z3", make_space(spec), 4);
    spec.kind = SpaceKind::free_group;
    add("F2", make_space(spec), 4);
    spec.kind = SpaceKind::regular_tree;
    add("T3", make_space(spec), 5);
    spec.kind = SpaceKind::tree_plus_ray;
    add("tree-plus-ray", make_space(spec), 6);
    spec.kind = SpaceKind::weighted_tree;
    add("ivanov", make_space(spec), 1111);
    spec.kind = SpaceKind::box_space;
    spec.box_components = 4;
    spec.box_base_size = 8;
    auto box = make_space(spec);
    out.push_back({"box", box, box->all_points()});
    spec.kind = SpaceKind::tripod;
    add("tripod", make_space(spec), 10);
    spec.kind = SpaceKind::semi_tripod;
    spec.weights = {1, 2, 3, 2};
    add("semi-tripod", make_space(spec), 10);
    return out;
}

}

TEST_CASE("metric axioms on sampled triples of every zoo space") {
    test::Gen gen(314);
    for (const auto& sample : zoo_samples()) {
        CAPTURE(sample.name);
        const auto& pool = sample.pool;
        REQUIRE(pool.size() >= 2);
        const auto& d = *sample.space;
        int failures = 0;
        for (int i = 0; i < 10000; ++i) {
            auto x = pool[gen.below(pool.size())];
            auto y = pool[gen.below(pool.size())];
            auto z = pool[gen.below(pool.size())];
            Rational xy = d.distance(x, y);
            bool ok = d.distance(x, x) == 0 && xy == d.distance(y, x) && xy >= 0 &&
                      d.distance(x, z) <= xy + d.distance(y, z) && (x == y || xy > 0);
            failures += ok ? 0 : 1;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("enumeration returns exactly the closed ball") {
    for (const auto& sample : zoo_samples()) {
        CAPTURE(sample.name);
        const auto& space = *sample.space;
        auto seeds = PointSet{space.base_point()};
        Rational radius = sample.name == "ivanov" ? Rational(11) : Rational(2);
        auto ball = space.enumerate_within(seeds, radius);
        for (auto p : sample.pool) {
            CHECK(ball.contains(p) == (space.distance(p, space.base_point()) <= radius));
        }
        auto items = space.neighborhood(seeds, radius);
        for (std::size_t i = 1; i < items.size(); ++i) {
            CHECK(items[i - 1].distance <= items[i].distance);
        }
    }
}

TEST_CASE("harmonic space distances") {
    HarmonicSpace h;
    CHECK(h.distance(HarmonicSpace::x(2), HarmonicSpace::x(5)) == q(47, 60));
    CHECK(h.harmonic_number(4) == q(25, 12));
    CHECK(h.format_point(HarmonicSpace::x(12)) == "x_12");
    CHECK(h.parse_point("x_7") == HarmonicSpace::x(7));
    CHECK(h.parse_point("9") == HarmonicSpace::x(9));
    CHECK_THROWS(h.parse_point("x_0"));
}

TEST_CASE("lattices") {
    LatticeSpace z2(2);
    auto p = z2.point({-3, 4});
    CHECK(z2.coordinates(p) == std::vector<long>{-3, 4});
    CHECK(z2.distance(p, z2.point({0, 0})) == 7);
    CHECK(z2.format_point(p) == "(-3,4)");
    CHECK(z2.parse_point("(-3,4)") == p);
    LatticeSpace z(1);
    CHECK(z.format_point(z.at(-5)) == "-5");
    CHECK(z.parse_point("-5") == z.at(-5));
    LatticeSpace trivial(0);
    CHECK(trivial.finite_size() == std::optional<std::size_t>(1));
    CHECK_THROWS_AS(LatticeSpace(-1), PreconditionError);
    for (long r = 0; r <= 6; ++r) {
        CHECK(z2.enumerate_within(PointSet{z2.point({1, 1})}, r).size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    }
}

TEST_CASE("free groups and trees") {
    auto f2 = WordTreeSpace::free_group(2);
    auto w = f2->parse_point("abA");
    CHECK(f2->depth(w) == 3);
    CHECK(f2->distance(f2->root(), w) == 3);
    CHECK(f2->parse_point("a b a^-1") == w);
    CHECK(f2->parse_point("aAb") == f2->parse_point("b"));
    CHECK(f2->format_point(w) == "abA");
    CHECK(f2->format_point(f2->root()) == "e");
    CHECK(f2->distance(f2->parse_point("ab"), f2->parse_point("aB")) == 2);
    std::size_t expected = 1;
    for (int n = 0; n <= 6; ++n) {
        CHECK(f2->enumerate_within(PointSet{f2->root()}, n).size() == expected);
        expected = expected * 3 + 2;
    }
    auto t3 = WordTreeSpace::regular_tree(3);
    CHECK(t3->children(t3->root()).size() == 3);
    CHECK(t3->children(t3->children(t3->root())[0]).size() == 2);
    CHECK_THROWS_AS(WordTreeSpace::regular_tree(1), PreconditionError);
    CHECK_THROWS_AS(WordTreeSpace::free_group(0), PreconditionError);
}

TEST_CASE("ivanov tree distances") {
    auto tree = WordTreeSpace::weighted_tree(2, 10);
    auto deep = tree->word({0, 1});
    CHECK(tree->distance(tree->root(), deep) == 11);
    CHECK(tree->distance(tree->word({0, 0, 0}), tree->word({1, 0, 0})) == 222);
    CHECK(tree->distance(tree->word({0, 0, 0}), tree->word({0, 0, 1})) == 200);
    CHECK(tree->depth_weight(3) == 111);
    CHECK(tree->format_point(deep) == "0.1");
    CHECK(tree->parse_point("0.1") == deep);
}

TEST_CASE("tree with a ray") {
    TreeWithRaySpace space(3);
    auto far = TreeWithRaySpace::ray(10);
    CHECK(space.distance(far, space.base_point()) == 10);
    auto leaf = space.tree().word({0, 1});
    CHECK(space.distance(far, leaf) == 12);
    CHECK(space.format_point(far) == "r10");
    CHECK(space.parse_point("r10") == far);
    auto ball = space.enumerate_within(PointSet{far}, 5);
    CHECK(ball.size() == 11);
    CHECK_THROWS_AS(TreeWithRaySpace(2), PreconditionError);
}

TEST_CASE("finite metric spaces") {
    CHECK_THROWS_AS(FiniteMetricSpace("bad", {"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), MetricAxiomError);
    CHECK_THROWS_AS(FiniteMetricSpace("bad", {"a", "b"}, {{0, 1}, {2, 0}}), MetricAxiomError);
    CHECK_THROWS_AS(FiniteMetricSpace("bad", {"a", "b"}, {{0, 0}, {0, 0}}), MetricAxiomError);
    CHECK_THROWS_AS(FiniteMetricSpace("bad", {"a", "b"}, {{0, 1}}), PreconditionError);
    auto space = parse_finite_metric_json(
        R"({"type":"finite_metric","points":["p","q","r"],"distances":[[0,"1/2",1],["1/2",0,"1/2"],[1,"1/2",0]]})");
    CHECK(space->distance(PointId{0}, PointId{1}) == q(1, 2));
    CHECK(space->parse_point("r") == PointId{2});
    CHECK(space->arithmetic().mode == ArithmeticMode::exact_rational);
    auto floats = parse_finite_metric_json(R"({"distances":[[0,0.5],[0.5,0]]})");
    CHECK(floats->arithmetic().mode == ArithmeticMode::float_tolerance);
    CHECK_THROWS_AS(parse_finite_metric_json("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_finite_metric_json(R"({"distances":[[0,"x"],["x",0]]})"), ParseError);

    auto tripod = load_space_file(test::data_path("tripod111.json"));
    CHECK(tripod->finite_size() == std::optional<std::size_t>(4));
    auto semi = load_space_file(test::data_path("semi_tripod_1_2_3_b2.json"));
    CHECK(semi->distance(semi->parse_point("v2"), semi->parse_point("v3")) == 5);
    CHECK_THROWS_AS(load_space_file(test::data_path("triangle_shortcut.json")), PreconditionError);
    CHECK_THROWS_AS(load_space_file(test::data_path("missing.json")), ParseError);
}

TEST_CASE("truncation keeps the metric") {
    LatticeSpace z2(2);
    auto points = z2.enumerate_within(PointSet{z2.point({0, 0})}, 2);
    auto t = truncate(z2, points);
    REQUIRE(t->finite_size() == std::optional<std::size_t>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            CHECK(t->distance(PointId{i}, PointId{j}) == z2.distance(points[i], points[j]));
        }
    }
    CHECK(t->format_point(PointId{0}) == z2.format_point(points[0]));
}

TEST_CASE("box spaces") {
    SUBCASE("cycles") {
        auto box = BoxSpace({cycle_graph(4), cycle_graph(8), cycle_graph(16)});
        CHECK(box.offset(1) == 2);
        CHECK(box.offset(2) == 4);
        CHECK(box.offset(3) == 8);
        CHECK(box.distance(BoxSpace::point(1, 0), BoxSpace::point(2, 3)) == box.offset(1) + box.offset(2));
        CHECK(box.distance(BoxSpace::point(3, 0), BoxSpace::point(3, 8)) == 8);
        CHECK(box.finite_size() == std::optional<std::size_t>(28));
        CHECK(box.format_point(BoxSpace::point(2, 5)) == "G2:5");
        CHECK(box.parse_point("G2:5") == BoxSpace::point(2, 5));
    }
    SUBCASE("cross distances increase") {
        auto box = BoxSpace({cycle_graph(3), cycle_graph(3), cycle_graph(3), cycle_graph(3)});
        long previous = 0;
        for (std::size_t n = 1; n <= 4; ++n) {
            CHECK(box.offset(n) >= std::max<long>(box.diameter(n), static_cast<long>(n)));
            CHECK(box.offset(n) > previous);
            previous = box.offset(n);
        }
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t m = n + 1; m <= 4; ++m) {
                CHECK(box.distance(BoxSpace::point(n, 0), BoxSpace::point(m, 0)) == box.offset(n) + box.offset(m));
            }
        }
    }
    SUBCASE("single component is that graph") {
        auto g = cycle_graph(10);
        auto box = BoxSpace({g});
        for (std::size_t v = 0; v < 10; ++v) {
            long hop = std::min<long>(static_cast<long>(v), 10 - static_cast<long>(v));
            CHECK(box.distance(BoxSpace::point(1, 0), BoxSpace::point(1, v)) == hop);
        }
    }
    SUBCASE("components must be connected unit graphs") {
        WeightedGraph split;
        split.add_edge("a", "b", 1);
        split.add_edge("c", "d", 1);
        CHECK_THROWS_AS(BoxSpace({split}), PreconditionError);
        WeightedGraph heavy;
        heavy.add_edge("a", "b", 2);
        CHECK_THROWS_AS(BoxSpace({heavy}), PreconditionError);
    }
    SUBCASE("witness family") {
        std::vector<WeightedGraph> comps;
        for (std::size_t n = 1; n <= 5; ++n) {
            comps.push_back(random_regular_graph(std::size_t{1} << (n + 3), 4, n));
        }
        BoxSpace box(comps);
        auto family = box.witness_family(2);
        REQUIRE_FALSE(family.empty());
        for (const auto& w : family) {
            std::size_t union_size = 0;
            for (std::size_t i = 1; i <= w.n; ++i) {
                union_size += box.component(i).vertex_count();
                CHECK(box.component_points(i).is_subset_of(w.set));
            }
            auto x = BoxSpace::point(w.n + 1, 0);
            auto ball = box.enumerate_within(PointSet{x}, 2);
            CHECK(w.set.size() == union_size + box.component(w.n + 1).vertex_count() - ball.size());
            auto result = discrete_neighborhood(box, w.set, 2);
            CHECK(result.dB.is_subset_of(ball));
            CHECK_FALSE(result.dB.empty());
            std::vector<PointId> all;
            for (std::size_t i = 1; i <= w.n + 1; ++i) {
                auto pts = box.component_points(i);
                all.insert(all.end(), pts.begin(), pts.end());
            }
            CHECK(result.dN.is_subset_of(PointSet(all)));
        }
    }
}

TEST_CASE("space specs") {
    CHECK(parse_space_kind("harmonic") == SpaceKind::harmonic);
    CHECK(parse_space_kind("integer-lattice") == SpaceKind::integer_lattice);
    CHECK(parse_space_kind("free-group") == SpaceKind::free_group);
    CHECK_THROWS_AS(parse_space_kind("hyperbolic"), PreconditionError);
    for (const auto& entry : zoo_listing()) {
        CHECK(to_string(parse_space_kind(entry.kind)) == entry.kind);
    }
    SpaceSpec spec;
    spec.kind = SpaceKind::free_group;
    spec.rank = 2;
    auto f2 = make_space(spec);
    CHECK(f2->distance(f2->base_point(), f2->parse_point("abA")) == 3);
    spec.kind = SpaceKind::tripod;
    auto tri = make_space(spec);
    CHECK(tri->finite_size() == std::optional<std::size_t>(4));
    spec.weights = {1, -1, 1};
    CHECK_THROWS_AS(make_space(spec), PreconditionError);
    spec.kind = SpaceKind::semi_tripod;
    spec.weights = {1, 1, 3, 1};
    CHECK_NOTHROW(make_space(spec));
    spec.weights = {1, 1, 1, 5};
    CHECK_THROWS_AS(make_space(spec), PreconditionError);
    spec.kind = SpaceKind::integer_lattice;
    spec.dimension = 9;
    CHECK_THROWS_AS(make_space(spec), PreconditionError);
}
