#include "support.hpp"

#include "snlab/errors.hpp"
#include "snlab/isoperimetry.hpp"
#include "snlab/zoom.hpp"

#include <doctest.h>

using namespace snlab;
using snlab::test::q;

TEST_CASE("zoom ratios on the integer line") {
    LatticeSpace z(1);
    auto p = zoom_profile(z, z.at(0), 1, 100);
    REQUIRE(p.ratios.size() == 100);
    for (long n = 1; n <= 100; ++n) {
        CHECK(p.ratios[static_cast<std::size_t>(n - 1)] == q(2 * n + 1, 2 * n - 1));
    }
    CHECK(p.running_inf == q(201, 199));
    CHECK(p.tail_window == 34);
    CHECK(p.tail_sup == q(2 * 67 + 1, 2 * 67 - 1));
    CHECK(p.sizes.front() == 1);
    CHECK_FALSE(p.exhausted);

    auto p3 = zoom_profile(z, z.at(0), 3, 10);
    for (long n = 1; n <= 10; ++n) {
        CHECK(p3.ratios[static_cast<std::size_t>(n - 1)] == q(6 * n + 1, 6 * n - 5));
    }
}

TEST_CASE("zoom ratios on the free group") {
    auto f2 = WordTreeSpace::free_group(2);
    auto p = zoom_profile(*f2, f2->root(), 1, 10);
    long prev = 1;
    long power = 3;
    for (std::size_t n = 1; n <= 10; ++n) {
        long size = 2 * power - 1;
        CHECK(p.sizes[n] == static_cast<std::size_t>(size));
        CHECK(p.ratios[n - 1] == q(size, prev));
        prev = size;
        power *= 3;
    }
    CHECK(p.running_inf >= 3);
}

TEST_CASE("zoom ratios on a tree with a ray") {
    SUBCASE("degree four doubles eventually") {
        TreeWithRaySpace space(4);
        auto deep = space.tree().root();
        for (int i = 0; i < 3; ++i) {
            deep = space.tree().children(deep).front();
        }
        for (PointId x : {space.base_point(), deep, TreeWithRaySpace::ray(4)}) {
            CAPTURE(space.format_point(x));
            auto p = zoom_profile(space, x, 1, 10);
            for (std::size_t n = 7; n <= 10; ++n) {
                CHECK(p.ratios[n - 1] >= 2);
            }
        }
    }
    SUBCASE("degree three approaches doubling from below") {
        TreeWithRaySpace space(3);
        auto p = zoom_profile(space, space.base_point(), 1, 14);
        for (long n = 1; n <= 14; ++n) {
            long size = 3 * (1L << n) - 2 + n;
            long prev = 3 * (1L << (n - 1)) - 2 + (n - 1);
            CHECK(p.ratios[static_cast<std::size_t>(n - 1)] == q(size, prev));
            if (n > 4) {
                CHECK(p.ratios[static_cast<std::size_t>(n - 1)] < 2);
            }
        }
        CHECK(p.tail_sup > q(199, 100));
    }
}

TEST_CASE("running infimum is nonincreasing in the horizon") {
    HarmonicSpace h;
    LatticeSpace z2(2);
    std::vector<std::pair<const MetricSpace*, PointId>> cases{{&h, HarmonicSpace::x(3)}, {&z2, z2.point({1, 2})}};
    for (auto [space, x] : cases) {
        Rational previous = -1;
        for (int horizon = 1; horizon <= 12; ++horizon) {
            auto p = zoom_profile(*space, x, 2, horizon);
            if (previous >= 0) {
                CHECK(p.running_inf <= previous);
            }
            previous = p.running_inf;
        }
    }
}

TEST_CASE("finite spaces exhaust and ratios reach one") {
    auto tri = tripod_space(1, 2, 3);
    auto p = zoom_profile(*tri, PointId{0}, 1, 6);
    CHECK(p.exhausted);
    CHECK(p.sizes.back() == 4);
    CHECK(p.ratios.back() == 1);
    CHECK(p.running_inf == 1);
}

TEST_CASE("zoom profile preconditions") {
    LatticeSpace z(1);
    CHECK_THROWS_AS(zoom_profile(z, z.at(0), 0, 5), PreconditionError);
    CHECK_THROWS_AS(zoom_profile(z, z.at(0), 1, 0), PreconditionError);
    auto f2 = WordTreeSpace::free_group(2);
    CHECK_THROWS_AS(zoom_profile(*f2, f2->root(), 1, 12, CoreOptions{1000}), HorizonExceeded);
    CHECK_THROWS_AS(zoom_aggregate({}), PreconditionError);
}

TEST_CASE("zoom aggregation") {
    SUBCASE("integer line over several k and points") {
        LatticeSpace z(1);
        std::vector<ZoomProfile> profiles;
        for (int k : {1, 2, 3}) {
            for (long x : {0, 7}) {
                profiles.push_back(zoom_profile(z, z.at(x), k, 100));
            }
        }
        auto s = zoom_aggregate(profiles);
        CHECK(s.ks == std::vector<int>{1, 2, 3});
        CHECK(s.points.size() == 2);
        CHECK(s.horizon == 100);
        CHECK(s.lower_plus == q(601, 595));
        CHECK(s.lower_plus <= q(102, 100));
        CHECK(s.upper_plus >= s.lower_plus);
    }
    SUBCASE("regular tree") {
        auto t4 = WordTreeSpace::regular_tree(4);
        std::vector<ZoomProfile> profiles{zoom_profile(*t4, t4->root(), 1, 8), zoom_profile(*t4, t4->root(), 2, 4)};
        CHECK(zoom_aggregate(profiles).lower_plus >= 3);
    }
    SUBCASE("single profile") {
        HarmonicSpace h;
        auto p = zoom_profile(h, HarmonicSpace::x(5), 2, 9);
        auto s = zoom_aggregate({p});
        REQUIRE(s.points.size() == 1);
        CHECK(s.lower_plus == p.running_inf);
        CHECK(s.upper_plus == p.tail_sup);
        CHECK(s.points[0].x == p.base);
        CHECK(s.horizon == 9);
    }
    SUBCASE("aggregate is the sup of the inputs") {
        test::Gen gen(23);
        LatticeSpace z2(2);
        std::vector<ZoomProfile> profiles;
        for (int i = 0; i < 8; ++i) {
            auto x = z2.point({gen.between(-3, 3), gen.between(-3, 3)});
            profiles.push_back(zoom_profile(z2, x, static_cast<int>(gen.between(1, 3)), static_cast<int>(gen.between(3, 9))));
        }
        auto s = zoom_aggregate(profiles);
        for (const auto& p : profiles) {
            CHECK(p.running_inf <= s.lower_plus);
            CHECK(p.tail_sup <= s.upper_plus);
            CHECK(p.horizon >= s.horizon);
        }
    }
}

TEST_CASE("vertex-transitive spaces zoom the same everywhere") {
    test::Gen gen(31);
    LatticeSpace z2(2);
    LatticeSpace z3(3);
    auto f2 = WordTreeSpace::free_group(2);
    auto t3 = WordTreeSpace::regular_tree(3);
    std::vector<const MetricSpace*> spaces{&z2, &z3, f2.get(), t3.get()};
    for (const MetricSpace* space : spaces) {
        CAPTURE(space->id());
        auto window = space->enumerate_within(PointSet{space->base_point()}, 3);
        for (int trial = 0; trial < 4; ++trial) {
            auto a = window[gen.below(window.size())];
            auto b = window[gen.below(window.size())];
            int k = static_cast<int>(gen.between(1, 2));
            auto pa = zoom_profile(*space, a, k, 5);
            auto pb = zoom_profile(*space, b, k, 5);
            CHECK(pa.sizes == pb.sizes);
            CHECK(pa.ratios == pb.ratios);
        }
    }
}

TEST_CASE("window isoperimetry never exceeds the zoom infimum minus one") {
    HarmonicSpace h;
    LatticeSpace z(1);
    LatticeSpace z2(2);
    auto f2 = WordTreeSpace::free_group(2);
    TreeWithRaySpace ray(3);
    std::vector<const MetricSpace*> spaces{&h, &z, &z2, f2.get(), &ray};
    for (const MetricSpace* space : spaces) {
        CAPTURE(space->id());
        auto x = space->base_point();
        for (int k = 1; k <= 2; ++k) {
            const int horizon = 3;
            auto zoom = zoom_profile(*space, x, k, horizon);
            auto window = discrete_neighborhood(*space, PointSet{x}, (horizon - 1) * k).dN;
            auto records = nested_ball_records(*space, x, k, (horizon - 1) * k, window);
            REQUIRE_FALSE(records.empty());
            Rational best = records.front().quotient;
            for (const auto& r : records) {
                best = r.quotient < best ? r.quotient : best;
            }
            CHECK(best + 1 <= zoom.running_inf);
            if (window.size() <= 14) {
                SearchOptions opts;
                auto exhaustive = iso_constant_estimate(*space, window, k, IsoStrategy::exhaustive, opts);
                CHECK(exhaustive.value <= best);
                CHECK(exhaustive.value + 1 <= zoom_aggregate({zoom}).lower_plus);
            }
        }
    }
}

TEST_CASE("growth classification") {
    SUBCASE("ball sizes match discrete neighborhoods") {
        LatticeSpace z2(2);
        auto f2 = WordTreeSpace::free_group(2);
        auto t3 = WordTreeSpace::regular_tree(3);
        std::vector<const MetricSpace*> spaces{&z2, f2.get(), t3.get()};
        for (const MetricSpace* space : spaces) {
            auto g = growth_classify(*space, 7);
            for (int n = 0; n <= 7; ++n) {
                CHECK(g.ball_sizes[static_cast<std::size_t>(n)] ==
                      discrete_neighborhood(*space, PointSet{space->base_point()}, n).dN.size());
            }
        }
    }
    SUBCASE("square lattice is polynomial of degree two") {
        LatticeSpace z2(2);
        auto g = growth_classify(z2, 40);
        for (std::size_t n = 0; n <= 40; ++n) {
            CHECK(g.ball_sizes[n] == 2 * n * n + 2 * n + 1);
        }
        CHECK(g.verdict == GrowthVerdict::polynomial);
        REQUIRE(g.degree_estimate.has_value());
        CHECK(*g.degree_estimate >= 1.8);
        CHECK(*g.degree_estimate <= 2.2);
        CHECK(g.zoom_consistent);
    }
    SUBCASE("free group is exponential with rate three") {
        auto f2 = WordTreeSpace::free_group(2);
        auto g = growth_classify(*f2, 12, CoreOptions{4'000'000});
        std::size_t power = 1;
        for (std::size_t n = 0; n <= 12; ++n) {
            CHECK(g.ball_sizes[n] == 2 * power - 1);
            power *= 3;
        }
        CHECK(g.verdict == GrowthVerdict::exponential);
        REQUIRE(g.rate_estimate.has_value());
        CHECK(*g.rate_estimate >= 2.8);
        CHECK(*g.rate_estimate <= 3.0);
        CHECK(g.min_tail_root >= exponential_margin);
        CHECK(g.zoom_consistent);
    }
    SUBCASE("trivial group is degenerate") {
        LatticeSpace trivial(0);
        auto g = growth_classify(trivial, 10);
        CHECK(g.verdict == GrowthVerdict::undetermined);
        CHECK(g.evidence.find("degenerate") != std::string::npos);
    }
    SUBCASE("short horizons are undetermined") {
        LatticeSpace z(1);
        auto g = growth_classify(z, min_growth_horizon - 1);
        CHECK(g.verdict == GrowthVerdict::undetermined);
    }
    SUBCASE("spaces without unit steps are rejected") {
        HarmonicSpace h;
        CHECK_THROWS_AS(growth_classify(h, 10), PreconditionError);
    }
    SUBCASE("point cap") {
        auto f2 = WordTreeSpace::free_group(2);
        CHECK_THROWS_AS(growth_classify(*f2, 12), HorizonExceeded);
    }
}
