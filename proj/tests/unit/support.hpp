#ifndef snlab_test_support_hpp
#define snlab_test_support_hpp

#include "snlab/metric_graph.hpp"
#include "snlab/neighborhood.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace snlab::test {

// Seeded generator shared by the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return below(2) == 1; }

    // Nonempty random subset of the given points.
    PointSet subset(const PointSet& from, std::size_t max_size) {
        std::size_t size = 1 + below(std::min(max_size, from.size()));
        std::vector<PointId> pool = from.elements();
        std::shuffle(pool.begin(), pool.end(), rng_);
        pool.resize(size);
        return PointSet(std::move(pool));
    }

    Rational positive_rational(long max_num, long max_den) {
        return make_rational(between(1, max_num), between(1, max_den));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Brute-force d(y, A) for every point of a finite space.
inline std::vector<Rational> brute_distances(const MetricSpace& space, const PointSet& all, const PointSet& A) {
    std::vector<Rational> out;
    for (auto y : all) {
        Rational best = -1;
        for (auto a : A) {
            Rational d = y == a ? Rational(0) : space.distance(y, a);
            if (best < 0 || d < best) {
                best = d;
            }
        }
        out.push_back(best);
    }
    return out;
}

// Points of a finite space reachable from A by a complete chain of at most k
// steps, found by explicitly extending chains one value at a time and asking
// verify_complete_chain about every candidate extension. The levels handed to
// it are built by brute force, independently of distance_levels.
inline PointSet chain_oracle(const MetricSpace& space, const PointSet& all, const PointSet& A, int k) {
    auto dist = brute_distances(space, all, A);
    std::vector<Rational> values = dist;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    DistanceLevels brute;
    brute.base_set = A;
    brute.levels = values;
    brute.exhausted = true;
    for (const auto& v : values) {
        std::vector<PointId> members;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (dist[i] == v) {
                members.push_back(all[i]);
            }
        }
        brute.level_members.emplace_back(std::move(members));
    }

    std::vector<Rational> reachable_values;
    std::vector<std::vector<Rational>> frontier{{}};
    for (int step = 0; step <= k; ++step) {
        std::vector<std::vector<Rational>> next;
        for (const auto& chain : frontier) {
            for (const auto& v : values) {
                std::vector<Rational> candidate = chain;
                candidate.push_back(v);
                if (verify_complete_chain(brute, candidate)) {
                    reachable_values.push_back(v);
                    next.push_back(std::move(candidate));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<PointId> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (std::find(reachable_values.begin(), reachable_values.end(), dist[i]) != reachable_values.end()) {
            out.push_back(all[i]);
        }
    }
    return PointSet(std::move(out));
}

// Breadth-first hop distances from A over a space's unit-step graph, inside a
// bounded window of points (used as an oracle for graph spaces).
inline std::map<PointId, long> bfs_oracle(const GraphStructure& graph, const PointSet& A, long max_hops) {
    std::map<PointId, long> dist;
    std::vector<PointId> frontier(A.begin(), A.end());
    for (auto a : A) {
        dist[a] = 0;
    }
    std::vector<PointId> nbrs;
    for (long h = 1; h <= max_hops; ++h) {
        std::vector<PointId> next;
        for (auto p : frontier) {
            nbrs.clear();
            graph.neighbors(p, nbrs);
            for (auto q : nbrs) {
                if (!dist.count(q)) {
                    dist[q] = h;
                    next.push_back(q);
                }
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

inline PointSet ids(std::initializer_list<std::uint64_t> values) {
    std::vector<PointId> out;
    for (auto v : values) {
        out.push_back(PointId{v});
    }
    return PointSet(std::move(out));
}

inline std::string data_path(const std::string& name) {
    return std::string(SNLAB_TEST_DATA) + "/" + name;
}

inline Rational q(long num, long den = 1) {
    return make_rational(num, den);
}

}

#endif /* snlab_test_support_hpp */
