#ifndef snlab_ranked_region_hpp
#define snlab_ranked_region_hpp

#include "snlab/space.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace snlab::detail {

/*
 * Distances between a small window W (at most 64 points) and every point y
 * with d(y, W) <= radius, replaced by their rank among all distinct values.
 * Ranks at or below complete_rank stand for values <= radius; any point with
 * d(y, A) <= radius for A within W is in the region.
 */
struct RankedRegion {
    std::vector<PointId> window;
    std::vector<PointId> region;
    std::vector<std::vector<std::uint32_t>> rank;  // [region index][window index]
    std::vector<Rational> values;                   // representative value per rank
    std::uint32_t complete_rank = 0;
    Rational radius;
    bool everything = false;  // the whole (finite) space is in the region
};

RankedRegion build_ranked_region(const MetricSpace& space, const PointSet& window, const Rational& radius,
                                 std::size_t point_cap);

// Canonical set order for subsets of the window given as bit masks.
inline bool mask_less(std::uint64_t a, std::uint64_t b) {
    while (a && b) {
        int la = std::countr_zero(a);
        int lb = std::countr_zero(b);
        if (la != lb) {
            return la < lb;
        }
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

PointSet mask_to_set(const std::vector<PointId>& window, std::uint64_t mask);

// Calls visit(mask) for every nonempty mask over `width` bits, split into
// `jobs` contiguous groups by the top bits; each group runs on its own thread.
// visit receives the group index as its first argument.
template <class Visit>
void for_each_mask_parallel(int width, unsigned jobs, Visit&& visit);

}

#include <thread>

namespace snlab::detail {

template <class Visit>
void for_each_mask_parallel(int width, unsigned jobs, Visit&& visit) {
    const std::uint64_t total = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width);
    unsigned groups = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    auto run = [&](unsigned g) {
        std::uint64_t lo = total / groups * g;
        std::uint64_t hi = g + 1 == groups ? total : total / groups * (g + 1);
        for (std::uint64_t mask = std::max<std::uint64_t>(lo, 1); mask < hi; ++mask) {
            visit(g, mask);
        }
    };
    if (groups == 1) {
        run(0);
        return;
    }
    std::vector<std::thread> threads;
    for (unsigned g = 0; g < groups; ++g) {
        threads.emplace_back(run, g);
    }
    for (auto& t : threads) {
        t.join();
    }
}

}

#endif /* snlab_ranked_region_hpp */
