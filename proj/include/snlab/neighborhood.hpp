#ifndef snlab_neighborhood_hpp
#define snlab_neighborhood_hpp

#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <span>
#include <vector>

namespace snlab {

struct CoreOptions {
    std::size_t point_cap = default_point_cap;
};

// The smallest values p_0 = 0 < p_1 < ... < p_m of P = {d(y, A) : y in X}
// together with the points realizing each value.
struct DistanceLevels {
    PointSet base_set;
    std::vector<Rational> levels;
    std::vector<PointSet> level_members;
    // P has fewer than m + 1 elements (only possible in finite spaces).
    bool exhausted = false;
    // Every y with d(y, A) <= certified_radius was enumerated.
    Rational certified_radius;

    std::size_t count() const { return levels.size(); }
    // Union of the level sets p_0 .. p_j (clamped to the stored levels).
    PointSet prefix_union(std::size_t j) const;
};

struct NeighborhoodResult {
    int k = 0;
    PointSet dN;
    PointSet dB;
    DistanceLevels levels_used;
};

Rational distance_to_set(const MetricSpace& space, PointId x, const PointSet& A);

DistanceLevels distance_levels(const MetricSpace& space, const PointSet& A, int m,
                               const CoreOptions& options = {});

// dN_k(A): points reachable from A along a complete chain of at most k steps,
// computed as the union of the first k + 1 level sets.
NeighborhoodResult discrete_neighborhood(const MetricSpace& space, const PointSet& A, int k,
                                         const CoreOptions& options = {});

// cN_alpha(A) = {x : d(x, A) <= alpha}
PointSet closed_neighborhood(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                             const CoreOptions& options = {});
// cB_alpha(A) = cN_alpha(A) \ A
PointSet closed_boundary(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                         const CoreOptions& options = {});

// True iff the candidate starts at 0, increases strictly, and consecutive
// entries are adjacent stored levels. Throws PreconditionError ("insufficient
// levels") when the candidate runs past levels that were not exhausted.
bool verify_complete_chain(const DistanceLevels& levels, std::span<const Rational> candidate,
                           const Arithmetic& arithmetic = Arithmetic::exact());

}

#endif /* snlab_neighborhood_hpp */
