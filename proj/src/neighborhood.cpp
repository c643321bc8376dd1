#include "snlab/neighborhood.hpp"
#include "snlab/errors.hpp"

#include <algorithm>

namespace snlab {

PointSet DistanceLevels::prefix_union(std::size_t j) const {
    std::vector<PointId> out;
    for (std::size_t i = 0; i < level_members.size() && i <= j; ++i) {
        out.insert(out.end(), level_members[i].begin(), level_members[i].end());
    }
    return PointSet(std::move(out));
}

Rational distance_to_set(const MetricSpace& space, PointId x, const PointSet& A) {
    if (A.empty()) {
        throw PreconditionError("distance_to_set: the set is empty");
    }
    if (A.contains(x)) {
        return Rational(0);
    }
    Rational best = space.distance(x, A[0]);
    for (std::size_t i = 1; i < A.size(); ++i) {
        Rational d = space.distance(x, A[i]);
        if (d < best) {
            best = std::move(d);
        }
    }
    return best;
}

namespace {

void group_levels(const std::vector<PointDistance>& items, const Arithmetic& arithmetic,
                  std::vector<Rational>& levels, std::vector<std::vector<PointId>>& members) {
    for (const auto& item : items) {
        if (levels.empty() || arithmetic.separates(levels.back(), item.distance)) {
            levels.push_back(item.distance);
            members.emplace_back();
        }
        members.back().push_back(item.point);
    }
}

}

DistanceLevels distance_levels(const MetricSpace& space, const PointSet& A, int m,
                               const CoreOptions& options) {
    if (A.empty()) {
        throw PreconditionError("distance_levels: base set is empty");
    }
    if (m < 0) {
        throw PreconditionError("distance_levels: m must be nonnegative");
    }
    for (PointId a : A) {
        if (!space.is_point(a)) {
            throw PreconditionError("distance_levels: " + std::to_string(a.value) + " is not a point of " +
                                    space.id());
        }
    }
    const Arithmetic arithmetic = space.arithmetic();
    const auto finite = space.finite_size();
    const std::size_t wanted = static_cast<std::size_t>(m) + 1;

    Rational radius = space.radius_hint();
    if (radius <= 0) {
        radius = 1;
    }
    while (true) {
        auto items = space.neighborhood(A, radius, options.point_cap);
        std::vector<Rational> levels;
        std::vector<std::vector<PointId>> members;
        group_levels(items, arithmetic, levels, members);

        // with tolerance grouping the outermost group may continue past the radius
        const std::size_t safe = arithmetic.mode == ArithmeticMode::exact_rational || levels.empty()
                                     ? levels.size()
                                     : levels.size() - 1;
        const bool everything = finite && items.size() >= *finite;
        if (safe >= wanted || everything) {
            DistanceLevels out;
            out.base_set = A;
            out.certified_radius = radius;
            std::size_t keep = std::min(wanted, levels.size());
            out.exhausted = levels.size() < wanted;
            out.levels.assign(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(keep));
            for (std::size_t i = 0; i < keep; ++i) {
                out.level_members.emplace_back(std::move(members[i]));
            }
            return out;
        }
        // Extrapolate from the mean gap of the confirmed levels, capped at
        // doubling; a guess that does not pass the radius grows it by half.
        Rational next = radius * Rational(3, 2);
        if (safe >= 2) {
            Rational gap = levels[safe - 1] / static_cast<unsigned long>(safe - 1);
            Rational guess = levels[safe - 1] + gap * static_cast<unsigned long>(wanted - safe);
            Rational ceiling = radius * 2;
            if (guess > radius) {
                next = guess > ceiling ? ceiling : guess;
            }
        } else {
            next = radius * 2;
        }
        radius = std::move(next);
    }
}

NeighborhoodResult discrete_neighborhood(const MetricSpace& space, const PointSet& A, int k,
                                         const CoreOptions& options) {
    if (k < 0) {
        throw PreconditionError("discrete_neighborhood: k must be nonnegative");
    }
    NeighborhoodResult out;
    out.k = k;
    out.levels_used = distance_levels(space, A, k, options);
    out.dN = out.levels_used.prefix_union(static_cast<std::size_t>(k));
    out.dB = out.dN.set_difference(A);
    return out;
}

PointSet closed_neighborhood(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                             const CoreOptions& options) {
    if (A.empty()) {
        throw PreconditionError("closed_neighborhood: base set is empty");
    }
    if (alpha < 0) {
        throw PreconditionError("closed_neighborhood: alpha must be nonnegative");
    }
    return space.enumerate_within(A, alpha, options.point_cap);
}

PointSet closed_boundary(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                         const CoreOptions& options) {
    return closed_neighborhood(space, A, alpha, options).set_difference(A);
}

bool verify_complete_chain(const DistanceLevels& levels, std::span<const Rational> candidate,
                           const Arithmetic& arithmetic) {
    if (candidate.empty() || levels.levels.empty()) {
        return false;
    }
    const Rational& top = levels.levels.back();
    auto max_it = std::max_element(candidate.begin(), candidate.end());
    if (!levels.exhausted && arithmetic.separates(top, *max_it) && *max_it > top) {
        throw PreconditionError("verify_complete_chain: insufficient levels for candidate maximum " +
                                to_string(*max_it));
    }

    auto index_of = [&](const Rational& v) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < levels.levels.size(); ++i) {
            const Rational& p = levels.levels[i];
            bool same = p <= v ? !arithmetic.separates(p, v) : !arithmetic.separates(v, p);
            if (same) {
                return static_cast<std::ptrdiff_t>(i);
            }
        }
        return -1;
    };

    std::ptrdiff_t previous = -1;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        std::ptrdiff_t idx = index_of(candidate[i]);
        if (idx < 0) {
            return false;
        }
        if (i == 0 ? idx != 0 : idx != previous + 1) {
            return false;
        }
        previous = idx;
    }
    return true;
}

}
