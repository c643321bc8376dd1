#include "ranked_region.hpp"
#include "snlab/errors.hpp"

#include <algorithm>

namespace snlab::detail {

RankedRegion build_ranked_region(const MetricSpace& space, const PointSet& window, const Rational& radius,
                                 std::size_t point_cap) {
    if (window.empty()) {
        throw PreconditionError("empty window");
    }
    if (window.size() > 64) {
        throw PreconditionError("window of " + std::to_string(window.size()) + " points exceeds 64");
    }
    RankedRegion out;
    out.window = window.elements();
    out.radius = radius;
    auto items = space.neighborhood(window, radius, point_cap);
    auto finite = space.finite_size();
    out.everything = finite && items.size() >= *finite;
    for (const auto& item : items) {
        out.region.push_back(item.point);
    }
    std::sort(out.region.begin(), out.region.end());

    const std::size_t r = out.region.size();
    const std::size_t w = out.window.size();
    struct Cell {
        Rational value;
        std::size_t y;
        std::size_t a;
    };
    std::vector<Cell> cells;
    cells.reserve(r * w);
    for (std::size_t y = 0; y < r; ++y) {
        for (std::size_t a = 0; a < w; ++a) {
            Rational d = out.region[y] == out.window[a] ? Rational(0) : space.distance(out.region[y], out.window[a]);
            cells.push_back({std::move(d), y, a});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& p, const Cell& q) { return p.value < q.value; });

    const Arithmetic arithmetic = space.arithmetic();
    out.rank.assign(r, std::vector<std::uint32_t>(w, 0));
    std::vector<Rational> group_max;
    for (const auto& c : cells) {
        if (out.values.empty() || arithmetic.separates(out.values.back(), c.value)) {
            out.values.push_back(c.value);
            group_max.push_back(c.value);
        } else {
            group_max.back() = c.value;
        }
        out.rank[c.y][c.a] = static_cast<std::uint32_t>(out.values.size() - 1);
    }
    out.complete_rank = 0;
    for (std::size_t i = 0; i < group_max.size(); ++i) {
        if (out.everything || group_max[i] <= radius) {
            out.complete_rank = static_cast<std::uint32_t>(i);
        } else {
            break;
        }
    }
    return out;
}

PointSet mask_to_set(const std::vector<PointId>& window, std::uint64_t mask) {
    std::vector<PointId> out;
    while (mask) {
        out.push_back(window[static_cast<std::size_t>(std::countr_zero(mask))]);
        mask &= mask - 1;
    }
    return PointSet(std::move(out));
}

}
