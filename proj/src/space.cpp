#include "snlab/space.hpp"
#include "snlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace snlab {

bool Arithmetic::separates(const Rational& lo, const Rational& hi) const {
    if (mode == ArithmeticMode::exact_rational) {
        return hi > lo;
    }
    if (hi == lo) {
        return false;
    }
    // relative gap, measured against the larger magnitude
    Rational gap = hi - lo;
    Rational scale = abs(hi) > abs(lo) ? Rational(abs(hi)) : Rational(abs(lo));
    return gap > rational_from_double(level_tolerance) * scale;
}

std::string MetricSpace::format_point(PointId p) const {
    return "#" + std::to_string(p.value);
}

PointId MetricSpace::parse_point(std::string_view text) const {
    if (!text.empty() && text.front() == '#') {
        text.remove_prefix(1);
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !is_point(PointId{v})) {
        throw ParseError("unknown point '" + std::string(text) + "' in space " + id());
    }
    return PointId{v};
}

PointSet MetricSpace::enumerate_within(const PointSet& seeds, const Rational& radius,
                                       std::size_t point_cap) const {
    auto items = neighborhood(seeds, radius, point_cap);
    std::vector<PointId> ids;
    ids.reserve(items.size());
    for (const auto& item : items) {
        ids.push_back(item.point);
    }
    return PointSet(std::move(ids));
}

PointSet MetricSpace::all_points() const {
    throw PreconditionError("space " + id() + " is infinite; it has no point list");
}

void sort_by_distance(std::vector<PointDistance>& items) {
    std::sort(items.begin(), items.end(), [](const PointDistance& a, const PointDistance& b) {
        int c = cmp(a.distance, b.distance);
        return c != 0 ? c < 0 : a.point < b.point;
    });
}

std::vector<PointDistance> neighborhood_by_scan(const MetricSpace& space, const PointSet& candidates,
                                                const PointSet& seeds, const Rational& radius,
                                                std::size_t point_cap) {
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    std::vector<PointDistance> out;
    for (PointId y : candidates) {
        Rational best;
        if (seeds.contains(y)) {
            best = 0;
        } else {
            bool first = true;
            for (PointId a : seeds) {
                Rational d = space.distance(y, a);
                if (first || d < best) {
                    best = std::move(d);
                    first = false;
                }
            }
        }
        if (best <= radius) {
            out.push_back({y, std::move(best)});
            if (out.size() > point_cap) {
                throw HorizonExceeded("neighborhood exceeds point cap of " + std::to_string(point_cap));
            }
        }
    }
    sort_by_distance(out);
    return out;
}

std::vector<std::pair<PointId, long>> GraphSpace::bfs(const PointSet& seeds, long max_hops,
                                                      std::size_t point_cap) const {
    std::vector<std::pair<PointId, long>> order;
    std::unordered_map<PointId, long> seen;
    for (PointId s : seeds) {
        if (seen.emplace(s, 0).second) {
            order.emplace_back(s, 0);
        }
    }
    std::vector<PointId> nbrs;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [p, d] = order[head];
        if (d >= max_hops) {
            continue;
        }
        nbrs.clear();
        neighbors(p, nbrs);
        for (PointId q : nbrs) {
            if (seen.emplace(q, d + 1).second) {
                order.emplace_back(q, d + 1);
                if (order.size() > point_cap) {
                    throw HorizonExceeded("breadth-first search in " + id() + " exceeds point cap of " +
                                          std::to_string(point_cap));
                }
            }
        }
    }
    return order;
}

namespace {

long hop_radius(const Rational& radius) {
    mpz_class hops;
    mpz_fdiv_q(hops.get_mpz_t(), radius.get_num_mpz_t(), radius.get_den_mpz_t());
    return hops.fits_slong_p() ? hops.get_si() : std::numeric_limits<long>::max();
}

}

PointSet GraphSpace::enumerate_within(const PointSet& seeds, const Rational& radius, std::size_t point_cap) const {
    if (graph_structure() != this) {
        return MetricSpace::enumerate_within(seeds, radius, point_cap);
    }
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    if (radius < 0) {
        return {};
    }
    auto order = bfs(seeds, hop_radius(radius), point_cap);
    std::vector<PointId> ids;
    ids.reserve(order.size());
    for (const auto& item : order) {
        ids.push_back(item.first);
    }
    return PointSet(std::move(ids));
}

std::vector<PointDistance> GraphSpace::neighborhood(const PointSet& seeds, const Rational& radius,
                                                    std::size_t point_cap) const {
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    if (radius < 0) {
        return {};
    }
    auto order = bfs(seeds, hop_radius(radius), point_cap);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
    std::vector<PointDistance> out;
    out.reserve(order.size());
    for (auto& [p, d] : order) {
        out.push_back({p, Rational(d)});
    }
    return out;
}

}
