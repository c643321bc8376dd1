#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace snlab {

namespace {

constexpr int component_shift = 40;
constexpr std::uint64_t vertex_mask = (std::uint64_t{1} << component_shift) - 1;

}

BoxSpace::BoxSpace(std::vector<WeightedGraph> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw PreconditionError("box space needs at least one component");
    }
    long previous = 0;
    for (std::size_t n = 1; n <= components_.size(); ++n) {
        const auto& g = components_[n - 1];
        if (g.vertex_count() == 0 || !g.connected()) {
            throw PreconditionError("box space component " + std::to_string(n) + " is empty or disconnected");
        }
        if (!g.unit_weights()) {
            throw PreconditionError("box space component " + std::to_string(n) + " must have unit weights");
        }
        long diam = static_cast<long>(hop_diameter(g));
        long r = std::max({diam, static_cast<long>(n), previous + 1});
        diameters_.push_back(diam);
        offsets_.push_back(r);
        previous = r;
        total_ += g.vertex_count();
    }
}

std::string BoxSpace::description() const {
    return "box space with " + std::to_string(components_.size()) + " components, " + std::to_string(total_) +
           " points";
}

PointId BoxSpace::point(std::size_t component, std::size_t vertex) {
    return PointId{(static_cast<std::uint64_t>(component) << component_shift) | vertex};
}

std::size_t BoxSpace::component_of(PointId p) {
    return static_cast<std::size_t>(p.value >> component_shift);
}

std::size_t BoxSpace::vertex_of(PointId p) {
    return static_cast<std::size_t>(p.value & vertex_mask);
}

bool BoxSpace::is_point(PointId p) const {
    std::size_t n = component_of(p);
    return n >= 1 && n <= components_.size() && vertex_of(p) < components_[n - 1].vertex_count();
}

std::vector<long> BoxSpace::bfs_component(std::size_t n, std::span<const std::size_t> sources) const {
    return component(n).hop_distances(sources);
}

Rational BoxSpace::distance(PointId a, PointId b) const {
    if (!is_point(a) || !is_point(b)) {
        throw PreconditionError("point outside the box space");
    }
    std::size_t na = component_of(a);
    std::size_t nb = component_of(b);
    if (na != nb) {
        return Rational(offset(na) + offset(nb));
    }
    std::size_t src = vertex_of(a);
    auto dist = bfs_component(na, std::span<const std::size_t>(&src, 1));
    return Rational(dist[vertex_of(b)]);
}

PointSet BoxSpace::component_points(std::size_t n) const {
    std::vector<PointId> out;
    for (std::size_t v = 0; v < component(n).vertex_count(); ++v) {
        out.push_back(point(n, v));
    }
    return PointSet(std::move(out));
}

PointSet BoxSpace::all_points() const {
    std::vector<PointId> out;
    for (std::size_t n = 1; n <= components_.size(); ++n) {
        for (std::size_t v = 0; v < component(n).vertex_count(); ++v) {
            out.push_back(point(n, v));
        }
    }
    return PointSet(std::move(out));
}

std::vector<PointDistance> BoxSpace::neighborhood(const PointSet& seeds, const Rational& radius,
                                                  std::size_t point_cap) const {
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    if (radius < 0) {
        return {};
    }
    std::map<std::size_t, std::vector<std::size_t>> by_component;
    for (auto s : seeds) {
        if (!is_point(s)) {
            throw PreconditionError("point outside the box space");
        }
        by_component[component_of(s)].push_back(vertex_of(s));
    }
    std::vector<PointDistance> out;
    for (std::size_t m = 1; m <= components_.size(); ++m) {
        // cross distance from component m to the nearest other seeded component
        std::optional<long> cross;
        for (const auto& [n, vs] : by_component) {
            if (n != m) {
                long c = offset(m) + offset(n);
                if (!cross || c < *cross) {
                    cross = c;
                }
            }
        }
        auto own = by_component.find(m);
        if (own == by_component.end() && (!cross || Rational(*cross) > radius)) {
            continue;
        }
        std::vector<long> inside;
        if (own != by_component.end()) {
            inside = bfs_component(m, own->second);
        }
        for (std::size_t v = 0; v < component(m).vertex_count(); ++v) {
            std::optional<long> d;
            if (!inside.empty() && inside[v] >= 0) {
                d = inside[v];
            }
            if (cross && (!d || *cross < *d)) {
                d = cross;
            }
            if (d && Rational(*d) <= radius) {
                out.push_back({point(m, v), Rational(*d)});
                if (out.size() > point_cap) {
                    throw HorizonExceeded("box space neighborhood exceeds point cap of " +
                                          std::to_string(point_cap));
                }
            }
        }
    }
    sort_by_distance(out);
    return out;
}

std::string BoxSpace::format_point(PointId p) const {
    return "G" + std::to_string(component_of(p)) + ":" + std::to_string(vertex_of(p));
}

PointId BoxSpace::parse_point(std::string_view text) const {
    auto colon = text.find(':');
    if (!text.starts_with("G") || colon == std::string_view::npos) {
        return MetricSpace::parse_point(text);
    }
    std::size_t n = 0;
    std::size_t v = 0;
    auto r1 = std::from_chars(text.data() + 1, text.data() + colon, n);
    auto r2 = std::from_chars(text.data() + colon + 1, text.data() + text.size(), v);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != text.data() + text.size()) {
        throw ParseError("bad box space point '" + std::string(text) + "'");
    }
    PointId p = point(n, v);
    if (!is_point(p)) {
        throw ParseError("box space point '" + std::string(text) + "' does not exist");
    }
    return p;
}

std::vector<BoxSpace::Witness> BoxSpace::witness_family(int k) const {
    if (k < 1) {
        throw PreconditionError("witness_family: k must be at least 1");
    }
    std::vector<Witness> out;
    std::vector<PointId> prefix;
    for (std::size_t n = 1; n < components_.size(); ++n) {
        for (std::size_t v = 0; v < component(n).vertex_count(); ++v) {
            prefix.push_back(point(n, v));
        }
        std::size_t next = n + 1;
        if (diameter(next) < k || offset(n) + offset(next) <= k) {
            continue;
        }
        std::size_t x = 0;
        auto dist = bfs_component(next, std::span<const std::size_t>(&x, 1));
        std::vector<PointId> members = prefix;
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist[v] > k) {
                members.push_back(point(next, v));
            }
        }
        if (members.size() == prefix.size()) {
            continue;
        }
        out.push_back({n, PointSet(std::move(members))});
    }
    return out;
}

SpaceHandle box_space(std::vector<WeightedGraph> components) {
    return std::make_shared<BoxSpace>(std::move(components));
}

}
