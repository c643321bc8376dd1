#ifndef snlab_space_hpp
#define snlab_space_hpp

#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace snlab {

inline constexpr std::size_t default_point_cap = 1'000'000;
inline constexpr double default_level_tolerance = 1e-9;

enum class ArithmeticMode { exact_rational, float_tolerance };

// How distance values are compared when grouping them into levels.
struct Arithmetic {
    ArithmeticMode mode = ArithmeticMode::exact_rational;
    double level_tolerance = default_level_tolerance;

    static Arithmetic exact() { return {}; }
    static Arithmetic tolerant(double tol = default_level_tolerance) {
        return {ArithmeticMode::float_tolerance, tol};
    }

    // True when `hi` starts a new level above `lo` (requires lo <= hi).
    bool separates(const Rational& lo, const Rational& hi) const;
};

struct PointDistance {
    PointId point;
    Rational distance;
};

class GraphStructure {
public:
    virtual ~GraphStructure() = default;
    // Unit-step neighbors in canonical order.
    virtual void neighbors(PointId p, std::vector<PointId>& out) const = 0;
};

/*
 * A locally finite metric space: distance oracle plus bounded-region
 * enumeration. Implementations are immutable after construction and safe
 * for concurrent reads.
 */
class MetricSpace {
public:
    virtual ~MetricSpace() = default;

    virtual std::string id() const = 0;
    virtual std::string description() const = 0;

    virtual Rational distance(PointId a, PointId b) const = 0;

    // Every y with d(y, seeds) <= radius, paired with d(y, seeds), sorted by
    // (distance, point). Throws HorizonExceeded past point_cap points.
    virtual std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                                    std::size_t point_cap = default_point_cap) const = 0;

    virtual Arithmetic arithmetic() const { return Arithmetic::exact(); }
    virtual std::optional<std::size_t> finite_size() const { return std::nullopt; }
    virtual PointId base_point() const = 0;
    virtual bool is_point(PointId p) const = 0;

    virtual std::string format_point(PointId p) const;
    virtual PointId parse_point(std::string_view text) const;

    // Starting radius for doubling searches.
    virtual Rational radius_hint() const { return Rational(1); }

    virtual const GraphStructure* graph_structure() const { return nullptr; }

    virtual PointSet enumerate_within(const PointSet& seeds, const Rational& radius,
                                      std::size_t point_cap = default_point_cap) const;

    // Finite spaces list every point; infinite ones throw PreconditionError.
    virtual PointSet all_points() const;
};

using SpaceHandle = std::shared_ptr<const MetricSpace>;

/*
 * Base for spaces whose metric is the hop metric of a locally finite graph.
 * Neighborhoods come from multi-source breadth-first search.
 */
class GraphSpace : public MetricSpace, public GraphStructure {
public:
    std::vector<PointDistance> neighborhood(const PointSet& seeds, const Rational& radius,
                                            std::size_t point_cap = default_point_cap) const override;
    PointSet enumerate_within(const PointSet& seeds, const Rational& radius,
                              std::size_t point_cap = default_point_cap) const override;
    const GraphStructure* graph_structure() const override { return this; }

    // Hop distances from the seeds up to max_hops, in BFS order.
    std::vector<std::pair<PointId, long>> bfs(const PointSet& seeds, long max_hops,
                                              std::size_t point_cap) const;
};

// Brute-force neighborhood over an explicit candidate list; used by finite spaces.
std::vector<PointDistance> neighborhood_by_scan(const MetricSpace& space, const PointSet& candidates,
                                                const PointSet& seeds, const Rational& radius,
                                                std::size_t point_cap);

void sort_by_distance(std::vector<PointDistance>& items);

}

#endif /* snlab_space_hpp */
