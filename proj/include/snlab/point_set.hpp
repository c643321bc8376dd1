#ifndef snlab_point_set_hpp
#define snlab_point_set_hpp

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace snlab {

// Opaque point identifier issued by a space. Equality is identifier equality;
// the numeric order is the canonical order used for reproducible output.
struct PointId {
    std::uint64_t value = 0;

    friend constexpr auto operator<=>(PointId, PointId) = default;
};

// Finite set of points, kept sorted and duplicate-free.
class PointSet {
public:
    using const_iterator = std::vector<PointId>::const_iterator;

    PointSet() = default;
    PointSet(std::initializer_list<PointId> points) : points_(points) { normalize(); }
    explicit PointSet(std::vector<PointId> points) : points_(std::move(points)) { normalize(); }

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const_iterator begin() const { return points_.begin(); }
    const_iterator end() const { return points_.end(); }
    PointId operator[](std::size_t i) const { return points_[i]; }
    std::span<const PointId> view() const { return points_; }
    const std::vector<PointId>& elements() const { return points_; }

    bool contains(PointId p) const { return std::binary_search(points_.begin(), points_.end(), p); }

    bool is_subset_of(const PointSet& other) const {
        return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
    }

    PointSet set_union(const PointSet& other) const;
    PointSet set_difference(const PointSet& other) const;
    PointSet set_intersection(const PointSet& other) const;

    // Canonical set order: lexicographic on the sorted element sequences.
    friend auto operator<=>(const PointSet& a, const PointSet& b) {
        return std::lexicographical_compare_three_way(a.points_.begin(), a.points_.end(),
                                                      b.points_.begin(), b.points_.end());
    }
    friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

private:
    void normalize() {
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    std::vector<PointId> points_;
};

inline PointSet PointSet::set_union(const PointSet& other) const {
    std::vector<PointId> out;
    out.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    PointSet r;
    r.points_ = std::move(out);
    return r;
}

inline PointSet PointSet::set_difference(const PointSet& other) const {
    std::vector<PointId> out;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    PointSet r;
    r.points_ = std::move(out);
    return r;
}

inline PointSet PointSet::set_intersection(const PointSet& other) const {
    std::vector<PointId> out;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    PointSet r;
    r.points_ = std::move(out);
    return r;
}

}

template <>
struct std::hash<snlab::PointId> {
    std::size_t operator()(snlab::PointId p) const noexcept {
        std::uint64_t x = p.value;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

#endif /* snlab_point_set_hpp */
