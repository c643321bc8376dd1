#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace snlab {

std::string HarmonicSpace::description() const {
    return "harmonic partial sums x_n = 1 + 1/2 + ... + 1/n on the real line";
}

Rational HarmonicSpace::harmonic_number(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (prefix_sums_.size() <= n) {
        Rational next = prefix_sums_.back() + Rational(1, prefix_sums_.size());
        next.canonicalize();
        prefix_sums_.push_back(std::move(next));
    }
    return prefix_sums_[n];
}

Rational HarmonicSpace::distance(PointId a, PointId b) const {
    if (!is_point(a) || !is_point(b)) {
        throw PreconditionError("harmonic space points are x_n with n >= 1");
    }
    if (a == b) {
        return Rational(0);
    }
    auto lo = std::min(a.value, b.value);
    auto hi = std::max(a.value, b.value);
    return harmonic_number(hi) - harmonic_number(lo);
}

PointSet HarmonicSpace::prefix(std::uint64_t n) {
    std::vector<PointId> points;
    points.reserve(n);
    for (std::uint64_t i = 1; i <= n; ++i) {
        points.push_back(PointId{i});
    }
    return PointSet(std::move(points));
}

std::vector<PointDistance> HarmonicSpace::neighborhood(const PointSet& seeds, const Rational& radius,
                                                       std::size_t point_cap) const {
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    for (auto s : seeds) {
        if (!is_point(s)) {
            throw PreconditionError("harmonic space points are x_n with n >= 1");
        }
    }
    if (radius < 0) {
        return {};
    }
    // Only the nearest seed on each side matters, so walk outward from every
    // seed until the radius or the next seed is reached.
    std::map<std::uint64_t, Rational> best;
    auto offer = [&](std::uint64_t n, const Rational& d) {
        auto [it, inserted] = best.emplace(n, d);
        if (!inserted && d < it->second) {
            it->second = d;
        }
        if (best.size() > point_cap) {
            throw HorizonExceeded("harmonic neighborhood exceeds point cap of " + std::to_string(point_cap));
        }
    };
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        std::uint64_t s = seeds[i].value;
        offer(s, Rational(0));
        std::uint64_t left_stop = i == 0 ? 0 : seeds[i - 1].value;
        Rational d = 0;
        for (std::uint64_t n = s; n > left_stop + 1;) {
            d += Rational(1, n);
            --n;
            if (d > radius) {
                break;
            }
            offer(n, d);
        }
        bool last = i + 1 == seeds.size();
        std::uint64_t right_stop = last ? 0 : seeds[i + 1].value;
        d = 0;
        for (std::uint64_t n = s + 1; last || n < right_stop; ++n) {
            d += Rational(1, n);
            if (d > radius) {
                break;
            }
            offer(n, d);
        }
    }
    std::vector<PointDistance> out;
    out.reserve(best.size());
    for (auto& [n, d] : best) {
        d.canonicalize();
        out.push_back({PointId{n}, d});
    }
    sort_by_distance(out);
    return out;
}

std::string HarmonicSpace::format_point(PointId p) const {
    return "x_" + std::to_string(p.value);
}

PointId HarmonicSpace::parse_point(std::string_view text) const {
    std::string_view digits = text;
    if (digits.starts_with("x_")) {
        digits.remove_prefix(2);
    } else if (digits.starts_with("x")) {
        digits.remove_prefix(1);
    }
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || n == 0) {
        throw ParseError("harmonic points are written x_n with n >= 1, got '" + std::string(text) + "'");
    }
    return PointId{n};
}

}
