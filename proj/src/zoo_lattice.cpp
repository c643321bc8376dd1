#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace snlab {

namespace {

std::uint64_t zigzag(long v) {
    return v >= 0 ? static_cast<std::uint64_t>(v) << 1 : (static_cast<std::uint64_t>(-(v + 1)) << 1) | 1;
}

long unzigzag(std::uint64_t u) {
    return (u & 1) ? -static_cast<long>(u >> 1) - 1 : static_cast<long>(u >> 1);
}

}

LatticeSpace::LatticeSpace(int dimension) : dimension_(dimension), bits_(dimension > 0 ? 64 / dimension : 0) {
    if (dimension < 0 || dimension > 8) {
        throw PreconditionError("integer-lattice dimension must be between 0 and 8");
    }
}

std::string LatticeSpace::description() const {
    return "Z^" + std::to_string(dimension_) + " with the word metric of the standard generators";
}

std::vector<long> LatticeSpace::coordinates(PointId p) const {
    std::vector<long> out(static_cast<std::size_t>(dimension_));
    if (dimension_ == 1) {
        out[0] = unzigzag(p.value);
        return out;
    }
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    for (int i = 0; i < dimension_; ++i) {
        out[static_cast<std::size_t>(i)] = unzigzag((p.value >> (i * bits_)) & mask);
    }
    return out;
}

PointId LatticeSpace::point(std::span<const long> coordinates) const {
    if (coordinates.size() != static_cast<std::size_t>(dimension_)) {
        throw PreconditionError("expected " + std::to_string(dimension_) + " coordinates");
    }
    if (dimension_ == 1) {
        return PointId{zigzag(coordinates[0])};
    }
    std::uint64_t packed = 0;
    for (int i = 0; i < dimension_; ++i) {
        std::uint64_t z = zigzag(coordinates[static_cast<std::size_t>(i)]);
        if (z >> bits_) {
            throw HorizonExceeded("lattice coordinate out of representable range");
        }
        packed |= z << (i * bits_);
    }
    return PointId{packed};
}

PointId LatticeSpace::point(std::initializer_list<long> coordinates) const {
    return point(std::span<const long>(coordinates.begin(), coordinates.size()));
}

PointId LatticeSpace::base_point() const {
    return PointId{0};
}

bool LatticeSpace::is_point(PointId p) const {
    if (dimension_ == 0) {
        return p.value == 0;
    }
    int used = bits_ * dimension_;
    return used >= 64 || (p.value >> used) == 0;
}

Rational LatticeSpace::distance(PointId a, PointId b) const {
    auto x = coordinates(a);
    auto y = coordinates(b);
    long total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += std::labs(x[i] - y[i]);
    }
    return Rational(total);
}

void LatticeSpace::neighbors(PointId p, std::vector<PointId>& out) const {
    auto c = coordinates(p);
    std::size_t first = out.size();
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (long step : {-1L, 1L}) {
            c[i] += step;
            out.push_back(point(c));
            c[i] -= step;
        }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

std::optional<std::size_t> LatticeSpace::finite_size() const {
    if (dimension_ == 0) {
        return 1;
    }
    return std::nullopt;
}

PointSet LatticeSpace::all_points() const {
    if (dimension_ == 0) {
        return PointSet{PointId{0}};
    }
    return MetricSpace::all_points();
}

PointSet LatticeSpace::interval(long lo, long hi) const {
    if (dimension_ != 1) {
        throw PreconditionError("interval is only defined on Z");
    }
    std::vector<PointId> out;
    for (long n = lo; n <= hi; ++n) {
        out.push_back(at(n));
    }
    return PointSet(std::move(out));
}

std::string LatticeSpace::format_point(PointId p) const {
    auto c = coordinates(p);
    if (dimension_ == 1) {
        return std::to_string(c[0]);
    }
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += (i ? "," : "") + std::to_string(c[i]);
    }
    return out + ")";
}

PointId LatticeSpace::parse_point(std::string_view text) const {
    std::string_view body = text;
    if (body.starts_with("(") && body.ends_with(")")) {
        body = body.substr(1, body.size() - 2);
    }
    std::vector<long> coords;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view field = body.substr(0, comma);
        while (!field.empty() && field.front() == ' ') {
            field.remove_prefix(1);
        }
        long v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw ParseError("bad lattice point '" + std::string(text) + "'");
        }
        coords.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        body.remove_prefix(comma + 1);
    }
    if (coords.size() != static_cast<std::size_t>(dimension_)) {
        throw ParseError("lattice point '" + std::string(text) + "' needs " + std::to_string(dimension_) +
                         " coordinates");
    }
    return point(coords);
}

}
