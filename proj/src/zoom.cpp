#include "snlab/zoom.hpp"
#include "snlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace snlab {

ZoomProfile zoom_profile(const MetricSpace& space, PointId x, int k, int horizon, const CoreOptions& options) {
    if (k < 1) {
        throw PreconditionError("zoom_profile: k must be at least 1");
    }
    if (horizon < 1) {
        throw PreconditionError("zoom_profile: horizon must be at least 1");
    }
    auto levels = distance_levels(space, PointSet{x}, k * horizon, options);
    std::vector<std::size_t> cumulative;
    std::size_t total = 0;
    for (const auto& members : levels.level_members) {
        total += members.size();
        cumulative.push_back(total);
    }
    ZoomProfile out;
    out.base = x;
    out.k = k;
    out.horizon = horizon;
    out.exhausted = levels.exhausted;
    for (int n = 0; n <= horizon; ++n) {
        std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(n * k), cumulative.size() - 1);
        out.sizes.push_back(cumulative[j]);
    }
    for (int n = 1; n <= horizon; ++n) {
        Rational r(static_cast<unsigned long>(out.sizes[static_cast<std::size_t>(n)]),
                   static_cast<unsigned long>(out.sizes[static_cast<std::size_t>(n - 1)]));
        r.canonicalize();
        out.ratios.push_back(r);
    }
    out.running_inf = *std::min_element(out.ratios.begin(), out.ratios.end());
    out.tail_window = (horizon + 2) / 3;
    out.tail_sup = *std::max_element(out.ratios.end() - out.tail_window, out.ratios.end());
    return out;
}

ZoomSummary zoom_aggregate(const std::vector<ZoomProfile>& profiles) {
    if (profiles.empty()) {
        throw PreconditionError("zoom_aggregate: no profiles");
    }
    ZoomSummary out;
    out.horizon = profiles.front().horizon;
    for (const auto& p : profiles) {
        out.horizon = std::min(out.horizon, p.horizon);
        if (std::find(out.ks.begin(), out.ks.end(), p.k) == out.ks.end()) {
            out.ks.push_back(p.k);
        }
        auto it = std::find_if(out.points.begin(), out.points.end(),
                               [&](const ZoomPointSummary& s) { return s.x == p.base; });
        if (it == out.points.end()) {
            out.points.push_back({p.base, p.running_inf, p.tail_sup});
        } else {
            if (p.running_inf > it->lower) {
                it->lower = p.running_inf;
            }
            if (p.tail_sup > it->upper) {
                it->upper = p.tail_sup;
            }
        }
    }
    std::sort(out.ks.begin(), out.ks.end());
    std::sort(out.points.begin(), out.points.end(),
              [](const ZoomPointSummary& a, const ZoomPointSummary& b) { return a.x < b.x; });
    out.lower_plus = out.points.front().lower;
    out.upper_plus = out.points.front().upper;
    for (const auto& s : out.points) {
        if (s.lower > out.lower_plus) {
            out.lower_plus = s.lower;
        }
        if (s.upper > out.upper_plus) {
            out.upper_plus = s.upper;
        }
    }
    return out;
}

std::string to_string(GrowthVerdict verdict) {
    switch (verdict) {
    case GrowthVerdict::polynomial: return "polynomial";
    case GrowthVerdict::exponential: return "exponential";
    case GrowthVerdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

GrowthClassification growth_classify(const MetricSpace& space, int horizon, const CoreOptions& options) {
    const GraphStructure* graph = space.graph_structure();
    if (!graph) {
        throw PreconditionError("growth_classify needs a space with unit-step levels (word metric)");
    }
    if (horizon < 1) {
        throw PreconditionError("growth_classify: horizon must be at least 1");
    }
    GrowthClassification out;
    out.horizon = horizon;

    // breadth-first sphere growth from the identity
    std::unordered_set<PointId> seen{space.base_point()};
    std::vector<PointId> sphere{space.base_point()};
    std::vector<PointId> nbrs;
    out.ball_sizes.push_back(1);
    for (int n = 1; n <= horizon; ++n) {
        std::vector<PointId> next;
        for (auto p : sphere) {
            nbrs.clear();
            graph->neighbors(p, nbrs);
            for (auto q : nbrs) {
                if (seen.insert(q).second) {
                    next.push_back(q);
                    if (seen.size() > options.point_cap) {
                        throw HorizonExceeded("growth_classify: ball exceeds point cap of " +
                                              std::to_string(options.point_cap));
                    }
                }
            }
        }
        sphere = std::move(next);
        out.ball_sizes.push_back(seen.size());
    }
    for (int n = 1; n <= horizon; ++n) {
        out.nth_roots.push_back(std::pow(static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n)]), 1.0 / n));
    }
    for (int n = 2; n <= horizon; ++n) {
        double db = std::log(static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n)])) -
                    std::log(static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n - 1)]));
        double dn = std::log(static_cast<double>(n)) - std::log(static_cast<double>(n - 1));
        out.local_slopes.push_back(db / dn);
    }

    auto zoom = zoom_profile(space, space.base_point(), 1, horizon, options);
    out.zoom_running_inf = zoom.running_inf;
    out.zoom_tail_sup = zoom.tail_sup;

    std::ostringstream evidence;
    const int tail = (horizon + 2) / 3;
    out.tail_start = horizon - tail + 1;
    if (out.ball_sizes.back() == out.ball_sizes[static_cast<std::size_t>(horizon - 1)]) {
        out.verdict = GrowthVerdict::undetermined;
        evidence << "degenerate: the ball stopped growing at |B| = " << out.ball_sizes.back();
        out.evidence = evidence.str();
        return out;
    }
    if (horizon < min_growth_horizon) {
        out.verdict = GrowthVerdict::undetermined;
        evidence << "horizon " << horizon << " is below " << min_growth_horizon << "; no stable fit";
        out.evidence = evidence.str();
        return out;
    }

    double lo = INFINITY;
    double hi = -INFINITY;
    for (int n = std::max(2, out.tail_start); n <= horizon; ++n) {
        double s = out.local_slopes[static_cast<std::size_t>(n - 2)];
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    out.slope_drift = hi - lo;
    out.min_tail_root = INFINITY;
    for (int n = out.tail_start; n <= horizon; ++n) {
        out.min_tail_root = std::min(out.min_tail_root, out.nth_roots[static_cast<std::size_t>(n - 1)]);
    }

    if (out.slope_drift < slope_drift_tolerance) {
        out.verdict = GrowthVerdict::polynomial;
        // least-squares slope of log |B(n)| against log n over the tail
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (int n = out.tail_start; n <= horizon; ++n) {
            double lx = std::log(static_cast<double>(n));
            double ly = std::log(static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n)]));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++count;
        }
        out.degree_estimate = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        evidence << "log-log slope drift " << out.slope_drift << " < " << slope_drift_tolerance << " over n >= "
                 << out.tail_start;
        out.zoom_consistent = out.zoom_tail_sup < Rational(11, 10);
    } else if (out.min_tail_root >= exponential_margin) {
        out.verdict = GrowthVerdict::exponential;
        double rate = INFINITY;
        for (int n = std::max(2, out.tail_start); n <= horizon; ++n) {
            double s = static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n)] -
                                           out.ball_sizes[static_cast<std::size_t>(n - 1)]);
            double s_prev = static_cast<double>(out.ball_sizes[static_cast<std::size_t>(n - 1)] -
                                                out.ball_sizes[static_cast<std::size_t>(n - 2)]);
            rate = std::min(rate, s / s_prev);
        }
        out.rate_estimate = rate;
        evidence << "n-th roots >= " << out.min_tail_root << " >= " << exponential_margin << " over n >= "
                 << out.tail_start;
        out.zoom_consistent = out.zoom_running_inf > 1;
    } else {
        out.verdict = GrowthVerdict::undetermined;
        evidence << "slope drift " << out.slope_drift << " and minimum tail root " << out.min_tail_root
                 << " fit neither model";
    }
    out.evidence = evidence.str();
    return out;
}

}
