#include "snlab/embeddability.hpp"
#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace snlab {

std::string to_string(EmbedVerdict verdict) {
    switch (verdict) {
    case EmbedVerdict::embeddable: return "embeddable";
    case EmbedVerdict::not_embeddable: return "not-embeddable";
    case EmbedVerdict::marginal: return "marginal";
    }
    return "marginal";
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) {
                continue;
            }
            Rational f = m[row][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[row][c] -= f * m[col][c];
            }
        }
    }
    return det;
}

Rational principal_minor(const std::vector<std::vector<Rational>>& g, std::uint32_t subset) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if ((subset >> i) & 1) {
            idx.push_back(i);
        }
    }
    std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
            sub[a][b] = g[idx[a]][idx[b]];
        }
    }
    return determinant(std::move(sub));
}

constexpr std::size_t exact_minor_limit = 6;

}

GramCheckResult schoenberg_test(const MetricSpace& space, const PointSet& points, double tolerance) {
    if (points.size() < 2) {
        throw PreconditionError("schoenberg_test needs at least two points");
    }
    if (tolerance < 0) {
        throw PreconditionError("schoenberg_test: tolerance must be nonnegative");
    }
    // metric axioms on the subset (throws with a witness triple)
    auto sub = truncate(space, points);
    FiniteMetricSpace checked(sub->id(), sub->labels(), sub->table(), space.arithmetic(), true);
    const auto& d = checked.table();

    GramCheckResult out;
    out.points = points.elements();
    out.labels = checked.labels();
    out.tolerance = tolerance;
    const std::size_t n = points.size() - 1;
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& a = d[0][i + 1];
            const Rational& b = d[0][j + 1];
            const Rational& c = d[i + 1][j + 1];
            g[i][j] = (a * a + b * b - c * c) / 2;
        }
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    out.gram.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = g[i][j].get_d();
            out.gram[i][j] = v;
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            out.max_norm = std::max(out.max_norm, std::abs(v));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    const bool float_psd = out.min_eigenvalue >= -tolerance * out.max_norm;

    if (space.arithmetic().mode == ArithmeticMode::exact_rational && n <= exact_minor_limit) {
        for (std::size_t i = 1; i <= n; ++i) {
            out.leading_minors.push_back(principal_minor(g, (std::uint32_t{1} << i) - 1));
        }
        bool psd = true;
        for (std::uint32_t s = 1; s < (std::uint32_t{1} << n) && psd; ++s) {
            if (principal_minor(g, s) < 0) {
                psd = false;
            }
        }
        out.exact_psd = psd;
        if (psd == float_psd) {
            out.verdict = psd ? EmbedVerdict::embeddable : EmbedVerdict::not_embeddable;
            out.diagnostics = psd ? "all principal minors are nonnegative"
                                  : "a principal minor is negative (exact)";
        } else {
            out.verdict = EmbedVerdict::marginal;
            out.diagnostics = "floating-point eigenvalue and exact minors disagree";
        }
    } else {
        out.verdict = float_psd ? EmbedVerdict::embeddable : EmbedVerdict::not_embeddable;
        out.diagnostics = "floating-point eigenvalue test only";
    }
    return out;
}

BallGrowthProfile ball_growth_profile(const MetricSpace& space, PointId x, int horizon, const CoreOptions& options) {
    if (horizon < 1) {
        throw PreconditionError("ball_growth_profile: horizon must be at least 1");
    }
    auto levels = distance_levels(space, PointSet{x}, horizon, options);
    BallGrowthProfile out;
    out.base = x;
    out.exhausted = levels.exhausted;
    std::size_t total = levels.level_members.empty() ? 0 : levels.level_members[0].size();
    for (std::size_t i = 1; i < levels.count(); ++i) {
        total += levels.level_members[i].size();
        out.radii.push_back(levels.levels[i]);
        out.counts.push_back(total);
    }
    if (!out.radii.empty()) {
        const Rational& top = out.radii.back();
        Rational lo = 1;
        for (int r = 0; lo <= top; ++r) {
            Rational hi = lo * 2;
            DyadicBand band;
            band.r = r;
            band.complete = out.exhausted || top >= hi;
            for (const auto& radius : out.radii) {
                if (radius >= lo && radius <= hi) {
                    ++band.count;
                }
            }
            out.dyadic.push_back(band);
            lo = hi;
        }
    }
    for (double c = poly_grid_step; c <= poly_grid_max + 1e-12; c += poly_grid_step) {
        bool ok = true;
        for (std::size_t i = 0; i < out.radii.size() && ok; ++i) {
            double bound = std::pow(static_cast<double>(i + 1), c);
            ok = out.radii[i].get_d() <= bound * (1 + 1e-12);
        }
        if (ok) {
            out.poly_exponent = c;
            break;
        }
    }
    return out;
}

CoverEstimate covering_estimate(const MetricSpace& space, PointId x, const Rational& t, const CoreOptions& options) {
    if (t <= 0) {
        throw PreconditionError("covering_estimate: t must be positive");
    }
    auto items = space.neighborhood(PointSet{x}, 2 * t, options.point_cap);
    std::vector<PointId> ball;
    for (const auto& item : items) {
        ball.push_back(item.point);
    }
    std::sort(ball.begin(), ball.end());
    std::unordered_map<PointId, std::size_t> index;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        index.emplace(ball[i], i);
    }
    // t-balls restricted to B(x, 2t); symmetric, so reach[c] also lists who covers c
    std::vector<std::vector<std::size_t>> reach(ball.size());
    for (std::size_t c = 0; c < ball.size(); ++c) {
        for (const auto& item : space.neighborhood(PointSet{ball[c]}, t, options.point_cap)) {
            auto it = index.find(item.point);
            if (it != index.end()) {
                reach[c].push_back(it->second);
            }
        }
    }

    CoverEstimate out;
    out.center = x;
    out.t = t;
    out.ball_size = ball.size();
    std::vector<std::size_t> gain(ball.size());
    for (std::size_t c = 0; c < ball.size(); ++c) {
        gain[c] = reach[c].size();
    }
    std::vector<char> covered(ball.size(), 0);
    std::size_t remaining = ball.size();
    while (remaining > 0) {
        std::size_t pick = 0;
        for (std::size_t c = 1; c < ball.size(); ++c) {
            if (gain[c] > gain[pick]) {
                pick = c;
            }
        }
        out.cover_centers.push_back(ball[pick]);
        for (auto p : reach[pick]) {
            if (!covered[p]) {
                covered[p] = 1;
                --remaining;
                for (auto c : reach[p]) {
                    --gain[c];
                }
            }
        }
    }
    out.greedy_cover_size = out.cover_centers.size();

    // farthest-first packing: pairwise distances > 2t
    std::vector<std::size_t> order(ball.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::unordered_map<PointId, Rational> from_x;
    for (const auto& item : items) {
        from_x.emplace(item.point, item.distance);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return from_x.at(ball[a]) > from_x.at(ball[b]);
    });
    const Rational limit = 2 * t;
    for (auto i : order) {
        bool far = true;
        for (auto p : out.packing) {
            if (space.distance(p, ball[i]) <= limit) {
                far = false;
                break;
            }
        }
        if (far) {
            out.packing.push_back(ball[i]);
        }
    }
    out.packing_size = out.packing.size();
    out.ratio_to_ball = Rational(static_cast<unsigned long>(out.greedy_cover_size),
                                 static_cast<unsigned long>(std::max<std::size_t>(out.ball_size, 1)));
    out.ratio_to_ball.canonicalize();
    return out;
}

UBGReport ubg_report(const MetricSpace& space, const PointSet& sample_points, const std::vector<Rational>& radii,
                     const CoreOptions& options) {
    if (sample_points.empty() || radii.empty()) {
        throw PreconditionError("ubg_report needs sample points and radii");
    }
    UBGReport out;
    for (const auto& r : radii) {
        if (r < 0) {
            throw PreconditionError("ubg_report: radii must be nonnegative");
        }
        std::size_t hi = 0;
        std::size_t lo = 0;
        PointId px = sample_points[0];
        PointId py = sample_points[0];
        for (auto p : sample_points) {
            std::size_t size = space.neighborhood(PointSet{p}, r, options.point_cap).size();
            if (hi == 0 || size > hi) {
                hi = size;
                px = p;
            }
            if (lo == 0 || size < lo) {
                lo = size;
                py = p;
            }
        }
        out.samples.push_back({px, py, r, hi, lo});
        Rational ratio(static_cast<unsigned long>(hi), static_cast<unsigned long>(lo));
        ratio.canonicalize();
        if (ratio > out.max_ratio) {
            out.max_ratio = ratio;
        }
    }
    out.constant_estimate = out.max_ratio;
    return out;
}

DoublingReport sn_vs_doubling_report(const MetricSpace& space, PointId x, int r_lo, int r_hi, int k,
                                     const std::vector<PointId>& centers, const CoreOptions& options) {
    if (r_lo < 0 || r_hi < r_lo) {
        throw PreconditionError("sn_vs_doubling_report: need 0 <= r_lo <= r_hi");
    }
    if (k < 1) {
        throw PreconditionError("sn_vs_doubling_report: k must be at least 1");
    }
    DoublingReport out;
    out.x = x;
    out.k = k;
    out.centers = centers.empty() ? std::vector<PointId>{x} : centers;
    for (int r = r_lo; r <= r_hi; ++r) {
        Rational lo(mpz_class(1) << r);
        Rational hi = lo * 2;
        DoublingRow row;
        row.r = r;
        auto items = space.neighborhood(PointSet{x}, hi, options.point_cap);
        row.outer_ball = items.size();
        std::vector<Rational> radii;
        for (const auto& item : items) {
            if (item.distance > 0 && (radii.empty() || radii.back() != item.distance)) {
                radii.push_back(item.distance);
            }
        }
        for (const auto& radius : radii) {
            if (radius < lo || radius > hi) {
                continue;
            }
            ++row.band_radii;
            std::vector<PointId> members;
            for (const auto& item : items) {
                if (item.distance <= radius) {
                    members.push_back(item.point);
                }
            }
            PointSet ball(std::move(members));
            auto nb = discrete_neighborhood(space, ball, k, options);
            Rational ratio(static_cast<unsigned long>(nb.dN.size()), static_cast<unsigned long>(ball.size()));
            ratio.canonicalize();
            if (!row.expansion || ratio < *row.expansion) {
                row.expansion = ratio;
            }
        }
        for (auto c : out.centers) {
            row.K_r = std::max(row.K_r, space.neighborhood(PointSet{c}, lo, options.point_cap).size());
        }
        auto cover = covering_estimate(space, x, lo, options);
        row.cover = cover.greedy_cover_size;
        row.packing = cover.packing_size;
        out.rows.push_back(row);
    }
    return out;
}

}
