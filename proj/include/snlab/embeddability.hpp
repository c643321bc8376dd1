#ifndef snlab_embeddability_hpp
#define snlab_embeddability_hpp

#include "snlab/neighborhood.hpp"
#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace snlab {

inline constexpr double default_gram_tolerance = 1e-8;

enum class EmbedVerdict { embeddable, not_embeddable, marginal };
std::string to_string(EmbedVerdict verdict);

struct GramCheckResult {
    std::vector<PointId> points;  // canonical order; points[0] is the base point
    std::vector<std::string> labels;
    std::vector<std::vector<double>> gram;
    double min_eigenvalue = 0;
    double max_norm = 0;
    double tolerance = default_gram_tolerance;
    EmbedVerdict verdict = EmbedVerdict::embeddable;
    // Exact inputs with a Gram matrix of order at most 6: every principal minor
    // evaluated in rational arithmetic.
    std::optional<bool> exact_psd;
    std::vector<Rational> leading_minors;
    std::string diagnostics;
};

// Gram matrix G_ij = (d(x0,xi)^2 + d(x0,xj)^2 - d(xi,xj)^2) / 2 over the points
// other than the base x0. The metric is isometrically Hilbert embeddable iff G
// is positive semidefinite.
GramCheckResult schoenberg_test(const MetricSpace& space, const PointSet& points,
                                double tolerance = default_gram_tolerance);

struct DyadicBand {
    int r = 0;              // band [2^r, 2^(r+1)]
    std::size_t count = 0;  // radii of the profile inside the band
    bool complete = false;  // the profile reaches 2^(r+1)
};

struct BallGrowthProfile {
    PointId base;
    std::vector<Rational> radii;     // r_1 < r_2 < ...
    std::vector<std::size_t> counts;  // |B(x, r_n)|
    std::vector<DyadicBand> dyadic;
    std::optional<double> poly_exponent;  // smallest grid C with r_n <= n^C, if any
    bool exhausted = false;               // finite space ran out of radii
};

inline constexpr double poly_grid_step = 0.25;
inline constexpr double poly_grid_max = 8.0;

BallGrowthProfile ball_growth_profile(const MetricSpace& space, PointId x, int horizon,
                                      const CoreOptions& options = {});

struct CoverEstimate {
    PointId center;
    Rational t;
    std::size_t ball_size = 0;           // |B(x, 2t)|
    std::size_t greedy_cover_size = 0;   // upper bound for the t-ball covering number
    std::vector<PointId> cover_centers;
    std::size_t packing_size = 0;        // points of B(x, 2t) pairwise farther than 2t apart
    std::vector<PointId> packing;
    Rational ratio_to_ball;              // greedy_cover_size / ball_size
};

CoverEstimate covering_estimate(const MetricSpace& space, PointId x, const Rational& t,
                                const CoreOptions& options = {});

struct UBGSample {
    PointId x;
    PointId y;
    Rational r;
    std::size_t size_x = 0;
    std::size_t size_y = 0;
};

struct UBGReport {
    std::vector<UBGSample> samples;  // one per radius: the extreme pair
    Rational max_ratio = 1;
    Rational constant_estimate = 1;
};

UBGReport ubg_report(const MetricSpace& space, const PointSet& sample_points, const std::vector<Rational>& radii,
                     const CoreOptions& options = {});

struct DoublingRow {
    int r = 0;
    std::size_t band_radii = 0;           // |Gamma^x_r|
    std::optional<Rational> expansion;    // min |dN_k(B_n)| / |B_n| over balls with r_n in the band
    std::size_t K_r = 0;                  // max |B(c, 2^r)| over the sampled centers
    std::size_t outer_ball = 0;           // |B(x, 2^(r+1))|
    std::size_t cover = 0;                // greedy cover of B(x, 2^(r+1)) by 2^r-balls
    std::size_t packing = 0;
};

struct DoublingReport {
    PointId x;
    int k = 1;
    std::vector<PointId> centers;
    std::vector<DoublingRow> rows;
};

DoublingReport sn_vs_doubling_report(const MetricSpace& space, PointId x, int r_lo, int r_hi, int k,
                                     const std::vector<PointId>& centers = {}, const CoreOptions& options = {});

}

#endif /* snlab_embeddability_hpp */
