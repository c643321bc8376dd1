#ifndef snlab_zoom_hpp
#define snlab_zoom_hpp

#include "snlab/neighborhood.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace snlab {

struct ZoomProfile {
    PointId base;
    int k = 1;
    int horizon = 0;
    std::vector<std::size_t> sizes;  // |dN_{nk}(x)| for n = 0..horizon
    std::vector<Rational> ratios;    // sizes[n] / sizes[n-1] for n = 1..horizon
    Rational running_inf;            // inf of the ratios so far
    Rational tail_sup;               // sup over the last tail_window ratios
    int tail_window = 0;
    bool exhausted = false;          // finite space ran out of levels
};

ZoomProfile zoom_profile(const MetricSpace& space, PointId x, int k, int horizon, const CoreOptions& options = {});

struct ZoomPointSummary {
    PointId x;
    Rational lower;  // sup over k of running_inf
    Rational upper;  // sup over k of tail_sup
};

struct ZoomSummary {
    std::vector<ZoomPointSummary> points;
    Rational lower_plus;  // sup over x of lower
    Rational upper_plus;  // sup over x of upper
    std::vector<int> ks;
    int horizon = 0;  // smallest horizon among the profiles
};

ZoomSummary zoom_aggregate(const std::vector<ZoomProfile>& profiles);

enum class GrowthVerdict { polynomial, exponential, undetermined };
std::string to_string(GrowthVerdict verdict);

inline constexpr double exponential_margin = 1.05;
inline constexpr double slope_drift_tolerance = 0.1;
inline constexpr int min_growth_horizon = 6;

struct GrowthClassification {
    int horizon = 0;
    std::vector<std::size_t> ball_sizes;  // |B(n)|, n = 0..horizon
    std::vector<double> nth_roots;        // |B(n)|^(1/n), n = 1..horizon
    std::vector<double> local_slopes;     // log-log slopes between n-1 and n, n = 2..horizon
    int tail_start = 0;                   // first n of the tail window
    double slope_drift = 0;
    double min_tail_root = 0;
    GrowthVerdict verdict = GrowthVerdict::undetermined;
    std::optional<double> degree_estimate;
    std::optional<double> rate_estimate;
    Rational zoom_running_inf;
    Rational zoom_tail_sup;
    bool zoom_consistent = true;
    std::string evidence;
};

// Needs a unit-step graph structure (word metric) and uses the base point as identity.
GrowthClassification growth_classify(const MetricSpace& space, int horizon, const CoreOptions& options = {});

}

#endif /* snlab_zoom_hpp */
