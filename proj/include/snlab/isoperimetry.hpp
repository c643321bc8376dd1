#ifndef snlab_isoperimetry_hpp
#define snlab_isoperimetry_hpp

#include "snlab/neighborhood.hpp"
#include "snlab/point_set.hpp"
#include "snlab/rational.hpp"
#include "snlab/space.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace snlab {

struct IsoQuotientRecord {
    int k = 1;
    std::size_t set_size = 0;
    std::size_t boundary_size = 0;
    Rational quotient;  // boundary_size / set_size
    PointSet witness;
    std::string source;  // strategy or family that produced the set
};

enum class BoundDirection { upper_bound_of_inf, lower_bound_of_inf, estimate };

struct BoundEstimate {
    Rational value;
    BoundDirection direction = BoundDirection::estimate;
    bool certified = false;
    std::string window;
    int k = 1;
    std::optional<IsoQuotientRecord> best;
    std::size_t sets_examined = 0;
};

enum class IsoStrategy { exhaustive, nested_balls, greedy_local };

std::string to_string(BoundDirection direction);
std::string to_string(IsoStrategy strategy);
IsoStrategy parse_iso_strategy(std::string_view text);

struct SearchOptions {
    std::size_t exhaustive_cap = 20;
    std::size_t point_cap = default_point_cap;
    unsigned jobs = 1;
    int horizon = 64;        // deepest nested ball dN_j(seed)
    int greedy_steps = 200;  // accepted single-point moves
    std::vector<PointId> seeds;
};

// |dB_k(A)| / |A|.
IsoQuotientRecord k_quotient(const MetricSpace& space, const PointSet& A, int k, const CoreOptions& options = {});

// Window-scoped surrogate for inf_A |dB_k(A)|/|A|. Every strategy only
// inspects subsets of the window, so each value bounds that infimum from above.
BoundEstimate iso_constant_estimate(const MetricSpace& space, const PointSet& window, int k, IsoStrategy strategy,
                                    const SearchOptions& options = {});

// Quotients of dN_0(seed), dN_1(seed), ..., stopping at max_depth, at the
// first ball leaving `window` (when given), or when the space is exhausted.
std::vector<IsoQuotientRecord> nested_ball_records(const MetricSpace& space, PointId seed, int k, int max_depth,
                                                   const std::optional<PointSet>& window = std::nullopt,
                                                   const CoreOptions& options = {});

enum class SNVerdict { witnessed_below, inconclusive };
std::string to_string(SNVerdict verdict);

struct SNSearchOptions : SearchOptions {
    Rational epsilon = Rational(1, 100);
    bool greedy = true;
    // Extra candidate sets (for example a box-space witness family).
    std::vector<PointSet> extra_family;
    std::string extra_family_name = "extra-family";
};

struct SNSearchResult {
    int k = 1;
    Rational epsilon;
    std::vector<IsoQuotientRecord> records;
    SNVerdict verdict = SNVerdict::inconclusive;
    std::optional<IsoQuotientRecord> witness;
    std::string diagnostics;
};

SNSearchResult sn_witness_search(const MetricSpace& space, int k, const SNSearchOptions& options = {});

enum class AmenabilityVerdict { witness_found, no_witness_in_window };
std::string to_string(AmenabilityVerdict verdict);

struct AmenabilityResult {
    AmenabilityVerdict verdict = AmenabilityVerdict::no_witness_in_window;
    std::optional<PointSet> witness;
    // Best set seen: its size, |cN_k| (CGH) or |boundary| (BW), and the ratio to |set|.
    PointSet best_set;
    std::size_t best_set_size = 0;
    std::size_t best_measure = 0;
    Rational best_ratio;
    bool exhaustive = false;  // the whole window was searched
    std::string window;
    std::size_t sets_examined = 0;
    // Exhaustive runs: number of window subsets satisfying the witness inequality.
    std::size_t witnesses_in_window = 0;
    std::string diagnostics;
};

// |cN_alpha(A)|
std::size_t cgh_neighborhood_size(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                                  const CoreOptions& options = {});

struct CGHOptions : SearchOptions {
    Rational factor = 2;
    std::optional<PointSet> window;  // exhaustive search over its subsets when small enough
    bool exhaustive = true;
};

// Looks for finite A with |cN_k(A)| < factor * |A|.
AmenabilityResult amenability_cgh_test(const MetricSpace& space, const Rational& k, const CGHOptions& options = {});

// Quasi-lattice candidate: membership predicate plus covering radius.
struct QuasiLattice {
    std::string description;
    std::function<bool(PointId)> member;
    Rational alpha;
    std::map<Rational, std::size_t> K_table;  // r -> max |Gamma n B_r(x)| over the window
    bool validated = false;
    std::string window;
};

QuasiLattice identity_lattice();
QuasiLattice point_set_lattice(PointSet gamma, Rational alpha, std::string description);

struct QuasiLatticeCheck {
    bool valid = false;
    QuasiLattice lattice;
    std::optional<PointId> covering_failure;
    std::string report;
};

QuasiLatticeCheck quasi_lattice_verify(const MetricSpace& space, QuasiLattice candidate, const PointSet& window,
                                       const std::vector<Rational>& radii, const CoreOptions& options = {});

// {x in Gamma : d(x, U) < r and d(x, Gamma \ U) < r}
PointSet bw_boundary(const MetricSpace& space, const QuasiLattice& lattice, const PointSet& U, const Rational& r,
                     const CoreOptions& options = {});

struct BWOptions : SearchOptions {
    std::optional<PointSet> window;
    bool exhaustive = true;
};

// Looks for finite U within Gamma with |boundary_r U| / |U| < delta.
AmenabilityResult amenability_bw_test(const MetricSpace& space, const QuasiLattice& lattice, const Rational& r,
                                      const Rational& delta, const BWOptions& options = {});

}

#endif /* snlab_isoperimetry_hpp */
