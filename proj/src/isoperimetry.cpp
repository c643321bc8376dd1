#include "snlab/isoperimetry.hpp"
#include "ranked_region.hpp"
#include "snlab/errors.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>

namespace snlab {

std::string to_string(BoundDirection direction) {
    switch (direction) {
    case BoundDirection::upper_bound_of_inf: return "upper-bound-of-inf";
    case BoundDirection::lower_bound_of_inf: return "lower-bound-of-inf";
    case BoundDirection::estimate: return "estimate";
    }
    return "estimate";
}

std::string to_string(IsoStrategy strategy) {
    switch (strategy) {
    case IsoStrategy::exhaustive: return "exhaustive";
    case IsoStrategy::nested_balls: return "nested-balls";
    case IsoStrategy::greedy_local: return "greedy-local";
    }
    return "exhaustive";
}

IsoStrategy parse_iso_strategy(std::string_view text) {
    if (text == "exhaustive") {
        return IsoStrategy::exhaustive;
    }
    if (text == "nested-balls" || text == "nested") {
        return IsoStrategy::nested_balls;
    }
    if (text == "greedy-local" || text == "greedy") {
        return IsoStrategy::greedy_local;
    }
    throw PreconditionError("unknown strategy '" + std::string(text) + "'");
}

std::string to_string(SNVerdict verdict) {
    return verdict == SNVerdict::witnessed_below ? "witnessed-below" : "inconclusive";
}

std::string to_string(AmenabilityVerdict verdict) {
    return verdict == AmenabilityVerdict::witness_found ? "witness-found" : "no-witness-in-window";
}

namespace {

struct Ratio {
    std::size_t num = 0;
    std::size_t den = 1;
};

// a < b as fractions
bool ratio_less(Ratio a, Ratio b) {
    return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

bool ratio_equal(Ratio a, Ratio b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
}

Rational to_rational(Ratio r) {
    Rational q(static_cast<unsigned long>(r.num), static_cast<unsigned long>(r.den));
    q.canonicalize();
    return q;
}

std::string describe_set(const MetricSpace& space, const PointSet& s) {
    if (s.size() <= 6) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            out += (i ? "," : "") + space.format_point(s[i]);
        }
        return out + "}";
    }
    return std::to_string(s.size()) + " points from " + space.format_point(s[0]) + " to " +
           space.format_point(s[s.size() - 1]);
}

std::vector<PointId> default_seeds(const MetricSpace& space, const std::optional<PointSet>& window,
                                   const SearchOptions& options) {
    if (!options.seeds.empty()) {
        return options.seeds;
    }
    if (!window) {
        return {space.base_point()};
    }
    if (window->size() <= 64) {
        return window->elements();
    }
    std::vector<PointId> out;
    if (window->contains(space.base_point())) {
        out.push_back(space.base_point());
    }
    for (std::size_t i = 0; i < 64; ++i) {
        out.push_back((*window)[i * window->size() / 64]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/*
 * First-improvement local search over single-point additions and removals.
 * Moves are tried in canonical order (removals, then additions); the first
 * strictly better set is accepted.
 */
template <class Eval, class Additions>
PointSet local_search(PointSet current, Ratio current_value, Eval&& eval, Additions&& additions, int max_steps,
                      std::size_t evaluation_budget, std::size_t& evaluations, Ratio& best_value) {
    for (int step = 0; step < max_steps; ++step) {
        bool improved = false;
        std::vector<PointSet> moves;
        if (current.size() > 1) {
            for (auto p : current) {
                moves.push_back(current.set_difference(PointSet{p}));
            }
        }
        for (auto p : additions(current)) {
            if (!current.contains(p)) {
                moves.push_back(current.set_union(PointSet{p}));
            }
        }
        for (auto& candidate : moves) {
            if (evaluations >= evaluation_budget) {
                best_value = current_value;
                return current;
            }
            ++evaluations;
            Ratio v = eval(candidate);
            if (ratio_less(v, current_value)) {
                current = std::move(candidate);
                current_value = v;
                improved = true;
                break;
            }
        }
        if (!improved) {
            break;
        }
    }
    best_value = current_value;
    return current;
}

IsoQuotientRecord make_record(int k, const PointSet& A, std::size_t boundary, std::string source) {
    IsoQuotientRecord rec;
    rec.k = k;
    rec.set_size = A.size();
    rec.boundary_size = boundary;
    rec.quotient = to_rational({boundary, A.size()});
    rec.witness = A;
    rec.source = std::move(source);
    return rec;
}

bool record_better(const IsoQuotientRecord& a, const IsoQuotientRecord& b) {
    int c = cmp(a.quotient, b.quotient);
    return c != 0 ? c < 0 : a.witness < b.witness;
}

struct ExhaustiveBest {
    Ratio value{1, 0};
    std::uint64_t mask = 0;
    bool have = false;
    bool insufficient = false;
};

void offer(ExhaustiveBest& best, Ratio v, std::uint64_t mask) {
    if (!best.have || ratio_less(v, best.value) || (ratio_equal(v, best.value) && detail::mask_less(mask, best.mask))) {
        best.value = v;
        best.mask = mask;
        best.have = true;
    }
}

// Minimum of |dB_k(A)|/|A| over all nonempty A within the window.
std::optional<ExhaustiveBest> exhaustive_iso(const detail::RankedRegion& rr, int k, unsigned jobs) {
    const int w = static_cast<int>(rr.window.size());
    const std::size_t r = rr.region.size();
    const int low_bits = std::min(w, 10);
    const std::uint64_t low_count = std::uint64_t{1} << low_bits;
    const std::uint64_t high_count = std::uint64_t{1} << (w - low_bits);
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::vector<std::uint32_t>> low_min(low_count, std::vector<std::uint32_t>(r, none));
    for (std::uint64_t l = 1; l < low_count; ++l) {
        int bit = std::countr_zero(l);
        const auto& prev = low_min[l & (l - 1)];
        auto& cur = low_min[l];
        for (std::size_t y = 0; y < r; ++y) {
            cur[y] = std::min(prev[y], rr.rank[y][static_cast<std::size_t>(bit)]);
        }
    }
    const std::uint32_t complete = rr.complete_rank;
    const std::size_t wanted = static_cast<std::size_t>(k) + 1;

    unsigned groups = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(high_count)));
    std::vector<ExhaustiveBest> results(groups);
    auto run = [&](unsigned g) {
        ExhaustiveBest& best = results[g];
        std::vector<std::uint32_t> base(r);
        std::vector<std::uint32_t> distinct;
        std::uint64_t h_lo = high_count * g / groups;
        std::uint64_t h_hi = high_count * (g + 1) / groups;
        for (std::uint64_t h = h_lo; h < h_hi && !best.insufficient; ++h) {
            std::fill(base.begin(), base.end(), none);
            for (std::uint64_t bits = h; bits; bits &= bits - 1) {
                std::size_t a = static_cast<std::size_t>(std::countr_zero(bits) + low_bits);
                for (std::size_t y = 0; y < r; ++y) {
                    base[y] = std::min(base[y], rr.rank[y][a]);
                }
            }
            for (std::uint64_t l = 0; l < low_count; ++l) {
                std::uint64_t mask = (h << low_bits) | l;
                if (mask == 0) {
                    continue;
                }
                const auto& lm = low_min[l];
                // the k+1 smallest distinct ranks among complete ones
                distinct.clear();
                for (std::size_t y = 0; y < r; ++y) {
                    std::uint32_t v = std::min(base[y], lm[y]);
                    if (v > complete) {
                        continue;
                    }
                    auto pos = std::lower_bound(distinct.begin(), distinct.end(), v);
                    if (pos != distinct.end() && *pos == v) {
                        continue;
                    }
                    if (distinct.size() < wanted) {
                        distinct.insert(pos, v);
                    } else if (pos != distinct.end()) {
                        distinct.insert(pos, v);
                        distinct.pop_back();
                    }
                }
                std::uint32_t threshold;
                if (distinct.size() >= wanted) {
                    threshold = distinct.back();
                } else if (rr.everything) {
                    threshold = none;
                } else {
                    best.insufficient = true;
                    break;
                }
                std::size_t count = 0;
                for (std::size_t y = 0; y < r; ++y) {
                    if (std::min(base[y], lm[y]) <= threshold) {
                        ++count;
                    }
                }
                std::size_t size = static_cast<std::size_t>(std::popcount(mask));
                offer(best, {count - size, size}, mask);
            }
        }
    };
    if (groups == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned g = 0; g < groups; ++g) {
            threads.emplace_back(run, g);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    ExhaustiveBest total;
    for (const auto& part : results) {
        if (part.insufficient) {
            return std::nullopt;
        }
        if (part.have) {
            offer(total, part.value, part.mask);
        }
    }
    return total;
}

void require_window(const PointSet& window, const MetricSpace& space) {
    if (window.empty()) {
        throw PreconditionError("empty window");
    }
    for (auto p : window) {
        if (!space.is_point(p)) {
            throw PreconditionError("window point " + std::to_string(p.value) + " is not in " + space.id());
        }
    }
}

}

IsoQuotientRecord k_quotient(const MetricSpace& space, const PointSet& A, int k, const CoreOptions& options) {
    if (A.empty()) {
        throw PreconditionError("k_quotient: empty set");
    }
    if (k < 1) {
        throw PreconditionError("k_quotient: k must be at least 1");
    }
    auto nb = discrete_neighborhood(space, A, k, options);
    return make_record(k, A, nb.dB.size(), "explicit");
}

std::vector<IsoQuotientRecord> nested_ball_records(const MetricSpace& space, PointId seed, int k, int max_depth,
                                                   const std::optional<PointSet>& window,
                                                   const CoreOptions& options) {
    if (max_depth < 0) {
        throw PreconditionError("nested_ball_records: negative depth");
    }
    auto levels = distance_levels(space, PointSet{seed}, max_depth, options);
    std::vector<IsoQuotientRecord> out;
    for (std::size_t j = 0; j < levels.count(); ++j) {
        PointSet ball = levels.prefix_union(j);
        if (window && !ball.is_subset_of(*window)) {
            break;
        }
        auto rec = k_quotient(space, ball, k, options);
        rec.source = "nested-balls";
        out.push_back(std::move(rec));
    }
    return out;
}

BoundEstimate iso_constant_estimate(const MetricSpace& space, const PointSet& window, int k, IsoStrategy strategy,
                                    const SearchOptions& options) {
    require_window(window, space);
    if (k < 1) {
        throw PreconditionError("iso_constant_estimate: k must be at least 1");
    }
    CoreOptions core{options.point_cap};
    BoundEstimate est;
    est.k = k;
    est.direction = BoundDirection::upper_bound_of_inf;
    est.window = "subsets of " + describe_set(space, window);

    if (strategy == IsoStrategy::exhaustive) {
        if (window.size() > options.exhaustive_cap) {
            throw PreconditionError("exhaustive search: window of " + std::to_string(window.size()) +
                                    " points exceeds the cap of " + std::to_string(options.exhaustive_cap));
        }
        Rational radius = space.radius_hint();
        for (int attempt = 0;; ++attempt) {
            auto rr = detail::build_ranked_region(space, window, radius, options.point_cap);
            auto result = exhaustive_iso(rr, k, options.jobs);
            if (result) {
                PointSet best = detail::mask_to_set(rr.window, result->mask);
                est.best = make_record(k, best, result->value.num, "exhaustive");
                est.value = est.best->quotient;
                est.certified = true;
                est.sets_examined = (std::size_t{1} << window.size()) - 1;
                est.window = "all nonempty subsets of " + describe_set(space, window);
                return est;
            }
            if (attempt > 60) {
                throw HorizonExceeded("exhaustive search could not certify enough distance levels");
            }
            radius *= 2;
        }
    }

    std::optional<IsoQuotientRecord> best;
    std::size_t examined = 0;
    for (auto seed : default_seeds(space, window, options)) {
        if (!window.contains(seed)) {
            continue;
        }
        int depth = std::min<int>(options.horizon, static_cast<int>(window.size()));
        for (auto& rec : nested_ball_records(space, seed, k, depth, window, core)) {
            ++examined;
            if (!best || record_better(rec, *best)) {
                best = std::move(rec);
            }
        }
    }
    if (!best) {
        throw PreconditionError("no nested ball around the seeds fits in the window");
    }
    if (strategy == IsoStrategy::greedy_local) {
        auto eval = [&](const PointSet& A) -> Ratio {
            auto nb = discrete_neighborhood(space, A, k, core);
            return {nb.dB.size(), A.size()};
        };
        auto additions = [&](const PointSet& A) {
            return window.set_difference(A).elements();
        };
        Ratio value{best->boundary_size, best->set_size};
        std::size_t evaluations = 0;
        PointSet found = local_search(best->witness, value, eval, additions, options.greedy_steps,
                                      static_cast<std::size_t>(options.greedy_steps) * 64, evaluations, value);
        examined += evaluations;
        best = make_record(k, found, value.num, "greedy-local");
    }
    est.best = best;
    est.value = best->quotient;
    est.certified = false;
    est.sets_examined = examined;
    est.window = to_string(strategy) + " sets inside " + describe_set(space, window);
    return est;
}

SNSearchResult sn_witness_search(const MetricSpace& space, int k, const SNSearchOptions& options) {
    if (k < 1) {
        throw PreconditionError("sn_witness_search: k must be at least 1");
    }
    if (options.epsilon <= 0) {
        throw PreconditionError("sn_witness_search: epsilon must be positive");
    }
    CoreOptions core{options.point_cap};
    SNSearchResult result;
    result.k = k;
    result.epsilon = options.epsilon;
    auto consider = [&](IsoQuotientRecord rec) {
        bool below = rec.quotient < options.epsilon;
        result.records.push_back(rec);
        if (below && (!result.witness || record_better(rec, *result.witness))) {
            result.witness = std::move(rec);
        }
        return below;
    };

    try {
        for (auto seed : default_seeds(space, std::nullopt, options)) {
            auto levels = distance_levels(space, PointSet{seed}, options.horizon, core);
            for (std::size_t j = 0; j < levels.count(); ++j) {
                auto rec = k_quotient(space, levels.prefix_union(j), k, core);
                rec.source = "nested-balls(" + space.format_point(seed) + ")";
                if (consider(std::move(rec))) {
                    break;
                }
            }
        }
        for (const auto& set : options.extra_family) {
            auto rec = k_quotient(space, set, k, core);
            rec.source = options.extra_family_name;
            consider(std::move(rec));
        }
        if (!result.witness && options.greedy && !result.records.empty()) {
            const IsoQuotientRecord* start = &result.records.front();
            for (const auto& rec : result.records) {
                if (record_better(rec, *start)) {
                    start = &rec;
                }
            }
            auto eval = [&](const PointSet& A) -> Ratio {
                auto nb = discrete_neighborhood(space, A, k, core);
                return {nb.dB.size(), A.size()};
            };
            auto additions = [&](const PointSet& A) {
                return discrete_neighborhood(space, A, 1, core).dB.elements();
            };
            Ratio value{start->boundary_size, start->set_size};
            std::size_t evaluations = 0;
            PointSet found = local_search(start->witness, value, eval, additions, options.greedy_steps,
                                          static_cast<std::size_t>(options.greedy_steps) * 64, evaluations, value);
            consider(make_record(k, found, value.num, "greedy-local"));
        }
    } catch (const HorizonExceeded& e) {
        result.diagnostics = std::string("budget exhausted: ") + e.what();
    }

    if (result.witness) {
        result.verdict = SNVerdict::witnessed_below;
    } else {
        result.verdict = SNVerdict::inconclusive;
        std::string best = "none";
        if (!result.records.empty()) {
            auto it = std::min_element(result.records.begin(), result.records.end(), record_better);
            best = to_string(it->quotient);
        }
        if (result.diagnostics.empty()) {
            result.diagnostics = "no set with quotient below " + to_string(options.epsilon) +
                                 " within nested-ball depth " + std::to_string(options.horizon) +
                                 "; best quotient " + best;
        }
    }
    return result;
}

std::size_t cgh_neighborhood_size(const MetricSpace& space, const PointSet& A, const Rational& alpha,
                                  const CoreOptions& options) {
    return closed_neighborhood(space, A, alpha, options).size();
}

namespace {

struct MaskSearch {
    std::uint64_t witnesses = 0;
    ExhaustiveBest best;
};

// Generic exhaustive mask search with a per-mask measure; witness iff measure < bound(size).
template <class Measure, class IsWitness>
MaskSearch search_masks(int width, unsigned jobs, Measure&& measure, IsWitness&& is_witness) {
    unsigned groups = std::max(1u, jobs);
    std::vector<MaskSearch> parts(groups);
    detail::for_each_mask_parallel(width, groups, [&](unsigned g, std::uint64_t mask) {
        std::size_t size = static_cast<std::size_t>(std::popcount(mask));
        std::size_t m = measure(mask);
        if (is_witness(m, size)) {
            ++parts[g].witnesses;
        }
        offer(parts[g].best, {m, size}, mask);
    });
    MaskSearch total;
    for (const auto& p : parts) {
        total.witnesses += p.witnesses;
        if (p.best.have) {
            offer(total.best, p.best.value, p.best.mask);
        }
    }
    return total;
}

void fill_best(AmenabilityResult& result, const PointSet& set, std::size_t measure) {
    result.best_set = set;
    result.best_set_size = set.size();
    result.best_measure = measure;
    result.best_ratio = to_rational({measure, set.size()});
}

}

AmenabilityResult amenability_cgh_test(const MetricSpace& space, const Rational& k, const CGHOptions& options) {
    if (k < 0) {
        throw PreconditionError("amenability_cgh_test: k must be nonnegative");
    }
    if (options.factor <= 0) {
        throw PreconditionError("amenability_cgh_test: factor must be positive");
    }
    CoreOptions core{options.point_cap};
    AmenabilityResult result;
    auto witness_test = [&](std::size_t measure, std::size_t size) {
        return Rational(static_cast<unsigned long>(measure)) < options.factor * static_cast<unsigned long>(size);
    };

    if (options.window) {
        require_window(*options.window, space);
    }
    if (options.window && options.exhaustive && options.window->size() <= options.exhaustive_cap) {
        const auto& window = *options.window;
        std::vector<PointId> wpts = window.elements();
        auto items = space.neighborhood(window, k, options.point_cap);
        std::vector<std::uint64_t> cover;
        for (const auto& item : items) {
            std::uint64_t bits = 0;
            for (std::size_t a = 0; a < wpts.size(); ++a) {
                if (item.point == wpts[a] || space.distance(item.point, wpts[a]) <= k) {
                    bits |= std::uint64_t{1} << a;
                }
            }
            cover.push_back(bits);
        }
        auto measure = [&](std::uint64_t mask) {
            std::size_t c = 0;
            for (auto bits : cover) {
                c += (bits & mask) ? 1 : 0;
            }
            return c;
        };
        auto search = search_masks(static_cast<int>(wpts.size()), options.jobs, measure, witness_test);
        result.exhaustive = true;
        result.window = "all nonempty subsets of " + describe_set(space, window);
        result.sets_examined = (std::size_t{1} << wpts.size()) - 1;
        result.witnesses_in_window = search.witnesses;
        PointSet best = detail::mask_to_set(wpts, search.best.mask);
        fill_best(result, best, search.best.value.num);
        if (witness_test(search.best.value.num, best.size())) {
            result.verdict = AmenabilityVerdict::witness_found;
            result.witness = best;
        } else {
            result.diagnostics = "no subset of the window satisfies |cN_k(A)| < " + to_string(options.factor) +
                                 "|A|; minimum ratio " + to_string(result.best_ratio);
        }
        return result;
    }

    auto consider = [&](const PointSet& A, std::size_t measure) {
        ++result.sets_examined;
        Ratio v{measure, A.size()};
        if (result.best_set.empty() || ratio_less(v, {result.best_measure, result.best_set_size}) ||
            (ratio_equal(v, {result.best_measure, result.best_set_size}) && A < result.best_set)) {
            fill_best(result, A, measure);
        }
        if (witness_test(measure, A.size()) && !result.witness) {
            result.witness = A;
        }
    };
    try {
        for (auto seed : default_seeds(space, options.window, options)) {
            auto levels = distance_levels(space, PointSet{seed}, options.horizon, core);
            for (std::size_t j = 0; j < levels.count() && !result.witness; ++j) {
                PointSet ball = levels.prefix_union(j);
                if (options.window && !ball.is_subset_of(*options.window)) {
                    break;
                }
                consider(ball, cgh_neighborhood_size(space, ball, k, core));
            }
            if (result.witness) {
                break;
            }
        }
        if (!result.witness && !result.best_set.empty()) {
            auto eval = [&](const PointSet& A) -> Ratio {
                return {cgh_neighborhood_size(space, A, k, core), A.size()};
            };
            auto additions = [&](const PointSet& A) {
                auto cand = discrete_neighborhood(space, A, 1, core).dB;
                return options.window ? cand.set_intersection(*options.window).elements() : cand.elements();
            };
            Ratio value{result.best_measure, result.best_set_size};
            std::size_t evaluations = 0;
            PointSet found = local_search(result.best_set, value, eval, additions, options.greedy_steps,
                                          static_cast<std::size_t>(options.greedy_steps) * 64, evaluations, value);
            result.sets_examined += evaluations;
            consider(found, value.num);
        }
    } catch (const HorizonExceeded& e) {
        result.diagnostics = std::string("budget exhausted: ") + e.what();
    }
    result.window = options.window ? "nested balls and greedy moves inside " + describe_set(space, *options.window)
                                   : "nested balls of depth <= " + std::to_string(options.horizon) +
                                         " and greedy moves";
    if (result.witness) {
        result.verdict = AmenabilityVerdict::witness_found;
    } else if (result.diagnostics.empty()) {
        result.diagnostics = "search found no witness; this is not a disproof";
    }
    return result;
}

QuasiLattice identity_lattice() {
    QuasiLattice q;
    q.description = "all points";
    q.member = [](PointId) { return true; };
    q.alpha = 0;
    q.validated = true;
    q.window = "every point (identity lattice)";
    return q;
}

QuasiLattice point_set_lattice(PointSet gamma, Rational alpha, std::string description) {
    QuasiLattice q;
    q.description = std::move(description);
    auto shared = std::make_shared<PointSet>(std::move(gamma));
    q.member = [shared](PointId p) { return shared->contains(p); };
    q.alpha = std::move(alpha);
    return q;
}

QuasiLatticeCheck quasi_lattice_verify(const MetricSpace& space, QuasiLattice candidate, const PointSet& window,
                                       const std::vector<Rational>& radii, const CoreOptions& options) {
    require_window(window, space);
    if (candidate.alpha < 0) {
        throw PreconditionError("quasi-lattice covering radius must be nonnegative");
    }
    QuasiLatticeCheck check;
    for (auto x : window) {
        bool covered = false;
        for (const auto& item : space.neighborhood(PointSet{x}, candidate.alpha, options.point_cap)) {
            if (candidate.member(item.point)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            check.covering_failure = x;
            check.report = "covering fails at " + space.format_point(x) + ": no lattice point within " +
                           to_string(candidate.alpha);
            break;
        }
    }
    for (const auto& r : radii) {
        if (r <= 0) {
            throw PreconditionError("quasi-lattice radii must be positive");
        }
        std::size_t worst = 0;
        for (auto x : window) {
            std::size_t count = 0;
            for (const auto& item : space.neighborhood(PointSet{x}, r, options.point_cap)) {
                if (item.distance < r && candidate.member(item.point)) {
                    ++count;
                }
            }
            worst = std::max(worst, count);
        }
        candidate.K_table[r] = worst;
    }
    check.valid = !check.covering_failure;
    candidate.validated = check.valid;
    candidate.window = describe_set(space, window);
    if (check.valid) {
        check.report = "covering holds on " + candidate.window;
    }
    check.lattice = std::move(candidate);
    return check;
}

PointSet bw_boundary(const MetricSpace& space, const QuasiLattice& lattice, const PointSet& U, const Rational& r,
                     const CoreOptions& options) {
    if (U.empty()) {
        throw PreconditionError("bw_boundary: U must be nonempty");
    }
    if (r <= 0) {
        throw PreconditionError("bw_boundary: r must be positive");
    }
    std::vector<PointId> out;
    for (const auto& item : space.neighborhood(U, r, options.point_cap)) {
        if (item.distance < r && !U.contains(item.point) && lattice.member(item.point)) {
            out.push_back(item.point);
        }
    }
    for (auto u : U) {
        for (const auto& item : space.neighborhood(PointSet{u}, r, options.point_cap)) {
            if (item.distance < r && !U.contains(item.point) && lattice.member(item.point)) {
                out.push_back(u);
                break;
            }
        }
    }
    return PointSet(std::move(out));
}

AmenabilityResult amenability_bw_test(const MetricSpace& space, const QuasiLattice& lattice, const Rational& r,
                                      const Rational& delta, const BWOptions& options) {
    if (!lattice.validated) {
        throw PreconditionError("amenability_bw_test: the quasi-lattice has not been validated");
    }
    if (r <= 0 || delta <= 0) {
        throw PreconditionError("amenability_bw_test: r and delta must be positive");
    }
    CoreOptions core{options.point_cap};
    AmenabilityResult result;
    auto witness_test = [&](std::size_t measure, std::size_t size) {
        return Rational(static_cast<unsigned long>(measure)) < delta * static_cast<unsigned long>(size);
    };
    if (options.window) {
        require_window(*options.window, space);
        for (auto p : *options.window) {
            if (!lattice.member(p)) {
                throw PreconditionError("BW window point " + space.format_point(p) + " is not in the lattice");
            }
        }
    }

    if (options.window && options.exhaustive && options.window->size() <= options.exhaustive_cap) {
        const auto& window = *options.window;
        std::vector<PointId> wpts = window.elements();
        const std::size_t w = wpts.size();
        std::vector<std::uint64_t> outer;  // lattice points outside the window near the window
        std::vector<std::uint64_t> near(w, 0);
        std::vector<char> near_outside(w, 0);
        for (const auto& item : space.neighborhood(window, r, options.point_cap)) {
            if (item.distance >= r || window.contains(item.point) || !lattice.member(item.point)) {
                continue;
            }
            std::uint64_t bits = 0;
            for (std::size_t a = 0; a < w; ++a) {
                if (space.distance(item.point, wpts[a]) < r) {
                    bits |= std::uint64_t{1} << a;
                    near_outside[a] = 1;
                }
            }
            outer.push_back(bits);
        }
        for (std::size_t a = 0; a < w; ++a) {
            for (std::size_t b = 0; b < w; ++b) {
                if (a != b && space.distance(wpts[a], wpts[b]) < r) {
                    near[a] |= std::uint64_t{1} << b;
                }
            }
        }
        auto measure = [&](std::uint64_t mask) {
            std::size_t c = 0;
            for (auto bits : outer) {
                c += (bits & mask) ? 1 : 0;
            }
            for (std::size_t a = 0; a < w; ++a) {
                bool inside = (mask >> a) & 1;
                if (inside ? (near_outside[a] || (near[a] & ~mask)) : (near[a] & mask) != 0) {
                    ++c;
                }
            }
            return c;
        };
        auto search = search_masks(static_cast<int>(w), options.jobs, measure, witness_test);
        result.exhaustive = true;
        result.window = "all nonempty subsets of " + describe_set(space, window);
        result.sets_examined = (std::size_t{1} << w) - 1;
        result.witnesses_in_window = search.witnesses;
        PointSet best = detail::mask_to_set(wpts, search.best.mask);
        fill_best(result, best, search.best.value.num);
        if (witness_test(search.best.value.num, best.size())) {
            result.verdict = AmenabilityVerdict::witness_found;
            result.witness = best;
        } else {
            result.diagnostics = "no subset of the window has boundary ratio below " + to_string(delta) +
                                 "; minimum ratio " + to_string(result.best_ratio);
        }
        return result;
    }

    auto lattice_part = [&](const PointSet& s) {
        std::vector<PointId> keep;
        for (auto p : s) {
            if (lattice.member(p)) {
                keep.push_back(p);
            }
        }
        return PointSet(std::move(keep));
    };
    auto consider = [&](const PointSet& U, std::size_t measure) {
        ++result.sets_examined;
        Ratio v{measure, U.size()};
        if (result.best_set.empty() || ratio_less(v, {result.best_measure, result.best_set_size}) ||
            (ratio_equal(v, {result.best_measure, result.best_set_size}) && U < result.best_set)) {
            fill_best(result, U, measure);
        }
        if (witness_test(measure, U.size()) && !result.witness) {
            result.witness = U;
        }
    };
    try {
        for (auto seed : default_seeds(space, options.window, options)) {
            if (!lattice.member(seed)) {
                continue;
            }
            auto levels = distance_levels(space, PointSet{seed}, options.horizon, core);
            for (std::size_t j = 0; j < levels.count() && !result.witness; ++j) {
                PointSet U = lattice_part(levels.prefix_union(j));
                if (options.window && !U.is_subset_of(*options.window)) {
                    break;
                }
                consider(U, bw_boundary(space, lattice, U, r, core).size());
            }
            if (result.witness) {
                break;
            }
        }
        if (!result.witness && !result.best_set.empty()) {
            auto eval = [&](const PointSet& U) -> Ratio {
                return {bw_boundary(space, lattice, U, r, core).size(), U.size()};
            };
            auto additions = [&](const PointSet& U) {
                std::vector<PointId> out;
                for (const auto& item : space.neighborhood(U, r, core.point_cap)) {
                    if (item.distance < r && !U.contains(item.point) && lattice.member(item.point) &&
                        (!options.window || options.window->contains(item.point))) {
                        out.push_back(item.point);
                    }
                }
                std::sort(out.begin(), out.end());
                return out;
            };
            Ratio value{result.best_measure, result.best_set_size};
            std::size_t evaluations = 0;
            PointSet found = local_search(result.best_set, value, eval, additions, options.greedy_steps,
                                          static_cast<std::size_t>(options.greedy_steps) * 64, evaluations, value);
            result.sets_examined += evaluations;
            consider(found, value.num);
        }
    } catch (const HorizonExceeded& e) {
        result.diagnostics = std::string("budget exhausted: ") + e.what();
    }
    result.window = options.window ? "nested balls and greedy moves inside " + describe_set(space, *options.window)
                                   : "nested balls of depth <= " + std::to_string(options.horizon) +
                                         " and greedy moves";
    if (result.witness) {
        result.verdict = AmenabilityVerdict::witness_found;
    } else if (result.diagnostics.empty()) {
        result.diagnostics = "search found no witness; this is not a disproof";
    }
    return result;
}

}
