#include "commands.hpp"

#include "snlab/embeddability.hpp"
#include "snlab/errors.hpp"
#include "snlab/isoperimetry.hpp"
#include "snlab/metric_graph.hpp"
#include "snlab/zoo.hpp"
#include "snlab/zoom.hpp"

#include <future>
#include <iomanip>
#include <sstream>

namespace snlab::cli {

namespace {

std::string num(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::string num(const Rational& v) {
    return num(v.get_d());
}

template <typename T>
std::string str(const T& v) {
    return std::to_string(v);
}

SpaceHandle build_space(const Settings& s) {
    SpaceSpec spec;
    const std::string& kind = s.get("space");
    const std::string& file = s.get("file");
    if (kind.empty() && file.empty()) {
        throw PreconditionError("no space given: use --space <kind> or --file <path>");
    }
    spec.kind = kind.empty() ? SpaceKind::from_file : parse_space_kind(kind);
    spec.path = file;
    spec.dimension = s.get_int("dim");
    spec.rank = s.get_int("rank");
    spec.degree = s.get_int("degree");
    spec.branching = s.get_int("branching");
    spec.weight_base = s.get_rational("weight-base");
    for (const auto& w : s.get_list("weights")) {
        spec.weights.push_back(parse_rational(w));
    }
    spec.box_family = s.get("box-family");
    spec.box_components = s.get_int("box-components");
    spec.box_base_size = s.get_size("box-base-size");
    spec.seed = static_cast<std::uint64_t>(s.get_size("seed"));
    if (spec.kind == SpaceKind::from_file && spec.path.empty()) {
        throw PreconditionError("space kind from-file needs --file");
    }
    return make_space(spec);
}

PointId parse_checked(const MetricSpace& space, const std::string& text) {
    PointId p = space.parse_point(text);
    if (!space.is_point(p)) {
        throw PreconditionError("'" + text + "' is not a point of " + space.id());
    }
    return p;
}

PointId point_arg(const MetricSpace& space, const Settings& s, const std::string& name) {
    const auto& text = s.get(name);
    return text.empty() ? space.base_point() : parse_checked(space, text);
}

std::vector<PointId> points_arg(const MetricSpace& space, const Settings& s, const std::string& name) {
    std::vector<PointId> out;
    for (const auto& text : s.get_list(name)) {
        out.push_back(parse_checked(space, text));
    }
    return out;
}

void fill_search(SearchOptions& opts, const Settings& s, const RunContext& ctx) {
    opts.point_cap = ctx.core.point_cap;
    opts.jobs = ctx.jobs;
    opts.horizon = s.get_int("horizon");
    opts.greedy_steps = s.get_int("greedy-steps");
}

Report start(const SpaceHandle& space) {
    Report r;
    r.result["space"] = {{"id", space->id()}, {"description", space->description()}};
    return r;
}

// window for set searches: dN_radius(seed)
PointSet search_window(const MetricSpace& space, PointId seed, int radius, const RunContext& ctx) {
    return discrete_neighborhood(space, PointSet{seed}, radius, ctx.core).dN;
}

Report run_zoo_list(const Settings&, const RunContext&) {
    Report r;
    r.scope.window = "none";
    r.scope.horizon = "none";
    r.scope.direction = "listing";
    r.table.columns = {"kind", "parameters", "summary"};
    Json entries = Json::array();
    for (const auto& e : zoo_listing()) {
        entries.push_back({{"kind", e.kind}, {"parameters", e.parameters}, {"summary", e.summary}});
        r.table.rows.push_back({e.kind, e.parameters, e.summary});
    }
    r.result["spaces"] = entries;
    return r;
}

Report run_validate_graph(const Settings& s, const RunContext&) {
    const auto& file = s.get("file");
    if (file.empty()) {
        throw PreconditionError("validate-graph needs --file");
    }
    WeightedGraph graph = load_graph_file(file);
    ValidationOptions opts;
    if (!s.get("hop-budget").empty()) {
        opts.hop_budget = s.get_size("hop-budget");
    }
    opts.max_witnesses = s.get_size("max-witnesses");
    auto report = validate_metric_graph(graph, opts);

    Report r;
    r.scope.window = "all ordered vertex pairs";
    r.scope.horizon = "paths up to " + str(report.hop_budget) + " hops";
    r.scope.direction = "exact";
    r.scope.certified = true;
    r.result["vertices"] = graph.vertex_count();
    r.result["edges"] = graph.edge_count();
    r.result["connected"] = graph.connected();
    r.result["validation"] = compatibility_json(graph, report);
    r.table.columns = {"condition", "pass", "witnesses"};
    r.table.rows.push_back({"1", report.condition1.pass ? "true" : "false", str(report.condition1.witnesses.size())});
    r.table.rows.push_back({"2", report.condition2.pass ? "true" : "false", str(report.condition2.witnesses.size())});
    return r;
}

Report run_profile(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    const int k = s.get_int("k");
    const PointId seed = point_arg(*space, s, "seed-point");
    const auto family = s.get("family");
    Report r = start(space);
    r.result["seed"] = space->format_point(seed);
    r.result["family"] = family;
    r.result["k"] = k;

    if (family == "nested") {
        const int n_max = s.get_int("n-max");
        auto records = nested_ball_records(*space, seed, k, n_max, std::nullopt, ctx.core);
        r.scope.window = "nested balls dN_j(" + space->format_point(seed) + "), j <= " + str(n_max);
        r.scope.horizon = str(n_max);
        r.scope.direction = to_string(BoundDirection::upper_bound_of_inf);
        r.table.columns = {"j", "set_size", "boundary_size", "quotient"};
        r.plot.columns = {"set_size", "quotient"};
        Json rows = Json::array();
        Rational best = records.front().quotient;
        for (std::size_t j = 0; j < records.size(); ++j) {
            const auto& rec = records[j];
            best = rec.quotient < best ? rec.quotient : best;
            Json row{{"j", j},
                     {"set_size", rec.set_size},
                     {"boundary_size", rec.boundary_size},
                     {"quotient", to_string(rec.quotient)}};
            rows.push_back(row);
            r.table.rows.push_back({str(j), str(rec.set_size), str(rec.boundary_size), to_string(rec.quotient)});
            r.plot.rows.push_back({str(rec.set_size), num(rec.quotient)});
        }
        r.result["records"] = rows;
        r.result["min_quotient"] = to_string(best);
        return r;
    }

    IsoStrategy strategy = parse_iso_strategy(family);
    SearchOptions opts;
    fill_search(opts, s, ctx);
    opts.seeds = {seed};
    const int radius = s.get_int("window-radius");
    auto window = search_window(*space, seed, radius, ctx);
    auto est = iso_constant_estimate(*space, window, k, strategy, opts);
    r.scope.window = est.window;
    r.scope.horizon = "window dN_" + str(radius) + "(" + space->format_point(seed) + ")";
    r.scope.direction = to_string(est.direction);
    r.scope.certified = est.certified;
    r.result["estimate"] = bound_json(*space, est);
    r.table.columns = {"strategy", "value", "direction", "certified", "set_size", "boundary_size", "sets_examined"};
    r.table.rows.push_back({family, to_string(est.value), to_string(est.direction), est.certified ? "true" : "false",
                            est.best ? str(est.best->set_size) : "", est.best ? str(est.best->boundary_size) : "",
                            str(est.sets_examined)});
    r.plot.columns = {"window_size", "value"};
    r.plot.rows.push_back({str(window.size()), num(est.value)});
    return r;
}

Report run_sn_search(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    SNSearchOptions opts;
    fill_search(opts, s, ctx);
    opts.epsilon = s.get_rational("epsilon");
    opts.greedy = s.get_bool("greedy");
    opts.seeds = points_arg(*space, s, "seed-points");
    const int k = s.get_int("k");
    if (s.get_bool("box-witness")) {
        auto box = dynamic_cast<const BoxSpace*>(space.get());
        if (!box) {
            throw PreconditionError("--box-witness needs a box-space");
        }
        for (auto& w : box->witness_family(k)) {
            opts.extra_family.push_back(std::move(w.set));
        }
        opts.extra_family_name = "box-witness";
    }
    auto result = sn_witness_search(*space, k, opts);

    Report r = start(space);
    r.scope.window = "nested balls to depth " + str(opts.horizon) + (opts.greedy ? " plus greedy moves" : "") +
                     (opts.extra_family.empty() ? "" : " plus the box witness family");
    r.scope.horizon = str(opts.horizon);
    r.scope.direction = to_string(BoundDirection::upper_bound_of_inf);
    r.scope.certified = result.verdict == SNVerdict::witnessed_below;
    r.result["k"] = k;
    r.result["epsilon"] = to_string(result.epsilon);
    r.result["verdict"] = to_string(result.verdict);
    r.result["witness"] = result.witness ? quotient_json(*space, *result.witness) : Json(nullptr);
    r.result["diagnostics"] = result.diagnostics;
    Json records = Json::array();
    r.table.columns = {"source", "set_size", "boundary_size", "quotient"};
    r.plot.columns = {"set_size", "quotient"};
    for (const auto& rec : result.records) {
        records.push_back({{"source", rec.source},
                           {"set_size", rec.set_size},
                           {"boundary_size", rec.boundary_size},
                           {"quotient", to_string(rec.quotient)}});
        r.table.rows.push_back({rec.source, str(rec.set_size), str(rec.boundary_size), to_string(rec.quotient)});
        r.plot.rows.push_back({str(rec.set_size), num(rec.quotient)});
    }
    r.result["records"] = records;
    return r;
}

Report run_amenability(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    const auto test = s.get("test");
    const PointId seed = point_arg(*space, s, "seed-point");
    const int radius = s.get_int("window-radius");
    auto window = search_window(*space, seed, radius, ctx);
    AmenabilityResult result;
    Report r = start(space);
    r.result["test"] = test;
    if (test == "cgh") {
        CGHOptions opts;
        fill_search(opts, s, ctx);
        opts.factor = s.get_rational("factor");
        opts.window = window;
        opts.exhaustive = s.get_bool("exhaustive");
        const Rational alpha = s.get_rational("k");
        result = amenability_cgh_test(*space, alpha, opts);
        r.result["k"] = to_string(alpha);
        r.result["factor"] = to_string(opts.factor);
        r.result["inequality"] = "|cN_k(A)| < factor * |A|";
    } else if (test == "bw") {
        if (s.get("lattice") != "identity") {
            throw PreconditionError("only --lattice identity is available from the command line");
        }
        BWOptions opts;
        fill_search(opts, s, ctx);
        opts.window = window;
        opts.exhaustive = s.get_bool("exhaustive");
        const Rational rr = s.get_rational("r");
        const Rational delta = s.get_rational("delta");
        result = amenability_bw_test(*space, identity_lattice(), rr, delta, opts);
        r.result["r"] = to_string(rr);
        r.result["delta"] = to_string(delta);
        r.result["lattice"] = "identity";
        r.result["inequality"] = "|boundary_r(U)| < delta * |U|";
    } else {
        throw PreconditionError("--test must be cgh or bw, got '" + test + "'");
    }
    r.scope.window = result.window;
    r.scope.horizon = "window dN_" + str(radius) + "(" + space->format_point(seed) + ")";
    r.scope.direction = "witness search";
    r.scope.certified = result.verdict == AmenabilityVerdict::witness_found || result.exhaustive;
    r.result["outcome"] = amenability_json(*space, result);
    r.table.columns = {"test",          "verdict",        "best_set_size",       "best_measure",
                       "best_ratio",    "sets_examined",  "witnesses_in_window", "exhaustive"};
    r.table.rows.push_back({test, to_string(result.verdict), str(result.best_set_size), str(result.best_measure),
                            to_string(result.best_ratio), str(result.sets_examined), str(result.witnesses_in_window),
                            result.exhaustive ? "true" : "false"});
    r.plot.columns = {"best_set_size", "best_ratio"};
    r.plot.rows.push_back({str(result.best_set_size), num(result.best_ratio)});
    return r;
}

Json witness_json(const TripodWitness& w, const std::function<std::string(std::uint64_t)>& name) {
    return Json{{"center", name(w.center)},
                {"arms", {name(w.arms[0]), name(w.arms[1]), name(w.arms[2])}},
                {"kind", w.kind == TripodKind::tripod ? "tripod" : "semi-tripod"},
                {"connections_among_arms", w.connections_among_arms},
                {"sphere", w.sphere}};
}

Report run_tripod(const Settings& s, const RunContext& ctx) {
    const int radius = s.get_int("radius");
    Report r;
    TripodSearch search;
    bool predicate = false;
    std::function<std::string(std::uint64_t)> name;
    std::string root_name;
    if (!s.get("file").empty() && s.get("space").empty()) {
        auto graph = std::make_shared<WeightedGraph>(load_graph_file(s.get("file")));
        std::size_t root = s.get("root").empty() ? 0 : graph->index_of(s.get("root"));
        search = find_tripod(*graph, root, radius);
        predicate = search.witness && satisfies_tripod_definition(*graph, *search.witness);
        name = [graph](std::uint64_t v) { return graph->name(static_cast<std::size_t>(v)); };
        root_name = graph->name(root);
        r.result["graph"] = {{"vertices", graph->vertex_count()}, {"edges", graph->edge_count()}};
    } else {
        auto space = build_space(s);
        const GraphStructure* graph = space->graph_structure();
        if (!graph) {
            throw PreconditionError(space->id() + " has no unit-step graph structure; pass a graph with --file");
        }
        PointId root = point_arg(*space, s, "root");
        search = find_tripod(*graph, root, radius, ctx.core.point_cap);
        predicate = search.witness && satisfies_tripod_definition(*graph, *search.witness);
        name = [space](std::uint64_t v) { return space->format_point(PointId{v}); };
        root_name = space->format_point(root);
        r.result["space"] = {{"id", space->id()}, {"description", space->description()}};
    }
    r.scope.window = "spheres around " + root_name + " up to radius " + str(search.radius_searched);
    r.scope.horizon = str(radius);
    r.scope.direction = "existence";
    r.scope.certified = predicate;
    r.result["root"] = root_name;
    r.result["found"] = search.witness.has_value();
    r.result["witness"] = search.witness ? witness_json(*search.witness, name) : Json(nullptr);
    r.result["definition_check"] = predicate;
    r.result["radius_searched"] = search.radius_searched;
    r.result["diagnostics"] = search.diagnostics;
    r.table.columns = {"found", "kind", "center", "arm1", "arm2", "arm3", "sphere", "definition_check"};
    if (search.witness) {
        const auto& w = *search.witness;
        r.table.rows.push_back({"true", w.kind == TripodKind::tripod ? "tripod" : "semi-tripod", name(w.center),
                                name(w.arms[0]), name(w.arms[1]), name(w.arms[2]), str(w.sphere),
                                predicate ? "true" : "false"});
    } else {
        r.table.rows.push_back({"false", "", "", "", "", "", "", "false"});
    }
    return r;
}

constexpr std::size_t embed_point_limit = 400;

Report run_embed_check(const Settings& s, const RunContext&) {
    auto space = build_space(s);
    PointSet points;
    if (s.get("points").empty()) {
        if (!space->finite_size() || *space->finite_size() > embed_point_limit) {
            throw PreconditionError("embed-check on " + space->id() + " needs --points");
        }
        points = space->all_points();
    } else {
        points = PointSet(points_arg(*space, s, "points"));
    }
    auto result = schoenberg_test(*space, points, s.get_double("tolerance"));
    Report r = start(space);
    r.scope.window = "the " + str(points.size()) + " given points";
    r.scope.horizon = "none";
    r.scope.direction = "exact";
    r.scope.certified = result.exact_psd.has_value() && result.verdict != EmbedVerdict::marginal;
    r.result["check"] = gram_json(*space, result);
    r.table.columns = {"verdict", "min_eigenvalue", "exact_psd", "points"};
    r.table.rows.push_back({to_string(result.verdict), num(result.min_eigenvalue),
                            result.exact_psd ? (*result.exact_psd ? "true" : "false") : "", str(points.size())});
    r.plot.columns = {"index", "eigenvalue_bound"};
    r.plot.rows.push_back({"0", num(result.min_eigenvalue)});
    return r;
}

Report run_doubling(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    PointId x = point_arg(*space, s, "point");
    const Rational t = s.get_rational("t");
    auto c = covering_estimate(*space, x, t, ctx.core);
    Report r = start(space);
    r.scope.window = "B(" + space->format_point(x) + ", " + to_string(2 * t) + ")";
    r.scope.horizon = "t = " + to_string(t);
    r.scope.direction = "greedy_cover_size: upper bound; packing_size: lower bound";
    r.result["center"] = space->format_point(x);
    r.result["t"] = to_string(t);
    r.result["ball_size"] = c.ball_size;
    r.result["greedy_cover_size"] = c.greedy_cover_size;
    r.result["packing_size"] = c.packing_size;
    r.result["ratio_to_ball"] = to_string(c.ratio_to_ball);
    r.result["cover_centers"] = point_set_json(*space, PointSet(c.cover_centers));
    r.result["packing"] = point_set_json(*space, PointSet(c.packing));
    r.table.columns = {"center", "t", "ball_size", "greedy_cover_size", "packing_size", "ratio_to_ball"};
    r.table.rows.push_back({space->format_point(x), to_string(t), str(c.ball_size), str(c.greedy_cover_size),
                            str(c.packing_size), to_string(c.ratio_to_ball)});
    r.plot.columns = {"t", "greedy_cover_size"};
    r.plot.rows.push_back({num(t), str(c.greedy_cover_size)});
    return r;
}

Report run_growth_profile(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    PointId x = point_arg(*space, s, "point");
    const int horizon = s.get_int("horizon");
    auto p = ball_growth_profile(*space, x, horizon, ctx.core);
    Report r = start(space);
    r.scope.window = "first " + str(p.radii.size()) + " radii around " + space->format_point(x);
    r.scope.horizon = str(horizon);
    r.scope.direction = "exact counts; poly exponent on a grid";
    r.scope.certified = true;
    r.result["base"] = space->format_point(x);
    r.result["exhausted"] = p.exhausted;
    r.result["poly_exponent"] = p.poly_exponent ? Json(*p.poly_exponent) : Json(nullptr);
    Json bands = Json::array();
    for (const auto& b : p.dyadic) {
        bands.push_back({{"r", b.r}, {"count", b.count}, {"complete", b.complete}});
    }
    r.result["dyadic_bands"] = bands;
    r.table.columns = {"n", "radius", "count"};
    r.plot.columns = {"radius", "count"};
    Json radii = Json::array();
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        radii.push_back(to_string(p.radii[i]));
        r.table.rows.push_back({str(i + 1), to_string(p.radii[i]), str(p.counts[i])});
        r.plot.rows.push_back({num(p.radii[i]), str(p.counts[i])});
    }
    r.result["radii"] = radii;
    r.result["counts"] = p.counts;
    return r;
}

Report run_ubg(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    PointSet sample;
    if (s.get("points").empty()) {
        sample = search_window(*space, space->base_point(), s.get_int("sample-radius"), ctx);
    } else {
        sample = PointSet(points_arg(*space, s, "points"));
    }
    std::vector<Rational> radii;
    for (const auto& t : s.get_list("radii")) {
        radii.push_back(parse_rational(t));
    }
    auto report = ubg_report(*space, sample, radii, ctx.core);
    Report r = start(space);
    r.scope.window = str(sample.size()) + " sample points";
    r.scope.horizon = "radii " + s.get("radii");
    r.scope.direction = "lower bound of the sup over all pairs";
    r.result["max_ratio"] = to_string(report.max_ratio);
    r.result["constant_estimate"] = to_string(report.constant_estimate);
    r.table.columns = {"r", "x", "y", "size_x", "size_y"};
    r.plot.columns = {"r", "ratio"};
    Json samples = Json::array();
    for (const auto& smp : report.samples) {
        samples.push_back({{"r", to_string(smp.r)},
                           {"x", space->format_point(smp.x)},
                           {"y", space->format_point(smp.y)},
                           {"size_x", smp.size_x},
                           {"size_y", smp.size_y}});
        r.table.rows.push_back({to_string(smp.r), space->format_point(smp.x), space->format_point(smp.y),
                                str(smp.size_x), str(smp.size_y)});
        r.plot.rows.push_back({num(smp.r), num(static_cast<double>(smp.size_x) / static_cast<double>(smp.size_y))});
    }
    r.result["samples"] = samples;
    return r;
}

Report run_sn_vs_doubling(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    PointId x = point_arg(*space, s, "point");
    auto centers = points_arg(*space, s, "centers");
    const int lo = s.get_int("r-lo");
    const int hi = s.get_int("r-hi");
    auto report = sn_vs_doubling_report(*space, x, lo, hi, s.get_int("k"), centers, ctx.core);
    Report r = start(space);
    r.scope.window = "dyadic bands [2^r, 2^(r+1)] around " + space->format_point(x);
    r.scope.horizon = "r in [" + str(lo) + ", " + str(hi) + "]";
    r.scope.direction = "K_r: lower bound of the global max (sampled centers)";
    r.result["base"] = space->format_point(x);
    r.result["k"] = report.k;
    r.result["centers"] = point_set_json(*space, PointSet(report.centers));
    r.table.columns = {"r", "band_radii", "expansion", "K_r", "outer_ball", "cover", "packing"};
    r.plot.columns = {"r", "expansion"};
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        const std::string e = row.expansion ? to_string(*row.expansion) : "";
        rows.push_back({{"r", row.r},
                        {"band_radii", row.band_radii},
                        {"expansion", row.expansion ? Json(e) : Json(nullptr)},
                        {"K_r", row.K_r},
                        {"outer_ball", row.outer_ball},
                        {"cover", row.cover},
                        {"packing", row.packing}});
        r.table.rows.push_back({str(row.r), str(row.band_radii), e, str(row.K_r), str(row.outer_ball),
                                str(row.cover), str(row.packing)});
        if (row.expansion) {
            r.plot.rows.push_back({str(row.r), num(*row.expansion)});
        }
    }
    r.result["rows"] = rows;
    return r;
}

Report run_zoom(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    std::vector<int> ks;
    for (const auto& t : s.get_list("k")) {
        try {
            ks.push_back(std::stoi(t));
        } catch (const std::exception&) {
            throw ParseError("--k expects integers, got '" + t + "'");
        }
    }
    if (ks.empty()) {
        throw PreconditionError("--k needs at least one value");
    }
    auto points = points_arg(*space, s, "points");
    if (points.empty()) {
        points.push_back(space->base_point());
    }
    const int horizon = s.get_int("horizon");

    std::vector<std::pair<PointId, int>> jobs;
    for (auto x : points) {
        for (int k : ks) {
            jobs.emplace_back(x, k);
        }
    }
    std::vector<ZoomProfile> profiles(jobs.size());
    const std::size_t batch = std::max<unsigned>(ctx.jobs, 1);
    for (std::size_t start_at = 0; start_at < jobs.size(); start_at += batch) {
        std::vector<std::future<ZoomProfile>> running;
        for (std::size_t i = start_at; i < std::min(jobs.size(), start_at + batch); ++i) {
            running.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, [&, i] {
                return zoom_profile(*space, jobs[i].first, jobs[i].second, horizon, ctx.core);
            }));
        }
        for (std::size_t i = 0; i < running.size(); ++i) {
            profiles[start_at + i] = running[i].get();
        }
    }
    auto summary = zoom_aggregate(profiles);

    Report r = start(space);
    r.scope.window = "n <= " + str(horizon) + " for each profile";
    r.scope.horizon = str(summary.horizon);
    r.scope.direction = "running_inf: upper bound of the inf; tail_sup: tail-window surrogate of the limsup";
    Json pj = Json::array();
    for (const auto& p : profiles) {
        pj.push_back(zoom_json(*space, p));
    }
    r.result["profiles"] = pj;
    Json per_point = Json::array();
    for (const auto& ps : summary.points) {
        per_point.push_back({{"x", space->format_point(ps.x)},
                             {"lower", to_string(ps.lower)},
                             {"upper", to_string(ps.upper)}});
    }
    r.result["aggregate"] = {{"ks", summary.ks},
                             {"horizon", summary.horizon},
                             {"lower_plus", to_string(summary.lower_plus)},
                             {"upper_plus", to_string(summary.upper_plus)},
                             {"points", per_point}};

    r.table.columns = {"x", "k", "n", "ball_size", "ratio", "running_inf", "tail_sup"};
    for (const auto& p : profiles) {
        Rational running;
        for (std::size_t n = 0; n < p.sizes.size(); ++n) {
            std::string ratio;
            std::string inf;
            if (n > 0) {
                const Rational& q = p.ratios[n - 1];
                running = n == 1 || q < running ? q : running;
                ratio = to_string(q);
                inf = to_string(running);
            }
            r.table.rows.push_back({space->format_point(p.base), str(p.k), str(n), str(p.sizes[n]), ratio, inf,
                                    to_string(p.tail_sup)});
        }
    }
    const auto& first = profiles.front();
    r.plot.columns = {"n", "ratio"};
    for (std::size_t n = 1; n <= first.ratios.size(); ++n) {
        r.plot.rows.push_back({str(n), num(first.ratios[n - 1])});
    }
    return r;
}

Report run_growth_classify(const Settings& s, const RunContext& ctx) {
    auto space = build_space(s);
    const int horizon = s.get_int("horizon");
    auto g = growth_classify(*space, horizon, ctx.core);
    Report r = start(space);
    r.scope.window = "balls B(n) around " + space->format_point(space->base_point()) + ", n <= " + str(horizon);
    r.scope.horizon = str(horizon);
    r.scope.direction = "horizon-scoped classification";
    r.result["verdict"] = to_string(g.verdict);
    r.result["degree_estimate"] = g.degree_estimate ? Json(*g.degree_estimate) : Json(nullptr);
    r.result["rate_estimate"] = g.rate_estimate ? Json(*g.rate_estimate) : Json(nullptr);
    r.result["tail_start"] = g.tail_start;
    r.result["slope_drift"] = g.slope_drift;
    r.result["min_tail_root"] = g.min_tail_root;
    r.result["ball_sizes"] = g.ball_sizes;
    r.result["zoom_running_inf"] = to_string(g.zoom_running_inf);
    r.result["zoom_tail_sup"] = to_string(g.zoom_tail_sup);
    r.result["zoom_consistent"] = g.zoom_consistent;
    r.result["evidence"] = g.evidence;
    r.table.columns = {"n", "ball_size", "nth_root", "local_slope"};
    r.plot.columns = {"n", "ball_size"};
    for (std::size_t n = 0; n < g.ball_sizes.size(); ++n) {
        r.table.rows.push_back({str(n), str(g.ball_sizes[n]), n >= 1 ? num(g.nth_roots[n - 1]) : "",
                                n >= 2 ? num(g.local_slopes[n - 2]) : ""});
        r.plot.rows.push_back({str(n), str(g.ball_sizes[n])});
    }
    return r;
}

const std::vector<ParamDef> search_params{
    {"horizon", "64", "deepest nested ball"},
    {"greedy-steps", "200", "accepted single-point greedy moves"},
};

std::vector<ParamDef> with(std::vector<ParamDef> a, const std::vector<ParamDef>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}

const std::vector<ParamDef>& space_params() {
    static const std::vector<ParamDef> params{
        {"space", "", "space kind (see `zoo list`)"},
        {"file", "", "graph or finite-metric file"},
        {"dim", "1", "integer-lattice dimension"},
        {"rank", "2", "free-group rank"},
        {"degree", "3", "tree degree, box component degree"},
        {"branching", "2", "weighted-tree branching"},
        {"weight-base", "10", "weighted-tree weight base"},
        {"weights", "", "tripod / semi-tripod weights, comma separated"},
        {"box-family", "random-regular", "box components: random-regular or cycles"},
        {"box-components", "8", "number of box components"},
        {"box-base-size", "16", "size of the first box component"},
        {"seed", "1", "random seed"},
    };
    return params;
}

const std::vector<CommandDef>& command_table() {
    static const std::vector<CommandDef> table{
        {"zoo list", "list the space zoo", false, {}, run_zoo_list},
        {"validate-graph",
         "check the metric-graph compatibility conditions",
         false,
         {{"file", "", "graph file (JSON or edge list)"},
          {"hop-budget", "", "longest path in hops for condition 2"},
          {"max-witnesses", "8", "witnesses kept per condition"}},
         run_validate_graph},
        {"profile",
         "isoperimetric quotient sequences",
         true,
         with({{"k", "1", "neighborhood step"},
               {"family", "nested", "nested, exhaustive or greedy-local"},
               {"n-max", "20", "deepest nested ball"},
               {"seed-point", "", "seed point (default: base point)"},
               {"window-radius", "3", "search window dN_r(seed)"}},
              search_params),
         run_profile},
        {"sn-search",
         "search for sets with small k-quotient",
         true,
         with({{"k", "1", "neighborhood step"},
               {"epsilon", "1/100", "target quotient"},
               {"greedy", "true", "also run greedy-local moves"},
               {"seed-points", "", "seed points, comma separated"},
               {"box-witness", "false", "add the box-space witness family"}},
              search_params),
         run_sn_search},
        {"amenability",
         "witness search for the neighborhood (cgh) or boundary (bw) amenability test",
         true,
         with({{"test", "cgh", "cgh or bw"},
               {"k", "1", "cgh neighborhood radius"},
               {"factor", "2", "cgh growth factor"},
               {"r", "1", "bw boundary radius"},
               {"delta", "1/10", "bw ratio threshold"},
               {"lattice", "identity", "bw quasi-lattice"},
               {"seed-point", "", "window center"},
               {"window-radius", "3", "window dN_r(seed)"},
               {"exhaustive", "true", "search every window subset when small enough"}},
              search_params),
         run_amenability},
        {"tripod",
         "find a tripod or semi-tripod by sphere growth",
         true,
         {{"root", "", "root vertex or point"}, {"radius", "8", "largest sphere examined"}},
         run_tripod},
        {"embed-check",
         "Hilbert-space embeddability test of a finite subset",
         true,
         {{"points", "", "points, comma separated (default: all points of a finite space)"},
          {"tolerance", "1e-8", "relative eigenvalue tolerance"}},
         run_embed_check},
        {"doubling",
         "greedy cover and packing of B(x, 2t) by t-balls",
         true,
         {{"point", "", "center (default: base point)"}, {"t", "1", "ball radius"}},
         run_doubling},
        {"growth-profile",
         "ball growth radii, counts and dyadic bands",
         true,
         {{"point", "", "center (default: base point)"}, {"horizon", "16", "number of radii"}},
         run_growth_profile},
        {"ubg",
         "uniform ball growth ratios over sample points",
         true,
         {{"points", "", "sample points, comma separated"},
          {"sample-radius", "2", "default sample dN_r(base)"},
          {"radii", "1,2,4", "radii, comma separated"}},
         run_ubg},
        {"sn-vs-doubling",
         "neighborhood expansion against doubling data per dyadic band",
         true,
         {{"point", "", "center (default: base point)"},
          {"r-lo", "0", "first band"},
          {"r-hi", "4", "last band"},
          {"k", "1", "neighborhood step"},
          {"centers", "", "sampled centers for K_r"}},
         run_sn_vs_doubling},
        {"zoom",
         "zoom ratio profiles and their aggregate",
         true,
         {{"k", "1", "steps, comma separated"},
          {"points", "", "base points, comma separated (default: base point)"},
          {"horizon", "10", "number of ratios"}},
         run_zoom},
        {"growth-classify",
         "polynomial or exponential growth verdict",
         true,
         {{"horizon", "12", "largest ball radius"}},
         run_growth_classify},
    };
    return table;
}

}
