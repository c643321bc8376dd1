#include "snlab/report.hpp"

#include <sstream>

namespace snlab {

namespace {

void write_table(std::ostringstream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_escape(row[i]);
        }
        out << '\n';
    }
}

Json path_json(const WeightedGraph& graph, const GraphPath& path) {
    Json names = Json::array();
    for (auto v : path.vertices) {
        names.push_back(graph.name(v));
    }
    return Json{{"vertices", names}, {"hops", path.hops()}, {"weight", to_string(path.weight)}};
}

Json condition_json(const WeightedGraph& graph, const ConditionResult& condition) {
    Json witnesses = Json::array();
    for (const auto& w : condition.witnesses) {
        witnesses.push_back({{"source", graph.name(w.source)},
                             {"target", graph.name(w.target)},
                             {"first", path_json(graph, w.first)},
                             {"second", path_json(graph, w.second)}});
    }
    return Json{{"pass", condition.pass}, {"witnesses", witnesses}};
}

}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

Json scope_json(const Scope& scope) {
    return Json{{"window", scope.window},
                {"horizon", scope.horizon},
                {"direction", scope.direction},
                {"certified", scope.certified}};
}

std::string Report::to_json() const {
    Json config_json = Json::object();
    for (const auto& [key, value] : config) {
        config_json[key] = value;
    }
    Json doc{{"command", command}, {"config", config_json}, {"scope", scope_json(scope)}, {"result", result}};
    return doc.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "# command=" << command << '\n';
    for (const auto& [key, value] : config) {
        out << "# config." << key << '=' << value << '\n';
    }
    out << "# scope.window=" << scope.window << '\n';
    out << "# scope.horizon=" << scope.horizon << '\n';
    out << "# scope.direction=" << scope.direction << '\n';
    out << "# scope.certified=" << (scope.certified ? "true" : "false") << '\n';
    write_table(out, table);
    return out.str();
}

std::string Report::plot_csv() const {
    std::ostringstream out;
    write_table(out, plot);
    return out.str();
}

Json point_set_json(const MetricSpace& space, const PointSet& points) {
    Json out = Json::array();
    for (auto p : points) {
        out.push_back(space.format_point(p));
    }
    return out;
}

Json quotient_json(const MetricSpace& space, const IsoQuotientRecord& record) {
    Json out{{"k", record.k},
             {"set_size", record.set_size},
             {"boundary_size", record.boundary_size},
             {"quotient", to_string(record.quotient)},
             {"source", record.source}};
    if (record.witness.size() <= 64) {
        out["set"] = point_set_json(space, record.witness);
    }
    return out;
}

Json bound_json(const MetricSpace& space, const BoundEstimate& estimate) {
    Json out{{"value", to_string(estimate.value)},
             {"direction", to_string(estimate.direction)},
             {"certified", estimate.certified},
             {"window", estimate.window},
             {"k", estimate.k},
             {"sets_examined", estimate.sets_examined}};
    out["best"] = estimate.best ? quotient_json(space, *estimate.best) : Json(nullptr);
    return out;
}

Json amenability_json(const MetricSpace& space, const AmenabilityResult& result) {
    Json out{{"verdict", to_string(result.verdict)},
             {"witness", result.witness ? point_set_json(space, *result.witness) : Json(nullptr)},
             {"best_set_size", result.best_set_size},
             {"best_measure", result.best_measure},
             {"best_ratio", to_string(result.best_ratio)},
             {"exhaustive", result.exhaustive},
             {"window", result.window},
             {"sets_examined", result.sets_examined},
             {"witnesses_in_window", result.witnesses_in_window},
             {"diagnostics", result.diagnostics}};
    if (result.best_set.size() <= 64) {
        out["best_set"] = point_set_json(space, result.best_set);
    }
    return out;
}

Json compatibility_json(const WeightedGraph& graph, const CompatibilityReport& report) {
    return Json{{"valid", report.valid()},
                {"hop_budget", report.hop_budget},
                {"condition1", condition_json(graph, report.condition1)},
                {"condition2", condition_json(graph, report.condition2)}};
}

Json gram_json(const MetricSpace& space, const GramCheckResult& result) {
    Json out{{"verdict", to_string(result.verdict)},
             {"points", Json::array()},
             {"gram", result.gram},
             {"min_eigenvalue", result.min_eigenvalue},
             {"max_norm", result.max_norm},
             {"tolerance", result.tolerance}};
    for (auto p : result.points) {
        out["points"].push_back(space.format_point(p));
    }
    out["exact_psd"] = result.exact_psd ? Json(*result.exact_psd) : Json(nullptr);
    Json minors = Json::array();
    for (const auto& m : result.leading_minors) {
        minors.push_back(to_string(m));
    }
    out["leading_minors"] = minors;
    out["diagnostics"] = result.diagnostics;
    return out;
}

Json zoom_json(const MetricSpace& space, const ZoomProfile& profile) {
    Json ratios = Json::array();
    for (const auto& r : profile.ratios) {
        ratios.push_back(to_string(r));
    }
    return Json{{"base", space.format_point(profile.base)},
                {"k", profile.k},
                {"horizon", profile.horizon},
                {"sizes", profile.sizes},
                {"ratios", ratios},
                {"running_inf", to_string(profile.running_inf)},
                {"tail_sup", to_string(profile.tail_sup)},
                {"tail_window", profile.tail_window},
                {"exhausted", profile.exhausted}};
}

}
