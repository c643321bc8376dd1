#ifndef snlab_report_hpp
#define snlab_report_hpp

#include "snlab/embeddability.hpp"
#include "snlab/isoperimetry.hpp"
#include "snlab/metric_graph.hpp"
#include "snlab/zoom.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace snlab {

using Json = nlohmann::ordered_json;

// What a reported number is a bound of, and over which finite window.
struct Scope {
    std::string window;
    std::string horizon;
    std::string direction = "estimate";
    bool certified = false;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/*
 * One command's output. The JSON form nests config, scope and result; the
 * CSV form writes config and scope as leading "# key=value" lines followed
 * by the table.
 */
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    Scope scope;
    Json result = Json::object();
    Table table;
    Table plot;  // two columns

    std::string to_json() const;
    std::string to_csv() const;
    std::string plot_csv() const;
};

std::string csv_escape(const std::string& field);

Json scope_json(const Scope& scope);
Json point_set_json(const MetricSpace& space, const PointSet& points);
Json quotient_json(const MetricSpace& space, const IsoQuotientRecord& record);
Json bound_json(const MetricSpace& space, const BoundEstimate& estimate);
Json amenability_json(const MetricSpace& space, const AmenabilityResult& result);
Json compatibility_json(const WeightedGraph& graph, const CompatibilityReport& report);
Json gram_json(const MetricSpace& space, const GramCheckResult& result);
Json zoom_json(const MetricSpace& space, const ZoomProfile& profile);

}

#endif /* snlab_report_hpp */
