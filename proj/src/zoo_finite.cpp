#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace snlab {

namespace {

bool exceeds(const Rational& lhs, const Rational& rhs, const Arithmetic& arithmetic) {
    if (arithmetic.mode == ArithmeticMode::exact_rational) {
        return lhs > rhs;
    }
    return lhs > rhs && arithmetic.separates(rhs, lhs);
}

}

FiniteMetricSpace::FiniteMetricSpace(std::string id, std::vector<std::string> labels,
                                     std::vector<std::vector<Rational>> distances, Arithmetic arithmetic,
                                     bool check_axioms)
    : id_(std::move(id)), labels_(std::move(labels)), distances_(std::move(distances)), arithmetic_(arithmetic) {
    const std::size_t n = labels_.size();
    if (n == 0) {
        throw PreconditionError("finite metric space needs at least one point");
    }
    if (distances_.size() != n) {
        throw PreconditionError("distance matrix has " + std::to_string(distances_.size()) + " rows for " +
                                std::to_string(n) + " points");
    }
    for (const auto& row : distances_) {
        if (row.size() != n) {
            throw PreconditionError("distance matrix is not square");
        }
    }
    if (!check_axioms) {
        return;
    }
    auto name = [&](std::size_t i) { return "'" + labels_[i] + "'"; };
    for (std::size_t i = 0; i < n; ++i) {
        if (distances_[i][i] != 0) {
            throw MetricAxiomError("d(" + name(i) + "," + name(i) + ") is not 0");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (distances_[i][j] != distances_[j][i]) {
                throw MetricAxiomError("asymmetric distances between " + name(i) + " and " + name(j));
            }
            if (i != j && distances_[i][j] <= 0) {
                throw MetricAxiomError("distinct points " + name(i) + " and " + name(j) +
                                       " have nonpositive distance");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Rational via = distances_[i][j] + distances_[j][k];
                if (exceeds(distances_[i][k], via, arithmetic_)) {
                    throw MetricAxiomError("triangle inequality fails for (" + name(i) + ", " + name(j) + ", " +
                                           name(k) + "): " + to_string(distances_[i][k]) + " > " +
                                           to_string(via));
                }
            }
        }
    }
}

std::string FiniteMetricSpace::description() const {
    return "finite metric space on " + std::to_string(labels_.size()) + " points";
}

Rational FiniteMetricSpace::distance(PointId a, PointId b) const {
    if (!is_point(a) || !is_point(b)) {
        throw PreconditionError("point outside finite space " + id_);
    }
    return distances_[a.value][b.value];
}

PointSet FiniteMetricSpace::all_points() const {
    std::vector<PointId> ids;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        ids.push_back(PointId{i});
    }
    return PointSet(std::move(ids));
}

std::vector<PointDistance> FiniteMetricSpace::neighborhood(const PointSet& seeds, const Rational& radius,
                                                           std::size_t point_cap) const {
    for (auto s : seeds) {
        if (!is_point(s)) {
            throw PreconditionError("point outside finite space " + id_);
        }
    }
    return neighborhood_by_scan(*this, all_points(), seeds, radius, point_cap);
}

std::string FiniteMetricSpace::format_point(PointId p) const {
    return is_point(p) ? labels_[p.value] : MetricSpace::format_point(p);
}

PointId FiniteMetricSpace::parse_point(std::string_view text) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == text) {
            return PointId{i};
        }
    }
    return MetricSpace::parse_point(text);
}

Rational FiniteMetricSpace::radius_hint() const {
    Rational best = 0;
    for (const auto& row : distances_) {
        for (const auto& d : row) {
            if (d > best) {
                best = d;
            }
        }
    }
    return best > 0 ? best : Rational(1);
}

std::shared_ptr<FiniteMetricSpace> truncate(const MetricSpace& space, const PointSet& points) {
    if (points.empty()) {
        throw PreconditionError("truncate: empty point set");
    }
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> table(points.size(), std::vector<Rational>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels.push_back(space.format_point(points[i]));
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            table[i][j] = table[j][i] = space.distance(points[i], points[j]);
        }
    }
    return std::make_shared<FiniteMetricSpace>(space.id() + "-truncation", std::move(labels), std::move(table),
                                               space.arithmetic(), false);
}

namespace {

Rational metric_entry(const nlohmann::json& v, bool& saw_float) {
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    if (v.is_number_float()) {
        saw_float = true;
        double d = v.get<double>();
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
        return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
    }
    throw ParseError("distance entries must be numbers or rational strings, got " + v.dump());
}

}

std::shared_ptr<FiniteMetricSpace> parse_finite_metric_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("distances")) {
        throw ParseError("finite metric needs a \"distances\" matrix");
    }
    if (doc.contains("type") && doc.at("type") != "finite_metric") {
        throw ParseError("expected \"type\": \"finite_metric\"");
    }
    const auto& rows = doc.at("distances");
    if (!rows.is_array()) {
        throw ParseError("\"distances\" must be an array of rows");
    }
    std::vector<std::string> labels;
    if (doc.contains("points")) {
        for (const auto& p : doc.at("points")) {
            labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        }
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            labels.push_back("p" + std::to_string(i));
        }
    }
    bool saw_float = false;
    std::vector<std::vector<Rational>> table;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array()) {
            throw ParseError("row " + std::to_string(r) + " of \"distances\" is not an array");
        }
        std::vector<Rational> row;
        for (const auto& v : rows[r]) {
            row.push_back(metric_entry(v, saw_float));
        }
        table.push_back(std::move(row));
    }
    Arithmetic arithmetic = saw_float ? Arithmetic::tolerant() : Arithmetic::exact();
    if (doc.contains("arithmetic")) {
        std::string mode = doc.at("arithmetic").get<std::string>();
        if (mode == "exact") {
            arithmetic = Arithmetic::exact();
        } else if (mode == "float") {
            arithmetic = Arithmetic::tolerant();
        } else {
            throw ParseError("\"arithmetic\" must be \"exact\" or \"float\"");
        }
    }
    if (doc.contains("level_tolerance")) {
        arithmetic.level_tolerance = doc.at("level_tolerance").get<double>();
    }
    std::string id = doc.value("id", std::string("finite-metric"));
    return std::make_shared<FiniteMetricSpace>(id, std::move(labels), std::move(table), arithmetic, true);
}

SpaceHandle load_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open space file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
        }
        if (doc.value("type", "") != "weighted_graph") {
            return parse_finite_metric_json(text);
        }
    }
    WeightedGraph graph = load_graph_file(path);
    auto report = validate_metric_graph(graph);
    graph.record_validation(report);
    if (!report.valid()) {
        throw PreconditionError("graph in '" + path + "' violates the metric-graph compatibility conditions");
    }
    return induced_metric(graph);
}

}
