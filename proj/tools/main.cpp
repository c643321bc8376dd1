#include "commands.hpp"
#include "settings.hpp"

#include "snlab/errors.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace snlab;
using namespace snlab::cli;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

Json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config file '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("config file '" + path + "' must hold a JSON object");
    }
    return doc;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot write '" + path + "'");
    }
    out << text;
}

struct Registered {
    const CommandDef* def;
    CLI::App* app;
    std::unique_ptr<Settings> settings;
};

int run(int argc, char** argv) {
    CLI::App app{"snlab: discrete neighborhoods, isoperimetry and growth of metric spaces"};
    app.fallthrough();
    app.require_subcommand(1);
    Settings global;
    global.add(&app, "format", "json", "output format: json or csv");
    global.add(&app, "out", "", "output file (default: standard output)");
    global.add(&app, "emit", "", "plot-data: also write a two-column CSV");
    global.add(&app, "config", "", "JSON file of option values (flags take precedence)");
    global.add(&app, "jobs", "1", "worker threads");
    global.add(&app, "point-cap", std::to_string(default_point_cap), "enumeration point cap");

    CLI::App* zoo = app.add_subcommand("zoo", "space zoo");
    zoo->require_subcommand(1);
    std::vector<Registered> registered;
    for (const auto& def : command_table()) {
        CLI::App* sub = def.name == "zoo list" ? zoo->add_subcommand("list", def.help)
                                               : app.add_subcommand(def.name, def.help);
        auto settings = std::make_unique<Settings>();
        if (def.uses_space) {
            for (const auto& p : space_params()) {
                settings->add(sub, p.name, p.fallback, p.help);
            }
        }
        for (const auto& p : def.params) {
            if (!settings->knows(p.name)) {
                settings->add(sub, p.name, p.fallback, p.help);
            }
        }
        registered.push_back({&def, sub, std::move(settings)});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    Registered* chosen = nullptr;
    for (auto& r : registered) {
        if (r.app->parsed()) {
            chosen = &r;
        }
    }
    if (!chosen) {
        throw PreconditionError("no command given");
    }
    const Settings& s = *chosen->settings;
    if (!global.get("config").empty()) {
        Json config = read_config(global.get("config"));
        for (const auto& [key, value] : config.items()) {
            if (!global.knows(key) && !s.knows(key)) {
                throw ParseError("config file: '" + key + "' is not an option of " + chosen->def->name);
            }
        }
        global.apply_config(config);
        chosen->settings->apply_config(config);
    }

    const auto format = global.get("format");
    if (format != "json" && format != "csv") {
        throw ParseError("--format must be json or csv, got '" + format + "'");
    }
    const auto emit = global.get("emit");
    if (!emit.empty() && emit != "plot-data") {
        throw ParseError("--emit only accepts plot-data, got '" + emit + "'");
    }
    RunContext ctx;
    ctx.core.point_cap = global.get_size("point-cap");
    ctx.jobs = static_cast<unsigned>(std::max<std::size_t>(global.get_size("jobs"), 1));

    Report report = chosen->def->run(s, ctx);
    report.command = chosen->def->name;
    report.config = s.echo();
    global.merge_echo(report.config, {"out"});

    std::string text = format == "json" ? report.to_json() : report.to_csv();
    std::string plot;
    if (!emit.empty()) {
        if (report.plot.columns.empty()) {
            throw PreconditionError(chosen->def->name + " has no plot data");
        }
        plot = report.plot_csv();
    }
    const auto out = global.get("out");
    if (out.empty()) {
        std::cout << text;
        if (!plot.empty()) {
            std::cout << "# plot-data\n" << plot;
        }
    } else {
        write_text(out, text);
        if (!plot.empty()) {
            write_text(out + ".plot.csv", plot);
        }
    }
    return 0;
}

}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "snlab: parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const MetricAxiomError& e) {
        std::cerr << "snlab: metric axiom violated: " << e.what() << '\n';
        return exit_usage;
    } catch (const PreconditionError& e) {
        std::cerr << "snlab: precondition failed: " << e.what() << '\n';
        return exit_usage;
    } catch (const HorizonExceeded& e) {
        std::cerr << "snlab: budget exhausted: " << e.what() << '\n';
        return exit_budget;
    } catch (const Json::exception& e) {
        std::cerr << "snlab: parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "snlab: internal error: " << e.what() << '\n';
        return 1;
    }
}
