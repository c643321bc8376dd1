#ifndef snlab_tools_settings_hpp
#define snlab_tools_settings_hpp

#include "snlab/rational.hpp"
#include "snlab/report.hpp"

#include <CLI11.hpp>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace snlab::cli {

// Named string parameters resolved as: flag, then config file, then default.
class Settings {
public:
    void add(CLI::App* app, const std::string& name, const std::string& fallback, const std::string& help);
    bool knows(const std::string& name) const { return params_.count(name) > 0; }
    void apply_config(const Json& config);

    const std::string& get(const std::string& name) const;
    bool given(const std::string& name) const;
    long get_long(const std::string& name) const;
    int get_int(const std::string& name) const;
    std::size_t get_size(const std::string& name) const;
    double get_double(const std::string& name) const;
    Rational get_rational(const std::string& name) const;
    bool get_bool(const std::string& name) const;
    std::vector<std::string> get_list(const std::string& name) const;

    // Sorted (name, value) pairs; names listed in `hidden` are left out.
    std::vector<std::pair<std::string, std::string>> echo(const std::vector<std::string>& hidden = {}) const;
    void merge_echo(std::vector<std::pair<std::string, std::string>>& into,
                    const std::vector<std::string>& hidden = {}) const;

private:
    struct Param {
        std::string value;
        CLI::Option* option = nullptr;
        bool from_config = false;
    };
    std::map<std::string, std::unique_ptr<Param>> params_;
};

std::vector<std::string> split_list(const std::string& text);

}

#endif /* snlab_tools_settings_hpp */
