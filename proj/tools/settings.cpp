#include "settings.hpp"

#include "snlab/errors.hpp"

#include <algorithm>
#include <charconv>

namespace snlab::cli {

void Settings::add(CLI::App* app, const std::string& name, const std::string& fallback, const std::string& help) {
    auto param = std::make_unique<Param>();
    param->value = fallback;
    param->option = app->add_option("--" + name, param->value, help);
    if (!fallback.empty()) {
        param->option->default_str(fallback);
    }
    params_[name] = std::move(param);
}

void Settings::apply_config(const Json& config) {
    for (auto& [name, param] : params_) {
        if (param->option->count() > 0 || !config.contains(name)) {
            continue;
        }
        const auto& v = config.at(name);
        if (v.is_string()) {
            param->value = v.get<std::string>();
        } else if (v.is_boolean()) {
            param->value = v.get<bool>() ? "true" : "false";
        } else if (v.is_array()) {
            std::string joined;
            for (const auto& item : v) {
                joined += (joined.empty() ? "" : ",") + (item.is_string() ? item.get<std::string>() : item.dump());
            }
            param->value = joined;
        } else if (v.is_number() || v.is_null()) {
            param->value = v.is_null() ? "" : v.dump();
        } else {
            throw ParseError("config value for '" + name + "' must be a string, number, boolean or list");
        }
        param->from_config = true;
    }
}

const std::string& Settings::get(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) {
        throw PreconditionError("unknown parameter '" + name + "'");
    }
    return it->second->value;
}

bool Settings::given(const std::string& name) const {
    auto it = params_.find(name);
    return it != params_.end() && (it->second->option->count() > 0 || it->second->from_config);
}

long Settings::get_long(const std::string& name) const {
    const auto& text = get(name);
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("--" + name + " expects an integer, got '" + text + "'");
    }
    return value;
}

int Settings::get_int(const std::string& name) const {
    long v = get_long(name);
    if (v < -1'000'000'000L || v > 1'000'000'000L) {
        throw PreconditionError("--" + name + " is out of range");
    }
    return static_cast<int>(v);
}

std::size_t Settings::get_size(const std::string& name) const {
    long v = get_long(name);
    if (v < 0) {
        throw PreconditionError("--" + name + " must be nonnegative");
    }
    return static_cast<std::size_t>(v);
}

double Settings::get_double(const std::string& name) const {
    const auto& text = get(name);
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ParseError("--" + name + " expects a number, got '" + text + "'");
}

Rational Settings::get_rational(const std::string& name) const {
    try {
        return parse_rational(get(name));
    } catch (const ParseError& e) {
        throw ParseError("--" + name + ": " + e.what());
    }
}

bool Settings::get_bool(const std::string& name) const {
    const auto& text = get(name);
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ParseError("--" + name + " expects true or false, got '" + text + "'");
}

std::vector<std::string> Settings::get_list(const std::string& name) const {
    return split_list(get(name));
}

std::vector<std::pair<std::string, std::string>> Settings::echo(const std::vector<std::string>& hidden) const {
    std::vector<std::pair<std::string, std::string>> out;
    merge_echo(out, hidden);
    return out;
}

void Settings::merge_echo(std::vector<std::pair<std::string, std::string>>& into,
                          const std::vector<std::string>& hidden) const {
    for (const auto& [name, param] : params_) {
        if (std::find(hidden.begin(), hidden.end(), name) == hidden.end()) {
            into.emplace_back(name, param->value);
        }
    }
    std::sort(into.begin(), into.end());
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            if (!current.empty()) {
                out.push_back(current);
            }
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    if (!current.empty()) {
        out.push_back(current);
    }
    return out;
}

}
