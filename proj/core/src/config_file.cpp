#include "ionsim/config_file.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ionsim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void ConfigMap::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

bool ConfigMap::has(const std::string& key) const { return values_.count(key) != 0; }

std::string ConfigMap::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing config key: " + key);
    return it->second;
}

double ConfigMap::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config key " + key + " is not a number: '" + v + "'");
    }
}

long ConfigMap::get_long(const std::string& key) const {
    const std::string v = get_string(key);
    long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw config_error("config key " + key + " is not an integer: '" + v + "'");
    return out;
}

int ConfigMap::get_int(const std::string& key) const {
    return static_cast<int>(get_long(key));
}

std::string ConfigMap::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}
double ConfigMap::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
long ConfigMap::get_long_or(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}
int ConfigMap::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(lineno) +
                                   ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key");
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& overrides) {
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw config_error("--set expects key=value, got '" + ov + "'");
        cfg.set(trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
}

ChainConfig chain_config_from(const ConfigMap& cfg) {
    ChainConfig c;
    c.N = cfg.get_int("chain.N");
    c.t_C = cfg.get_double("chain.t_C");
    c.delta_target = cfg.get_double_or("chain.delta_target", 1.0);
    c.g = cfg.get_double_or("chain.g", 1.0);
    c.dk_d0 = cfg.get_double_or("chain.dk_d0", 0.0);
    c.hopping_model = hopping_model_from_string(
        cfg.get_string_or("chain.hopping_model", "pbc_dipolar"));
    c.validate();
    return c;
}

} // namespace ionsim
