#pragma once

#include <map>
#include <string>
#include <vector>

#include "ionsim/chain_config.hpp"

namespace ionsim {

// Flat key-value configuration with [section] headers; keys are stored as
// "section.key". '#' starts a comment. Values keep their text form until a
// typed getter is called, so the CLI can override any key uniformly.
class ConfigMap {
public:
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    // Typed getters throw config_error naming the missing or ill-formed key.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    int get_int(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    int get_int_or(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

ConfigMap parse_config_file(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

// Apply "section.key=value" pairs (CLI --set flags) on top of a parsed file.
void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& overrides);

// ChainConfig from the [chain] section.
ChainConfig chain_config_from(const ConfigMap& cfg);

} // namespace ionsim
