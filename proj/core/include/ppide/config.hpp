#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ppide {

/// Sectioned key-value configuration. Syntax: `[section]` headers, `key = value`
/// entries, `#` full-line comments, blank lines ignored. Parsing is strict:
/// keys outside a section, duplicate keys, and malformed lines are errors, and
/// require_known rejects any section or key absent from the schema.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    /// Applies a `section.key=value` override (may introduce a new key; the
    /// schema check still applies afterwards).
    void apply_override(const std::string& assignment);

    bool has(const std::string& section, const std::string& key) const;

    /// Getters with a default return it when the key is absent; the
    /// no-default get_string throws config_error naming the key. Typed
    /// getters reject values with trailing garbage.
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::string& fallback_csv) const;
    std::vector<long> get_long_list(const std::string& section, const std::string& key,
                                    const std::string& fallback_csv) const;

    /// Throws config_error naming the first section or section.key not present
    /// in the schema.
    void require_known(const std::map<std::string, std::set<std::string>>& schema) const;

    /// Flat `section.key=value` lines, sorted, one per line. The determinism
    /// anchor: identical configs canonicalize identically.
    std::string canonical_text() const;

    /// FNV-1a hash of canonical_text, as 16 hex digits.
    std::string hash_hex() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

} // namespace ppide
