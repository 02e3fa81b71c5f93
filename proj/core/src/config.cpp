#include "ppide/config.hpp"

#include "ppide/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ppide {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double_token(const std::string& section, const std::string& key,
                          const std::string& raw) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0' || errno == ERANGE) {
        throw config_error("value of " + section + "." + key + " is not a number: '" +
                           raw + "'");
    }
    return v;
}

long parse_long_token(const std::string& section, const std::string& key,
                      const std::string& raw) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0' || errno == ERANGE) {
        throw config_error("value of " + section + "." + key + " is not an integer: '" +
                           raw + "'");
    }
    return v;
}

std::vector<std::string> split_csv(const std::string& raw) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(raw);
    while (std::getline(in, token, ',')) {
        out.push_back(trim(token));
    }
    return out;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s.front() == '#') {
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3) {
                throw config_error("config line " + std::to_string(line_no) +
                                   ": malformed section header '" + s + "'");
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) {
                throw config_error("config line " + std::to_string(line_no) +
                                   ": empty section name");
            }
            cfg.sections_[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected key = value, got '" + s + "'");
        }
        if (section.empty()) {
            throw config_error("config line " + std::to_string(line_no) +
                               ": key outside any [section]");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) {
            throw config_error("config line " + std::to_string(line_no) + ": empty key");
        }
        auto& sec = cfg.sections_[section];
        if (sec.count(key) != 0) {
            throw config_error("config line " + std::to_string(line_no) + ": duplicate key " +
                               section + "." + key);
        }
        sec[key] = value;
    }
    return cfg;
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw config_error("override must be section.key=value, got '" + assignment + "'");
    }
    const std::string dotted = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = dotted.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == dotted.size()) {
        throw config_error("override must be section.key=value, got '" + assignment + "'");
    }
    sections_[dotted.substr(0, dot)][dotted.substr(dot + 1)] = value;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    return sec != sections_.end() && sec->second.count(key) != 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec != sections_.end()) {
        const auto it = sec->second.find(key);
        if (it != sec->second.end()) {
            return it->second;
        }
    }
    throw config_error("missing required config key " + section + "." + key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) {
        return fallback;
    }
    return parse_double_token(section, key, get_string(section, key));
}

long Config::get_long(const std::string& section, const std::string& key,
                      long fallback) const {
    if (!has(section, key)) {
        return fallback;
    }
    return parse_long_token(section, key, get_string(section, key));
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    if (!has(section, key)) {
        return fallback;
    }
    const std::string raw = get_string(section, key);
    if (raw == "true") {
        return true;
    }
    if (raw == "false") {
        return false;
    }
    throw config_error("value of " + section + "." + key + " must be true or false, got '" +
                       raw + "'");
}

std::vector<double> Config::get_double_list(const std::string& section, const std::string& key,
                                            const std::string& fallback_csv) const {
    const std::string raw = has(section, key) ? get_string(section, key) : fallback_csv;
    std::vector<double> out;
    for (const auto& token : split_csv(raw)) {
        out.push_back(parse_double_token(section, key, token));
    }
    if (out.empty()) {
        throw config_error("value of " + section + "." + key + " must be a nonempty list");
    }
    return out;
}

std::vector<long> Config::get_long_list(const std::string& section, const std::string& key,
                                        const std::string& fallback_csv) const {
    const std::string raw = has(section, key) ? get_string(section, key) : fallback_csv;
    std::vector<long> out;
    for (const auto& token : split_csv(raw)) {
        out.push_back(parse_long_token(section, key, token));
    }
    if (out.empty()) {
        throw config_error("value of " + section + "." + key + " must be a nonempty list");
    }
    return out;
}

void Config::require_known(const std::map<std::string, std::set<std::string>>& schema) const {
    for (const auto& [section, entries] : sections_) {
        const auto known = schema.find(section);
        if (known == schema.end()) {
            throw config_error("unknown config section [" + section + "]");
        }
        for (const auto& [key, value] : entries) {
            (void)value;
            if (known->second.count(key) == 0) {
                throw config_error("unknown config key " + section + "." + key);
            }
        }
    }
}

std::string Config::canonical_text() const {
    std::string out;
    for (const auto& [section, entries] : sections_) {
        for (const auto& [key, value] : entries) {
            out += section;
            out += '.';
            out += key;
            out += '=';
            out += value;
            out += '\n';
        }
    }
    return out;
}

std::string Config::hash_hex() const {
    const std::string text = canonical_text();
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace ppide
