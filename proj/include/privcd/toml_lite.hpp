#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace privcd {

// Minimal TOML reader covering what experiment configs need: [table] and
// [[array-of-tables]] headers, `key = value` lines with strings, integers,
// floats, booleans and flat arrays, plus # comments. Nested tables and
// inline tables are out of scope.
class TomlTable {
public:
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<std::string> get_string_array(const std::string& key) const;
    std::vector<double> get_double_array(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    std::map<std::string, std::string> scalars;               // raw value text
    std::map<std::string, std::vector<std::string>> arrays;   // raw element text
};

struct TomlDocument {
    TomlTable root;
    std::map<std::string, TomlTable> tables;                   // [name]
    std::map<std::string, std::vector<TomlTable>> table_lists; // [[name]]
};

TomlDocument parse_toml_file(const std::string& path);
TomlDocument parse_toml(const std::string& text);

}  // namespace privcd
