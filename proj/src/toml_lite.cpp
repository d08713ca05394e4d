#include "privcd/toml_lite.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace privcd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& raw, const std::string& key) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') {
        throw std::runtime_error("toml: expected quoted string for key " + key);
    }
    return raw.substr(1, raw.size() - 2);
}

std::vector<std::string> split_array_elements(const std::string& inner) {
    std::vector<std::string> elements;
    std::string current;
    bool in_string = false;
    for (char c : inner) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            auto t = trim(current);
            if (!t.empty()) elements.push_back(t);
            current.clear();
        } else {
            current += c;
        }
    }
    auto t = trim(current);
    if (!t.empty()) elements.push_back(t);
    return elements;
}

double parse_number(const std::string& raw, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        throw std::runtime_error("toml: expected a number for key " + key + ", got '" + raw +
                                 "'");
    }
    return out;
}

}  // namespace

bool TomlTable::has(const std::string& key) const {
    return scalars.count(key) > 0 || arrays.count(key) > 0;
}

std::string TomlTable::get_string(const std::string& key) const {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw std::runtime_error("toml: missing key " + key);
    return unquote(it->second, key);
}

std::int64_t TomlTable::get_int(const std::string& key) const {
    double v = get_double(key);
    auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v) {
        throw std::runtime_error("toml: expected an integer for key " + key);
    }
    return i;
}

double TomlTable::get_double(const std::string& key) const {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw std::runtime_error("toml: missing key " + key);
    return parse_number(it->second, key);
}

bool TomlTable::get_bool(const std::string& key) const {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw std::runtime_error("toml: missing key " + key);
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw std::runtime_error("toml: expected true/false for key " + key);
}

std::vector<std::string> TomlTable::get_string_array(const std::string& key) const {
    auto it = arrays.find(key);
    if (it == arrays.end()) throw std::runtime_error("toml: missing array " + key);
    std::vector<std::string> out;
    for (const auto& raw : it->second) out.push_back(unquote(raw, key));
    return out;
}

std::vector<double> TomlTable::get_double_array(const std::string& key) const {
    auto it = arrays.find(key);
    if (it == arrays.end()) throw std::runtime_error("toml: missing array " + key);
    std::vector<double> out;
    for (const auto& raw : it->second) out.push_back(parse_number(raw, key));
    return out;
}

std::string TomlTable::get_string_or(const std::string& key, const std::string& fallback) const {
    return scalars.count(key) ? get_string(key) : fallback;
}

std::int64_t TomlTable::get_int_or(const std::string& key, std::int64_t fallback) const {
    return scalars.count(key) ? get_int(key) : fallback;
}

double TomlTable::get_double_or(const std::string& key, double fallback) const {
    return scalars.count(key) ? get_double(key) : fallback;
}

bool TomlTable::get_bool_or(const std::string& key, bool fallback) const {
    return scalars.count(key) ? get_bool(key) : fallback;
}

TomlDocument parse_toml(const std::string& text) {
    TomlDocument doc;
    TomlTable* current = &doc.root;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(strip_comment(line));
        if (t.empty()) continue;
        if (t.size() >= 4 && t.substr(0, 2) == "[[" && t.substr(t.size() - 2) == "]]") {
            std::string name = trim(t.substr(2, t.size() - 4));
            doc.table_lists[name].emplace_back();
            current = &doc.table_lists[name].back();
            continue;
        }
        if (t.front() == '[' && t.back() == ']') {
            std::string name = trim(t.substr(1, t.size() - 2));
            current = &doc.tables[name];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("toml: line " + std::to_string(line_no) +
                                     " is not a key = value pair");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::runtime_error("toml: bad assignment on line " + std::to_string(line_no));
        }
        if (value.front() == '[') {
            if (value.back() != ']') {
                throw std::runtime_error("toml: arrays must be single-line (line " +
                                         std::to_string(line_no) + ")");
            }
            current->arrays[key] = split_array_elements(value.substr(1, value.size() - 2));
        } else {
            current->scalars[key] = value;
        }
    }
    return doc;
}

TomlDocument parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_toml(buffer.str());
}

}  // namespace privcd
