#pragma once

// Minimal record files:
//
//   [name]
//   key = value
//       continued value (indented lines are appended)
//   # comment
//
// Records keep key order so that later keys may refer to earlier ones.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rspb {

struct Record {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const {
        for (const auto& e : entries)
            if (e.first == key) return true;
        return false;
    }
    const std::string& get(const std::string& key) const {
        for (const auto& e : entries)
            if (e.first == key) return e.second;
        throw std::out_of_range("record [" + name + "] has no key '" + key + "'");
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? get(key) : fallback;
    }
};

namespace detail {
inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace detail

inline std::vector<Record> parse_records(const std::string& text, const std::string& source = "<text>") {
    std::vector<Record> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw std::runtime_error(source + ":" + std::to_string(lineno) + ": malformed header");
            out.push_back(Record{detail::trim(t.substr(1, t.size() - 2)), {}});
            continue;
        }
        if (out.empty()) throw std::runtime_error(source + ":" + std::to_string(lineno) + ": entry outside a record");
        bool continuation = !line.empty() && (line[0] == ' ' || line[0] == '\t');
        if (continuation && !out.back().entries.empty()) {
            out.back().entries.back().second += " " + t;
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw std::runtime_error(source + ":" + std::to_string(lineno) + ": expected key = value");
        out.back().entries.emplace_back(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(detail::trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(detail::trim(cur));
    return out;
}

}  // namespace rspb
