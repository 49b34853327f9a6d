#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcl/errors.hpp"

namespace fcl::csv {

/// 12 significant digits; the reproducibility checks compare these bytes.
inline std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string cell(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

/// Numeric table with a header row. Empty cells read as missing.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(const std::string& name, const std::string& source) const {
        const int c = column(name);
        if (c < 0) throw ValidationError(source, "missing column '" + name + "'");
        return c;
    }
};

namespace detail {

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline Table read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path, "cannot open file");
    Table t;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ValidationError(path, "missing header row");
    t.header = detail::split(line);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = detail::split(line);
        if (cells.size() != t.header.size())
            throw ValidationError(path, "line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                                            " fields, header has " + std::to_string(t.header.size()));
        std::vector<std::optional<double>> row;
        for (const auto& c : cells) {
            if (c.empty()) {
                row.emplace_back();
                continue;
            }
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(c, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != c.size()) throw ValidationError(path, "line " + std::to_string(lineno) + ": '" + c + "' is not a number");
            row.emplace_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Writes header + rows; the caller formats cells.
class Writer {
public:
    Writer(const std::string& path, const std::string& header) : out_(path) {
        if (!out_) throw Error("cannot write " + path);
        out_ << header << '\n';
    }

    template <class... Cells>
    void row(const Cells&... cells) {
        std::ostringstream line;
        bool first = true;
        ((line << (first ? "" : ",") << to_cell(cells), first = false), ...);
        out_ << line.str() << '\n';
    }

private:
    static std::string to_cell(double v) { return number(v); }
    static std::string to_cell(int v) { return std::to_string(v); }
    static std::string to_cell(const std::optional<double>& v) { return cell(v); }
    static std::string to_cell(const std::string& v) { return v; }

    std::ofstream out_;
};

}  // namespace fcl::csv
