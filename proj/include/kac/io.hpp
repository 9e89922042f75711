#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kac/cf_grid.hpp"
#include "kac/errors.hpp"

namespace kac {

/// Shortest representation that round-trips a double exactly.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    out << text;
}

inline std::string cf_grid_to_csv(const CfGrid& g) {
    std::ostringstream out;
    out << "xi,re,im\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << format_double(g.node(i)) << ',' << format_double(g[i].real()) << ','
            << format_double(g[i].imag()) << '\n';
    return out.str();
}

inline CfGrid cf_grid_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("xi,re,im", 0) != 0)
        throw ConfigError("cf csv: missing 'xi,re,im' header");
    std::vector<double> xi, re, im;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b, c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw ConfigError("cf csv: malformed row: " + line);
        xi.push_back(a);
        re.push_back(b);
        im.push_back(c);
    }
    if (xi.size() < 9) throw ConfigError("cf csv: too few rows");
    CfGrid g(xi.back(), xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) g[i] = {re[i], im[i]};
    return g;
}

inline std::string column_to_csv(const std::vector<double>& values, const std::string& header) {
    std::ostringstream out;
    out << header << '\n';
    for (double v : values) out << format_double(v) << '\n';
    return out.str();
}

/// One-column CSV of reals; a single non-numeric header line is tolerated.
inline std::vector<double> read_column_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path.string());
    std::vector<double> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            if (first) { first = false; continue; }
            throw ConfigError("column csv: malformed row: " + line);
        }
        first = false;
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("column csv: no data in " + path.string());
    return values;
}

} // namespace kac
