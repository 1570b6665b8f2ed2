#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dotprod/geometry.hpp"
#include "dotprod/rational.hpp"

namespace dotprod {

// Point-set CSV: one "x,y" per line, fields are integers, fractions or
// decimal literals, '#' starts a comment line. Duplicates are load errors.

inline PointSet load_pointset(std::istream& in, const std::string& source_name = "<stream>") {
    PointSet set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (view.empty() || view.front() == '#') continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= view.size(); ++i) {
            if (i == view.size() || view[i] == ',') {
                fields.push_back(view.substr(start, i - start));
                start = i + 1;
            }
        }
        const auto at = [&] { return source_name + ":" + std::to_string(line_no); };
        if (fields.size() != 2)
            throw std::runtime_error(at() + ": expected 2 fields, got " +
                                     std::to_string(fields.size()));
        Point p;
        try {
            p.x = parse_rational(fields[0]);
            p.y = parse_rational(fields[1]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(at() + ": " + e.what());
        }
        try {
            set.add(std::move(p));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(at() + ": " + e.what());
        }
    }
    return set;
}

inline PointSet load_pointset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file: " + path);
    return load_pointset(in, path);
}

inline void save_pointset(std::ostream& out, const PointSet& set) {
    if (!set.provenance().empty()) out << "# " << set.provenance() << "\n";
    for (const Point& p : set)
        out << to_fraction_string(p.x) << "," << to_fraction_string(p.y) << "\n";
}

inline void save_pointset_file(const std::string& path, const PointSet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    save_pointset(out, set);
}

}  // namespace dotprod
