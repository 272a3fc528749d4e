#include "ffem/csv.hpp"

#include "ffem/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ffem {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string to_csv(const ResultTable& t) {
    std::string out;
    for (const auto& m : t.metadata) out += "# " + m + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            if (const double* d = std::get_if<double>(&row[i])) out += format_number(*d);
            else out += std::get<std::string>(row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << to_csv(table);
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

ResultTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    ResultTable t;
    std::string line;
    bool header = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };
    while (std::getline(in, line)) {
        if (!header && line.rfind("# ", 0) == 0) {
            t.metadata.push_back(line.substr(2));
        } else if (!header) {
            t.columns = split(line);
            header = true;
        } else {
            std::vector<Cell> row;
            for (const auto& item : split(line)) {
                char* end = nullptr;
                errno = 0;
                const double v = std::strtod(item.c_str(), &end);
                if (!item.empty() && end == item.c_str() + item.size()) row.emplace_back(v);
                else row.emplace_back(item);
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

}  // namespace ffem
