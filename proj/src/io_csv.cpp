#include "exo/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "exo/errors.hpp"

namespace exo::io {

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_num(const std::string& s) {
    if (s.empty())
        throw io_error("parse_num: empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw io_error("parse_num: not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

void write_csv(std::ostream& os, const Table& t) {
    for (const std::string& c : t.comments)
        os << "# " << c << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << t.header[i] << (i + 1 < t.header.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            std::string c = line.substr(1);
            if (!c.empty() && c.front() == ' ')
                c.erase(c.begin());
            t.comments.push_back(c);
            continue;
        }
        if (!header_seen) {
            t.header = split_csv_line(line);
            header_seen = true;
        } else {
            t.rows.push_back(split_csv_line(line));
        }
    }
    if (!header_seen)
        throw io_error("read_csv: no header row");
    return t;
}

Table read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw io_error("cannot open " + path);
    return read_csv(f);
}

void write_csv_file(const std::string& path, const Table& t) {
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot write " + path);
    write_csv(f, t);
}

} // namespace exo::io
