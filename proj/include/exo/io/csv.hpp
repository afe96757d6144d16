#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exo::io {

// Shortest-ish round-trip formatting, 12 significant digits cap. All
// numeric CLI output goes through this so emitted files re-ingest exactly.
std::string format_num(double v);

double parse_num(const std::string& s); // throws io_error on garbage

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments; // leading '#' lines, kept in order
};

void write_csv(std::ostream& os, const Table& t);
std::string to_csv(const Table& t);
Table read_csv(std::istream& is);
Table read_csv_file(const std::string& path);
void write_csv_file(const std::string& path, const Table& t);

std::vector<std::string> split_csv_line(const std::string& line);

} // namespace exo::io
