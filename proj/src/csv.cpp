#include "fracsub/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracsub {

std::vector<std::vector<double>> csv_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorClass::io, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        double x = std::stod(cell, &pos);
        row.push_back(x);
      } catch (...) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) { first = false; continue; }  // header row
      fail(ErrorClass::config, "non-numeric CSV row in " + path + ": " + line);
    }
    first = false;
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

static void write_double(std::FILE* f, double x) { std::fprintf(f, "%.17g", x); }

void field_dump_csv(const Field& f, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) fail(ErrorClass::io, "cannot write " + path);
  for (int d = 1; d <= f.grid.dim; ++d) std::fprintf(out, "x%d,", d);
  std::fprintf(out, "value\n");
  const std::int64_t n = f.grid.size();
  for (std::int64_t i = 0; i < n; ++i) {
    auto x = f.grid.point(i);
    for (int d = 0; d < f.grid.dim; ++d) {
      write_double(out, x[d]);
      std::fputc(',', out);
    }
    write_double(out, f.v[static_cast<std::size_t>(i)]);
    std::fputc('\n', out);
  }
  std::fclose(out);
}

void csv_write(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) fail(ErrorClass::io, "cannot write " + path);
  std::fprintf(out, "%s\n", header.c_str());
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) std::fputc(',', out);
      write_double(out, row[i]);
    }
    std::fputc('\n', out);
  }
  std::fclose(out);
}

}  // namespace fracsub
