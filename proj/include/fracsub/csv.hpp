#pragma once

#include <string>
#include <vector>

#include "fracsub/field.hpp"

namespace fracsub {

// Numeric CSV reader; skips a header row if the first cell is not a number.
std::vector<std::vector<double>> csv_read(const std::string& path);

// Writes "x1,...,xN,value" rows with %.17g formatting, one sample per line.
void field_dump_csv(const Field& f, const std::string& path);

// Generic CSV writer used by the reports; %.17g for doubles.
void csv_write(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace fracsub
