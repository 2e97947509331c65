#pragma once

#include <string>
#include <vector>

namespace trizone {

/// Fixed 12-significant-digit formatting used for every emitted number.
std::string format_number(double v);
/// Rounds to 12 significant digits so JSON output matches CSV output.
double round12(double v);
/// Comma-separated row terminated by LF.
std::string csv_row(const std::vector<double>& values);

}  // namespace trizone
