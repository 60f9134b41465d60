#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fsched::csv {

inline constexpr const char* kNotApplicable = "NA";

/// Shortest text that reads back to the same double.
std::string number(double v);
/// Fixed decimals, for reports meant to be read by people.
std::string fixed(double v, int decimals);
std::string fixed(const std::optional<double>& v, int decimals);

std::string row(const std::vector<std::string>& cells);

}  // namespace fsched::csv
