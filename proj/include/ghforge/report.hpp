#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ghforge {

struct ReportRow {
  std::string claim;   // stable identifier
  std::string anchor;  // what the row checks, in words
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_open = false;
  bool pass = false;
};

struct ReproduceOptions {
  double eps = 0.04908738521234052;  // pi / 64
  std::size_t n = 2048;
  std::uint64_t seed = 20240601;
};

/// Recomputes every numerically checkable claim and compares each against
/// its expected interval.
std::vector<ReportRow> reproduce_report(const ReproduceOptions& options = {});

ReportRow make_row(std::string claim, std::string anchor, double value, double lower, double upper,
                   bool lower_open = false);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string rows_to_json(const std::vector<ReportRow>& rows);

}  // namespace ghforge
