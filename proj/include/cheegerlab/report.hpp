#pragma once

#include <json.hpp>
#include <string>

namespace cheegerlab {

using Json = nlohmann::ordered_json;

/// One residual row with provenance. Ungated rows (informational values)
/// carry gated = false and always pass.
struct ReportRow {
  std::string module;
  std::string operation;
  std::string name;
  int point = -1;          // sample index, -1 when not point-indexed
  double eps = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  bool gated = true;
  bool pass = true;
  Json extra;  // command-specific payload (matrices, verdicts, ...)
};

Json row_to_json(const ReportRow& r);
std::string report_to_csv(const Json& report);

}  // namespace cheegerlab
