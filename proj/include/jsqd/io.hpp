#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "jsqd/fixed_point.hpp"
#include "jsqd/harness.hpp"
#include "jsqd/path.hpp"

namespace jsqd {

inline constexpr const char* kReportSchema = "jsqd-report/1";

/// %.12g, the decimal format of every CSV file.
std::string format_value(double v);

/// One replicate's rows. Row r of `path` is written as coordinate
/// first_coord + r.
struct PathRows {
  std::size_t replicate = 0;
  const SampledPath* path = nullptr;
  std::size_t first_coord = 1;
};

/// Long format `replicate,time,coord,value`, sorted by (replicate, time, coord).
void write_paths_csv(std::ostream& out, std::vector<PathRows> rows);
void write_paths_csv(const std::string& file, std::vector<PathRows> rows);

nlohmann::ordered_json to_json(const LimitRegime& regime);
nlohmann::ordered_json to_json(const ComparisonReport& report);
nlohmann::ordered_json to_json(const NearFixedPoint& mu, const DriftResidual& residual);

/// Flat KS table with header `coord,time,D,nA,nB`.
std::string report_csv(const ComparisonReport& report);

/// Writes <prefix>.json and <prefix>.csv. Byte-identical for identical reports.
void emit_report(const ComparisonReport& report, const std::string& prefix);

void write_text_file(const std::string& file, const std::string& text);

}  // namespace jsqd
