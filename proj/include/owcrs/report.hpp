// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "owcrs/experiment.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace owcrs {

inline constexpr std::string_view kCsvHeader =
    "scheme,sweep_param,sweep_value,mean_sum_rate_bpshz,stderr,drops,seed";

struct CsvRow {
  std::string scheme;
  std::string sweep_param;
  double sweep_value = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  long long drops = 0;
  std::uint64_t seed = 0;
};

std::vector<CsvRow> to_csv_rows(const SweepResult& result);

/// Header plus one line per row, numbers at 9 significant digits, LF endings.
std::string format_csv(std::span<const CsvRow> rows);
std::vector<CsvRow> parse_csv(std::string_view text);

void write_csv(const SweepResult& result, const std::string& path);
std::vector<CsvRow> read_csv(const std::string& path);

struct ChartRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct ChartAxes {
  ChartRange x;
  ChartRange y;
};

/// Data extent padded by 5% of the span on each side (5% of max(|v|, 1) when
/// the span is zero).
ChartAxes chart_axes(const SweepResult& result);

/// Self-contained SVG line chart, one polyline per scheme. Throws
/// InvalidArgument on an empty result.
std::string render_svg(const SweepResult& result);
void emit_chart(const SweepResult& result, const std::string& path);

}  // namespace owcrs
