// SPDX-License-Identifier: Apache-2.0
#include "owcrs/report.hpp"

#include "owcrs/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace owcrs {

namespace {

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string g4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

template <class T>
T parse_field(std::string_view s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad field '" + std::string(s) + "'");
  }
  return v;
}

ChartRange padded(double lo, double hi) {
  const double span = hi - lo;
  const double pad = span > 0.0 ? 0.05 * span : 0.05 * std::max(std::abs(lo), 1.0);
  return {lo - pad, hi + pad};
}

const char* scheme_colour(Scheme s) {
  switch (s) {
    case Scheme::kOptRs: return "#1f77b4";
    case Scheme::kConvRs: return "#d62728";
    case Scheme::kOma: return "#2ca02c";
  }
  return "#000000";
}

std::string scheme_label(Scheme s) {
  switch (s) {
    case Scheme::kOptRs: return "Optimum RS";
    case Scheme::kConvRs: return "Conventional RS";
    case Scheme::kOma: return "OMA (TDMA)";
  }
  return "?";
}

}  // namespace

std::vector<CsvRow> to_csv_rows(const SweepResult& result) {
  std::vector<CsvRow> rows;
  rows.reserve(result.rows.size());
  for (const auto& r : result.rows) {
    rows.push_back({std::string(scheme_name(r.scheme)), std::string(sweep_param_name(result.kind)), r.sweep_value,
                    r.mean, r.stderr_mean, r.drops, result.provenance.seed});
  }
  return rows;
}

std::string format_csv(std::span<const CsvRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.scheme + ',' + r.sweep_param + ',' + g9(r.sweep_value) + ',' + g9(r.mean) + ',' + g9(r.stderr_mean) +
           ',' + std::to_string(r.drops) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t start = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    const std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!header_seen) {
      if (line != kCsvHeader) throw InvalidArgument("csv: unexpected header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t p = 0;
    while (true) {
      const auto c = line.find(',', p);
      f.push_back(line.substr(p, c == std::string_view::npos ? std::string_view::npos : c - p));
      if (c == std::string_view::npos) break;
      p = c + 1;
    }
    if (f.size() != 7) throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected 7 fields");
    rows.push_back({std::string(f[0]), std::string(f[1]), parse_field<double>(f[2], line_no),
                    parse_field<double>(f[3], line_no), parse_field<double>(f[4], line_no),
                    parse_field<long long>(f[5], line_no), parse_field<std::uint64_t>(f[6], line_no)});
  }
  if (!header_seen) throw InvalidArgument("csv: missing header");
  return rows;
}

void write_csv(const SweepResult& result, const std::string& path) {
  const auto rows = to_csv_rows(result);
  write_file(path, format_csv(rows));
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

ChartAxes chart_axes(const SweepResult& result) {
  if (result.rows.empty()) throw InvalidArgument("chart: result has no rows");
  double x_lo = result.rows.front().sweep_value, x_hi = x_lo;
  double y_lo = result.rows.front().mean, y_hi = y_lo;
  for (const auto& r : result.rows) {
    x_lo = std::min(x_lo, r.sweep_value);
    x_hi = std::max(x_hi, r.sweep_value);
    y_lo = std::min(y_lo, r.mean);
    y_hi = std::max(y_hi, r.mean);
  }
  return {padded(x_lo, x_hi), padded(y_lo, y_hi)};
}

std::string render_svg(const SweepResult& result) {
  const ChartAxes axes = chart_axes(result);
  constexpr double kWidth = 680, kHeight = 420;
  constexpr double kLeft = 70, kRight = 170, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - axes.x.lo) / (axes.x.hi - axes.x.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - axes.y.lo) / (axes.y.hi - axes.y.lo) * plot_h; };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<desc>config_hash=" << result.provenance.config_hash << " seed=" << result.provenance.seed
    << " version=" << result.provenance.version << "</desc>\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double fx = axes.x.lo + (axes.x.hi - axes.x.lo) * i / (kTicks - 1);
    const double fy = axes.y.lo + (axes.y.hi - axes.y.lo) * i / (kTicks - 1);
    s << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << fixed2(kTop + plot_h) << "\" x2=\"" << fixed2(px(fx))
      << "\" y2=\"" << fixed2(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(kTop + plot_h + 18)
      << "\" text-anchor=\"middle\">" << g4(fx) << "</text>\n";
    s << "<line x1=\"" << fixed2(kLeft - 5) << "\" y1=\"" << fixed2(py(fy)) << "\" x2=\"" << fixed2(kLeft)
      << "\" y2=\"" << fixed2(py(fy)) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py(fy) + 4) << "\" text-anchor=\"end\">"
      << g4(fy) << "</text>\n";
  }
  const char* x_label = result.kind == SweepKind::kSnr ? "SNR (dB)" : "Beam waist W0 (\xCE\xBCm)";
  s << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kHeight - 15)
    << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  s << "<text x=\"18\" y=\"" << fixed2(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << fixed2(kTop + plot_h / 2) << ")\">Sum rate (bits/s/Hz)</text>\n";

  const std::size_t points = result.points.size();
  for (std::size_t si = 0; si < result.schemes.size(); ++si) {
    const Scheme scheme = result.schemes[si];
    s << "<polyline fill=\"none\" stroke=\"" << scheme_colour(scheme) << "\" stroke-width=\"2\" points=\"";
    for (std::size_t p = 0; p < points; ++p) {
      const SweepRow& r = result.rows[si * points + p];
      s << (p ? " " : "") << fixed2(px(r.sweep_value)) << ',' << fixed2(py(r.mean));
    }
    s << "\"/>\n";
    const double ly = kTop + 15 + 20.0 * static_cast<double>(si);
    const double lx = kLeft + plot_w + 15;
    s << "<line x1=\"" << fixed2(lx) << "\" y1=\"" << fixed2(ly) << "\" x2=\"" << fixed2(lx + 25) << "\" y2=\""
      << fixed2(ly) << "\" stroke=\"" << scheme_colour(scheme) << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << fixed2(lx + 32) << "\" y=\"" << fixed2(ly + 4) << "\">" << scheme_label(scheme)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_chart(const SweepResult& result, const std::string& path) { write_file(path, render_svg(result)); }

}  // namespace owcrs
