#include "homsim/scan_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace homsim::io {

std::optional<sim::VisibilityEstimate> summarize(std::span<const sim::ScanPoint> points,
                                                 const scenario::ScenarioConfig& config) {
  sim::VisibilityOptions options;
  options.dip_center = Length::micrometers(config.dip_center_um);
  try {
    return sim::estimate_visibility(points, config.pulses.spectrum(), options);
  } catch (const sim::InsufficientBaseline&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

void write_csv(std::ostream& out, std::span<const sim::ScanPoint> points,
               const std::optional<sim::VisibilityEstimate>& summary) {
  fmt::print(out, "{}\n", kCsvHeader);
  for (const auto& p : points) {
    fmt::print(out, "{:.6f},{},{},{},{},{:.10g},{:.10g}\n", p.delta_l.in_micrometers(),
               p.singles_c, p.singles_d, p.coincidences, p.trials, p.rate(),
               p.coincidence_rate_stderr);
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const double v = summary ? summary->visibility : nan;
  const double se = summary ? summary->standard_error : nan;
  const double base = summary ? summary->baseline_rate : nan;
  const double floor = summary ? summary->floor_rate : nan;
  const double center = summary ? summary->dip_center.in_micrometers() : nan;
  fmt::print(out,
             "# visibility={:.6f} visibility_stderr={:.6f} baseline_rate={:.10g} "
             "floor_rate={:.10g} dip_center_um={:.6f}\n",
             v, se, base, floor, center);
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is missing from older standard libraries.
    std::string s(text);
    char* end = nullptr;
    value = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw scenario::ConfigError(fmt::format("line {}: bad number '{}'", line, text));
    }
  } else {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw scenario::ConfigError(fmt::format("line {}: bad count '{}'", line, text));
    }
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

CsvScan read_csv(std::istream& in) {
  CsvScan scan;
  scan.visibility = std::numeric_limits<double>::quiet_NaN();
  scan.visibility_stderr = std::numeric_limits<double>::quiet_NaN();
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (auto item : split(std::string_view(line).substr(1), ' ')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = item.substr(0, eq);
        const auto val = item.substr(eq + 1);
        if (key == "visibility") scan.visibility = parse_field<double>(val, line_no);
        if (key == "visibility_stderr") scan.visibility_stderr = parse_field<double>(val, line_no);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw scenario::ConfigError("unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) {
      throw scenario::ConfigError(fmt::format("line {}: expected 7 columns", line_no));
    }
    scan.rows.push_back({parse_field<double>(f[0], line_no),
                         parse_field<std::uint64_t>(f[1], line_no),
                         parse_field<std::uint64_t>(f[2], line_no),
                         parse_field<std::uint64_t>(f[3], line_no),
                         parse_field<std::uint64_t>(f[4], line_no),
                         parse_field<double>(f[5], line_no), parse_field<double>(f[6], line_no)});
  }
  if (!header_seen) throw scenario::ConfigError("missing CSV header");
  return scan;
}

std::string meta_path(const std::string& csv_path) { return csv_path + ".meta.json"; }

namespace {

struct Panel {
  double top = 0.0;
  double height = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

constexpr double kWidth = 720.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;

std::string polyline(const CsvScan& scan, const Panel& panel, double x_lo, double x_hi,
                     auto value, const char* colour) {
  std::ostringstream pts;
  const double span_x = std::max(x_hi - x_lo, 1e-12);
  const double span_y = std::max(panel.hi - panel.lo, 1e-300);
  for (const auto& r : scan.rows) {
    const double x = kLeft + (r.delta_l_um - x_lo) / span_x * (kWidth - kLeft - kRight);
    const double y = panel.top + panel.height - (value(r) - panel.lo) / span_y * panel.height;
    fmt::print(pts, "{:.2f},{:.2f} ", x, y);
  }
  return fmt::format(
      "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"{}\"/>\n", colour,
      pts.str());
}

void frame(std::ostream& out, const Panel& p, const char* label) {
  fmt::print(out,
             "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
             kLeft, p.top, kWidth - kLeft - kRight, p.height);
  fmt::print(out, "<text x=\"{}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
             kLeft - 4, p.top + 10, p.hi);
  fmt::print(out, "<text x=\"{}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
             kLeft - 4, p.top + p.height, p.lo);
  fmt::print(out,
             "<text x=\"14\" y=\"{:.1f}\" font-size=\"12\" transform=\"rotate(-90 14 {:.1f})\" "
             "text-anchor=\"middle\">{}</text>\n",
             p.top + p.height / 2, p.top + p.height / 2, label);
}

}  // namespace

void write_plot_svg(std::ostream& out, const CsvScan& scan, const std::string& title) {
  if (scan.rows.empty()) throw scenario::ConfigError("nothing to plot");
  const auto [xmin, xmax] = std::minmax_element(
      scan.rows.begin(), scan.rows.end(),
      [](const CsvRow& a, const CsvRow& b) { return a.delta_l_um < b.delta_l_um; });
  const double x_lo = xmin->delta_l_um;
  const double x_hi = xmax->delta_l_um;

  auto singles_rate = [](std::uint64_t n, const CsvRow& r) {
    return r.trials == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(r.trials);
  };
  Panel singles{40.0, 200.0, std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
  Panel coinc{290.0, 200.0, 0.0, -std::numeric_limits<double>::infinity()};
  for (const auto& r : scan.rows) {
    for (const auto n : {r.singles_d1, r.singles_d2}) {
      singles.lo = std::min(singles.lo, singles_rate(n, r));
      singles.hi = std::max(singles.hi, singles_rate(n, r));
    }
    coinc.hi = std::max(coinc.hi, r.rate);
  }
  singles.lo = std::max(0.0, singles.lo - 0.1 * (singles.hi - singles.lo) - 1e-12);
  singles.hi = singles.hi + 0.1 * (singles.hi - singles.lo) + 1e-12;
  coinc.hi = coinc.hi * 1.1 + 1e-12;

  fmt::print(out,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"540\" "
             "font-family=\"sans-serif\">\n",
             kWidth);
  fmt::print(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  fmt::print(out, "<text x=\"{}\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
             kWidth / 2, title);
  frame(out, singles, "singles / trial");
  frame(out, coinc, "coincidences / trial");
  out << polyline(scan, singles, x_lo, x_hi,
                  [&](const CsvRow& r) { return singles_rate(r.singles_d1, r); }, "#1f5fbf");
  out << polyline(scan, singles, x_lo, x_hi,
                  [&](const CsvRow& r) { return singles_rate(r.singles_d2, r); }, "#c0392b");
  out << polyline(scan, coinc, x_lo, x_hi, [](const CsvRow& r) { return r.rate; }, "#222");
  fmt::print(out, "<text x=\"{}\" y=\"510\" font-size=\"11\">{:.4g}</text>\n", kLeft, x_lo);
  fmt::print(out, "<text x=\"{}\" y=\"510\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
             kWidth - kRight, x_hi);
  fmt::print(out, "<text x=\"{}\" y=\"530\" font-size=\"12\" text-anchor=\"middle\">"
                  "optical delay (um)</text>\n",
             kWidth / 2);
  if (std::isfinite(scan.visibility)) {
    fmt::print(out, "<text x=\"{}\" y=\"306\" font-size=\"12\">V = {:.3f} &#177; {:.3f}</text>\n",
               kLeft + 8, scan.visibility, scan.visibility_stderr);
  }
  out << "</svg>\n";
}

}  // namespace homsim::io
