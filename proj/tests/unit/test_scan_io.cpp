#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "homsim/scan_io.hpp"

using namespace homsim;
using namespace homsim::io;

namespace {

std::vector<sim::ScanPoint> tiny_scan() {
  std::vector<sim::ScanPoint> pts(2);
  pts[0].delta_l = Length::micrometers(-1.0);
  pts[0].singles_c = 60;
  pts[0].singles_d = 55;
  pts[0].coincidences = 3;
  pts[0].trials = 1000;
  pts[0].coincidence_rate_stderr = std::sqrt(0.003 * 0.997 / 1000.0);
  pts[1] = pts[0];
  pts[1].delta_l = Length::micrometers(0.5);
  pts[1].coincidences = 1;
  return pts;
}

}  // namespace

TEST_CASE("CSV layout") {
  std::ostringstream out;
  write_csv(out, tiny_scan(), std::nullopt);
  const std::string expected =
      "delta_l_um,singles_d1,singles_d2,coincidences,trials,rate,rate_stderr\n"
      "-1.000000,60,55,3,1000,0.003,0.00172945078\n"
      "0.500000,60,55,1,1000,0.001,0.00172945078\n"
      "# visibility=nan visibility_stderr=nan baseline_rate=nan floor_rate=nan "
      "dip_center_um=nan\n";
  CHECK(out.str() == expected);
}

TEST_CASE("summary line carries the estimate") {
  sim::VisibilityEstimate est;
  est.visibility = 0.5;
  est.standard_error = 0.0125;
  est.baseline_rate = 0.0034;
  est.floor_rate = 0.0017;
  std::ostringstream out;
  write_csv(out, tiny_scan(), est);
  CHECK(out.str().find("# visibility=0.500000 visibility_stderr=0.012500 baseline_rate=0.0034 "
                       "floor_rate=0.0017 dip_center_um=0.000000\n") != std::string::npos);
}

TEST_CASE("summarize needs a baseline") {
  const auto cfg = scenario::scenario_defaults(scenario::ScenarioName::hom_overlapped);
  CHECK_FALSE(summarize(tiny_scan(), cfg).has_value());
}

TEST_CASE("CSV round-trip") {
  sim::VisibilityEstimate est;
  est.visibility = 0.25;
  est.standard_error = 0.01;
  std::stringstream buf;
  write_csv(buf, tiny_scan(), est);
  const auto scan = read_csv(buf);
  REQUIRE(scan.rows.size() == 2);
  CHECK(scan.rows[0].delta_l_um == -1.0);
  CHECK(scan.rows[0].singles_d1 == 60);
  CHECK(scan.rows[1].coincidences == 1);
  CHECK(scan.rows[1].rate == 0.001);
  CHECK(scan.visibility == 0.25);
  CHECK(scan.visibility_stderr == 0.01);

  std::stringstream no_summary;
  write_csv(no_summary, tiny_scan(), std::nullopt);
  CHECK(std::isnan(read_csv(no_summary).visibility));
}

TEST_CASE("malformed CSV is rejected") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), scenario::ConfigError);
  std::istringstream wrong_header("a,b,c\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(wrong_header), scenario::ConfigError);
  std::istringstream short_row(std::string(kCsvHeader) + "\n1.0,2,3\n");
  CHECK_THROWS_AS(read_csv(short_row), scenario::ConfigError);
  std::istringstream bad_count(std::string(kCsvHeader) + "\n1.0,2,x,4,5,0.1,0.1\n");
  CHECK_THROWS_AS(read_csv(bad_count), scenario::ConfigError);
  std::istringstream negative(std::string(kCsvHeader) + "\n1.0,-2,3,4,5,0.1,0.1\n");
  CHECK_THROWS_AS(read_csv(negative), scenario::ConfigError);
}

TEST_CASE("side-car path") { CHECK(meta_path("out/scan.csv") == "out/scan.csv.meta.json"); }

TEST_CASE("SVG plot") {
  std::stringstream buf;
  write_csv(buf, tiny_scan(), std::nullopt);
  std::ostringstream svg;
  write_plot_svg(svg, read_csv(buf), "hom_overlapped");
  const std::string s = svg.str();
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("hom_overlapped") != std::string::npos);
  CHECK(s.find("<polyline") != std::string::npos);

  CHECK_THROWS_AS(write_plot_svg(svg, CsvScan{}, "x"), scenario::ConfigError);
}
