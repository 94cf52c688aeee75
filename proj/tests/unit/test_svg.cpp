#include <cmath>
#include <string>

#include "corplex/error.hpp"
#include "corplex/svg.hpp"
#include "doctest.h"

using namespace corplex;

namespace {

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("svg") {
  TEST_CASE("line chart strokes and legend") {
    svg::Chart c{"V & N", "N", "V", 720, 450, true};
    std::vector<svg::Series> s{{"observed", {{1, 1}, {2, 2}}, "#000", svg::Stroke::dotted},
                               {"interpolated", {{1, 1}, {2, 1.5}}, "#111", svg::Stroke::solid},
                               {"extrapolated", {{2, 1.5}, {4, 2}}, "#222", svg::Stroke::dashed}};
    const auto out = svg::line_chart(c, s);
    CHECK(out.rfind("<?xml", 0) == 0);
    CHECK(out.find("<svg ") != std::string::npos);
    CHECK(out.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(out.find("V &amp; N") != std::string::npos);
    CHECK(occurrences(out, "<polyline") == 3);
    CHECK(occurrences(out, "stroke-dasharray=\"2,4\"") == 2);  // line and legend swatch
    CHECK(occurrences(out, "stroke-dasharray=\"8,5\"") == 2);
    CHECK(out == svg::line_chart(c, s));
  }

  TEST_CASE("non-finite points are skipped; all non-finite is an error") {
    svg::Chart c{"t", "x", "y"};
    CHECK_NOTHROW(svg::line_chart(c, {{"a", {{0, 1}, {1, NAN}}, "#000", svg::Stroke::solid}}));
    CHECK_THROWS_AS(svg::line_chart(c, {{"a", {{0, NAN}}, "#000", svg::Stroke::solid}}), RenderError);
    CHECK_THROWS_AS(svg::line_chart(c, {}), RenderError);
  }

  TEST_CASE("bar chart") {
    svg::Chart c{"levels", "level", "count"};
    const auto out = svg::bar_chart(c, {"0", "1", "2"}, {{"A", {1, 2, 3}}, {"B", {3, 2, 1}}}, {"#a00", "#00a"});
    CHECK(occurrences(out, "<rect") >= 6);
    CHECK_THROWS_AS(svg::bar_chart(c, {"0", "1"}, {{"A", {1}}}, {"#000"}), RenderError);
    CHECK_THROWS_AS(svg::bar_chart(c, {}, {}, {"#000"}), RenderError);
  }

  TEST_CASE("ticks and labels") {
    auto t = svg::nice_ticks(0, 1, 5);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == doctest::Approx(1.0));
    CHECK(t.size() == 6);
    CHECK(svg::tick_label(0) == "0");
    CHECK(svg::tick_label(2.5) == "2.5");
    CHECK(svg::tick_label(1e6) == "1e+06");
    CHECK(svg::escape("<a \"b\">") == "&lt;a &quot;b&quot;&gt;");
  }
}
