#pragma once

#include <string>
#include <utility>
#include <vector>

// Dependency-free SVG 1.1 line and bar charts. Output is a pure function of
// the inputs: coordinates are printed with fixed precision.
namespace corplex::svg {

enum class Stroke { solid, dashed, dotted };

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  Stroke stroke = Stroke::solid;
};

struct Bar {
  std::string label;
  double value = 0;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 450;
  /// Forces the y axis to start at zero.
  bool y_from_zero = false;
};

/// Throws RenderError if no series has a finite point.
std::string line_chart(const Chart& chart, const std::vector<Series>& series);

/// Bars for each group side by side; `groups[g]` holds one bar per category.
/// Throws RenderError on empty input or mismatched category counts.
std::string bar_chart(const Chart& chart, const std::vector<std::string>& categories,
                      const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                      const std::vector<std::string>& colors);

/// "1", "2.5", "1e+06" style tick labels.
std::string tick_label(double v);

/// Escapes &, <, >, " for text and attributes.
std::string escape(const std::string& s);

/// Roughly `target` evenly spaced round values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace corplex::svg
