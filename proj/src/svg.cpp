#include "corplex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "corplex/error.hpp"

namespace corplex::svg {

namespace {

constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* dasharray(Stroke s) {
  switch (s) {
    case Stroke::dashed: return " stroke-dasharray=\"8,5\"";
    case Stroke::dotted: return " stroke-dasharray=\"2,4\"";
    case Stroke::solid: break;
  }
  return "";
}

struct Frame {
  double x0, x1, y0, y1;
  double width, height;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (width - kLeft - kRight); }
  double py(double y) const { return height - kBottom - (y - y0) / (y1 - y0) * (height - kTop - kBottom); }
};

void header(std::string& out, const Chart& c) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(c.width) +
         "\" height=\"" + std::to_string(c.height) + "\" viewBox=\"0 0 " + std::to_string(c.width) + " " +
         std::to_string(c.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(c.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(c.title) + "</text>\n";
}

void axes(std::string& out, const Chart& c, const Frame& f, const std::vector<double>& xt,
          const std::vector<double>& yt) {
  const double bottom = c.height - kBottom, right = c.width - kRight;
  out += "<g stroke=\"#000\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) + "\" y2=\"" + num(bottom) + "\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(bottom) + "\"/>\n";
  for (double t : xt) {
    const double x = f.px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(x) + "\" y2=\"" + num(bottom + 5) + "\"/>\n";
  }
  for (double t : yt) {
    const double y = f.py(t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) + "\"/>\n";
  }
  out += "</g>\n";
  for (double t : xt) {
    out += "<text x=\"" + num(f.px(t)) + "\" y=\"" + num(bottom + 18) + "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : yt) {
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(f.py(t) + 4) + "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
  }
  out += "<text x=\"" + num((kLeft + right) / 2) + "\" y=\"" + num(c.height - 12.0) + "\" text-anchor=\"middle\">" +
         escape(c.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + num((kTop + bottom) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(c.y_label) + "</text>\n";
}

void legend(std::string& out, const Chart& c, const std::vector<std::pair<std::string, std::string>>& entries,
            const std::vector<Stroke>& strokes) {
  double y = kTop + 10;
  const double x = c.width - kRight - 190;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Stroke s = i < strokes.size() ? strokes[i] : Stroke::solid;
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 28) + "\" y2=\"" + num(y) +
           "\" stroke=\"" + entries[i].second + "\" stroke-width=\"2\"" + dasharray(s) + "/>\n";
    out += "<text x=\"" + num(x + 34) + "\" y=\"" + num(y + 4) + "\">" + escape(entries[i].first) + "</text>\n";
    y += 16;
  }
}

}  // namespace

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  if (v == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::string line_chart(const Chart& chart, const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) throw RenderError("chart '" + chart.title + "' has no finite data");
  if (chart.y_from_zero) y0 = std::min(0.0, y0);
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double ypad = 0.04 * (y1 - y0);
  y1 += ypad;
  if (!chart.y_from_zero) y0 -= ypad;
  const Frame f{x0, x1, y0, y1, static_cast<double>(chart.width), static_cast<double>(chart.height)};

  std::string out;
  header(out, chart);
  axes(out, chart, f, nice_ticks(x0, x1), nice_ticks(y0, y1));
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<Stroke> strokes;
  for (const auto& s : series) {
    std::string pts;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(f.px(x)) + "," + num(f.py(y));
    }
    if (pts.empty()) continue;
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\"" + dasharray(s.stroke) +
           " points=\"" + pts + "\"/>\n";
    if (!s.label.empty()) {
      entries.emplace_back(s.label, s.color);
      strokes.push_back(s.stroke);
    }
  }
  legend(out, chart, entries, strokes);
  out += "</svg>\n";
  return out;
}

std::string bar_chart(const Chart& chart, const std::vector<std::string>& categories,
                      const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                      const std::vector<std::string>& colors) {
  if (categories.empty() || groups.empty()) throw RenderError("bar chart '" + chart.title + "' has no data");
  double y1 = 0;
  for (const auto& [name, values] : groups) {
    if (values.size() != categories.size()) throw RenderError("bar chart '" + chart.title + "': series '" + name + "' does not match the categories");
    for (double v : values) y1 = std::max(y1, std::isfinite(v) ? v : 0.0);
  }
  if (y1 <= 0) y1 = 1;
  y1 *= 1.05;
  const double width = chart.width, height = chart.height;
  const double plot_w = width - kLeft - kRight;
  const double slot = plot_w / static_cast<double>(categories.size());
  const double bar_w = slot * 0.8 / static_cast<double>(groups.size());
  const Frame f{0, 1, 0, y1, width, height};

  std::string out;
  header(out, chart);
  axes(out, chart, f, {}, nice_ticks(0, y1));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double left = kLeft + slot * static_cast<double>(c) + slot * 0.1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double v = std::isfinite(groups[g].second[c]) ? groups[g].second[c] : 0.0;
      const double top = f.py(v);
      out += "<rect x=\"" + num(left + bar_w * static_cast<double>(g)) + "\" y=\"" + num(top) + "\" width=\"" +
             num(bar_w) + "\" height=\"" + num(f.py(0) - top) + "\" fill=\"" + colors[g % colors.size()] + "\"/>\n";
    }
    out += "<text x=\"" + num(kLeft + slot * (static_cast<double>(c) + 0.5)) + "\" y=\"" + num(height - kBottom + 18) +
           "\" text-anchor=\"middle\">" + escape(categories[c]) + "</text>\n";
  }
  std::vector<std::pair<std::string, std::string>> entries;
  for (std::size_t g = 0; g < groups.size(); ++g) entries.emplace_back(groups[g].first, colors[g % colors.size()]);
  legend(out, chart, entries, {});
  out += "</svg>\n";
  return out;
}

}  // namespace corplex::svg
