#include "qbandit/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qbandit/harness/csv.hpp"

namespace qbandit {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-2)) {
    std::snprintf(buf, sizeof buf, "%.0e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", v);
  }
  return buf;
}

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

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r <= 1.0 ? 1.0 : r <= 2.0 ? 2.0 : r <= 5.0 ? 5.0 : 10.0) * mag;
}

}  // namespace

std::string render_svg(const AggregateResult& result, const PlotOptions& options) {
  bool any = false;
  for (const auto& a : result.algorithms) any = any || !a.series.empty();
  if (!any) throw std::invalid_argument("cannot plot an empty result");

  const double W = options.width;
  const double H = options.height;
  const double left = 80, right = 170, top = 40, bottom = 60;
  const double pw = W - left - right;
  const double ph = H - top - bottom;

  double t_min = 0, t_max = 0, y_max = 0;
  bool first = true;
  for (const auto& a : result.algorithms) {
    for (const auto& p : a.series) {
      const double t = static_cast<double>(p.t);
      if (first) {
        t_min = t_max = t;
        first = false;
      }
      t_min = std::min(t_min, t);
      t_max = std::max(t_max, t);
      y_max = std::max(y_max, p.mean + p.stddev);
    }
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  const double y_step = nice_step(y_max, 5);
  y_max = std::ceil(y_max / y_step) * y_step;

  double x_lo = options.log_t ? std::log10(std::max(t_min, 1.0)) : 0.0;
  double x_hi = options.log_t ? std::log10(std::max(t_max, 1.0)) : t_max;
  if (options.log_t) {
    x_lo = std::floor(x_lo);
    x_hi = std::max(std::ceil(x_hi), x_lo + 1.0);
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;

  auto px = [&](double t) {
    const double x = options.log_t ? std::log10(std::max(t, 1.0)) : t;
    return left + (x - x_lo) / (x_hi - x_lo) * pw;
  };
  auto py = [&](double y) { return top + ph - std::clamp(y, 0.0, y_max) / y_max * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
       "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(options.title) + "</text>\n";

  // Grid and ticks.
  for (double y = 0; y <= y_max + 1e-9 * y_max; y += y_step) {
    s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" + fmt(left + pw) +
         "\" y2=\"" + fmt(py(y)) + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(py(y) + 4) +
         "\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
  }
  if (options.log_t) {
    for (double e = x_lo; e <= x_hi + 1e-9; e += 1.0) {
      const double x = left + (e - x_lo) / (x_hi - x_lo) * pw;
      s += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(top + ph) + "\" stroke=\"#e0e0e0\"/>\n";
      s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(top + ph + 18) +
           "\" text-anchor=\"middle\">1e" + std::to_string(static_cast<int>(e)) + "</text>\n";
    }
  } else {
    const double x_step = nice_step(x_hi - x_lo, 5);
    for (double t = 0; t <= x_hi + 1e-9 * x_hi; t += x_step) {
      s += "<line x1=\"" + fmt(px(t)) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(px(t)) +
           "\" y2=\"" + fmt(top + ph) + "\" stroke=\"#e0e0e0\"/>\n";
      s += "<text x=\"" + fmt(px(t)) + "\" y=\"" + fmt(top + ph + 18) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
    }
  }
  s += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) +
       "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(H - 16) +
       "\" text-anchor=\"middle\">t" + std::string(options.log_t ? " (log scale)" : "") +
       "</text>\n";
  s += "<text transform=\"translate(20 " + fmt(top + ph / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">cumulative regret</text>\n";

  std::size_t colour = 0;
  for (const auto& a : result.algorithms) {
    const char* c = kPalette[colour++ % std::size(kPalette)];
    if (a.series.empty()) continue;
    std::string band;
    for (const auto& p : a.series) {
      band += fmt(px(static_cast<double>(p.t))) + "," + fmt(py(p.mean + p.stddev)) + " ";
    }
    for (auto it = a.series.rbegin(); it != a.series.rend(); ++it) {
      band += fmt(px(static_cast<double>(it->t))) + "," + fmt(py(it->mean - it->stddev)) + " ";
    }
    band.pop_back();
    s += "<polygon points=\"" + band + "\" fill=\"" + c + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    std::string line;
    for (const auto& p : a.series) {
      line += fmt(px(static_cast<double>(p.t))) + "," + fmt(py(p.mean)) + " ";
    }
    line.pop_back();
    s += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + c +
         "\" stroke-width=\"2\"/>\n";
  }

  // Legend.
  colour = 0;
  double ly = top + 10;
  for (const auto& a : result.algorithms) {
    const char* c = kPalette[colour++ % std::size(kPalette)];
    const double lx = left + pw + 15;
    s += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 24) + "\" y2=\"" +
         fmt(ly) + "\" stroke=\"" + c + "\" stroke-width=\"3\"/>\n";
    s += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(a.label) +
         "</text>\n";
    ly += 20;
  }
  s += "</svg>\n";
  return s;
}

void emit_plot(const AggregateResult& result, const std::string& path,
               const PlotOptions& options) {
  write_file_atomic(path, render_svg(result, options));
}

}  // namespace qbandit
