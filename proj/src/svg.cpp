#include "diachrona/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "diachrona/format.hpp"

namespace diachrona {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

constexpr double kMarginLeft = 70, kMarginRight = 24, kMarginTop = 40, kMarginBottom = 52;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#2ca02c", "#d62728",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {
      lo = 0;
      hi = 1;
    } else if (lo == hi) {
      lo -= 1;
      hi += 1;
    }
  }
};

double nice_step(double span) {
  double raw = span / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double f = raw / mag;
  double nice = f < 1.5 ? 1 : f < 3 ? 2 : f < 7 ? 5 : 10;
  return nice * mag;
}

std::vector<double> ticks(Extent& e) {
  double step = nice_step(e.hi - e.lo);
  e.lo = std::floor(e.lo / step) * step;
  e.hi = std::ceil(e.hi / step) * step;
  std::vector<double> out;
  for (double t = e.lo; t <= e.hi + step * 1e-9; t += step)
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return out;
}

std::string tick_text(double v, double step) {
  int digits = step >= 1 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
  return format_fixed(v, std::min(digits, 6));
}

class Frame {
 public:
  Frame(const PlotSpec& spec, Extent x, Extent y) : spec_(spec), x_(x), y_(y) {}

  double px(double v) const {
    double w = spec_.width - kMarginLeft - kMarginRight;
    return kMarginLeft + (v - x_.lo) / (x_.hi - x_.lo) * w;
  }
  double py(double v) const {
    double h = spec_.height - kMarginTop - kMarginBottom;
    return spec_.height - kMarginBottom - (v - y_.lo) / (y_.hi - y_.lo) * h;
  }

 private:
  const PlotSpec& spec_;
  Extent x_, y_;
};

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string emit_svg(const PlotSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0)
    throw std::invalid_argument("plot dimensions must be positive");

  Extent xe, ye;
  if (spec.kind == PlotSpec::Kind::Series) {
    for (const auto& c : spec.curves)
      for (auto [x, y] : c.points)
        if (std::isfinite(y)) {
          xe.add(x);
          ye.add(y);
        }
    if (ye.lo > 0 && ye.lo <= ye.hi) ye.lo = 0;  // counts read best from zero
  } else {
    for (const auto& p : spec.points) {
      xe.add(p.x);
      ye.add(p.y);
    }
  }
  xe.finish();
  ye.finish();
  auto xticks = ticks(xe);
  auto yticks = ticks(ye);
  double xstep = xticks.size() > 1 ? xticks[1] - xticks[0] : 1;
  double ystep = yticks.size() > 1 ? yticks[1] - yticks[0] : 1;
  Frame f(spec, xe, ye);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
       "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
       std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    s += "<text class=\"title\" x=\"" + num(spec.width / 2.0) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         xml_escape(spec.title) + "</text>\n";

  // axes frame and ticks
  const double x0 = f.px(xe.lo), x1 = f.px(xe.hi), y0 = f.py(ye.lo), y1 = f.py(ye.hi);
  s += "<g class=\"axes\" stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" +
       num(y0) + "\"/>\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
       num(y1) + "\"/>\n";
  for (double t : xticks)
    s += "<line x1=\"" + num(f.px(t)) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(f.px(t)) +
         "\" y2=\"" + num(y0 + 5) + "\"/>\n";
  for (double t : yticks)
    s += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + num(f.py(t)) + "\" x2=\"" + num(x0) +
         "\" y2=\"" + num(f.py(t)) + "\"/>\n";
  if (spec.kind == PlotSpec::Kind::Scatter) {
    if (xe.lo < 0 && xe.hi > 0)
      s += "<line stroke-dasharray=\"4 3\" stroke=\"#999\" x1=\"" + num(f.px(0)) + "\" y1=\"" +
           num(y0) + "\" x2=\"" + num(f.px(0)) + "\" y2=\"" + num(y1) + "\"/>\n";
    if (ye.lo < 0 && ye.hi > 0)
      s += "<line stroke-dasharray=\"4 3\" stroke=\"#999\" x1=\"" + num(x0) + "\" y1=\"" +
           num(f.py(0)) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(f.py(0)) + "\"/>\n";
  }
  s += "</g>\n";
  s += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : xticks)
    s += "<text class=\"tick\" x=\"" + num(f.px(t)) + "\" y=\"" + num(y0 + 18) +
         "\" text-anchor=\"middle\">" + tick_text(t, xstep) + "</text>\n";
  for (double t : yticks)
    s += "<text class=\"tick\" x=\"" + num(x0 - 8) + "\" y=\"" + num(f.py(t) + 4) +
         "\" text-anchor=\"end\">" + tick_text(t, ystep) + "</text>\n";
  s += "</g>\n";
  if (!spec.x_label.empty())
    s += "<text class=\"axis-label\" x=\"" + num((x0 + x1) / 2) + "\" y=\"" +
         num(spec.height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         xml_escape(spec.x_label) + "</text>\n";
  if (!spec.y_label.empty())
    s += "<text class=\"axis-label\" x=\"16\" y=\"" + num((y0 + y1) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num((y0 + y1) / 2) +
         ")\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(spec.y_label) +
         "</text>\n";

  if (spec.kind == PlotSpec::Kind::Series) {
    for (std::size_t i = 0; i < spec.curves.size(); ++i) {
      const auto& c = spec.curves[i];
      const char* color = kPalette[i % kPalette.size()];
      std::string pts;
      for (auto [x, y] : c.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (!pts.empty()) pts += ' ';
        pts += num(f.px(x)) + "," + num(f.py(y));
      }
      s += "<polyline class=\"curve\" fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      if (!c.name.empty())
        s += "<text class=\"legend\" x=\"" + num(x1 - 4) + "\" y=\"" +
             num(kMarginTop + 14.0 * static_cast<double>(i + 1)) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
             color + "\">" + xml_escape(c.name) + "</text>\n";
    }
  } else {
    s += "<g class=\"points\">\n";
    for (const auto& p : spec.points) {
      s += "<circle cx=\"" + num(f.px(p.x)) + "\" cy=\"" + num(f.py(p.y)) +
           "\" r=\"3\" fill=\"#1f77b4\"/>\n";
      s += "<text class=\"label\" x=\"" + num(f.px(p.x) + 5) + "\" y=\"" +
           num(f.py(p.y) - 5) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(p.label) + "</text>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace diachrona
