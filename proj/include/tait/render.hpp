#pragma once

// SVG figures: a curve and a fan of its osculating conics.
//
// Output uses only <path>, <line>, <rect> and <text>. Coordinates are printed
// with 9 significant digits so that identical input gives identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tait/conics.hpp"
#include "tait/curves.hpp"
#include "tait/error.hpp"
#include "tait/family.hpp"
#include "tait/oracle.hpp"
#include "tait/osculate.hpp"

namespace tait {

struct Viewport {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
};

struct RenderStyle {
  std::optional<Viewport> viewport;  // auto when empty
  int width_px = 640;
  int height_px = 480;
  std::string background = "white";
  std::string curve_color = "black";
  std::string conic_color = "#808080";
  std::string accent_color = "#b03030";
  double curve_stroke = 2.0;
  double conic_stroke = 0.8;
  int conic_count = 12;
  bool axes = false;
  std::string title;
};

struct RenderResult {
  std::string svg;
  std::vector<std::string> warnings;
};

inline constexpr int render_points_per_branch = 512;

namespace detail {

inline std::string fmt9(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

using Polyline = std::vector<Point2>;

// Curve samples, split wherever evaluation fails.
inline std::vector<Polyline> sample_curve(const ParamCurve& c, int n) {
  std::vector<Polyline> out(1);
  for (int i = 0; i < n; ++i) {
    const double t = c.t0 + (c.t1 - c.t0) * i / (n - 1);
    try {
      const Point2 p = point_at(c, t);
      if (std::isfinite(p.x) && std::isfinite(p.y)) {
        out.back().push_back(p);
        continue;
      }
    } catch (const DomainError&) {
    }
    if (!out.back().empty()) out.emplace_back();
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

// Branches of a conic as dense point lists, open ends excluded.
inline std::vector<Polyline> sample_conic(const ConicElement& c, int n) {
  std::vector<Polyline> out;
  if (c.family == Family::kepler) {
    // 1/r = D(θ); where D < 0 the point lands on the opposite ray, which is
    // the second branch of a hyperbola. Branches break where D changes sign.
    Polyline cur;
    const int m = 2 * n;
    double prev = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double th = 2 * std::numbers::pi * i / m;
      const double d = kepler_denominator(c, th);
      if (i > 0 && (d > 0) != (prev > 0) && !cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
      prev = d;
      if (std::abs(d) > 1e-12) cur.push_back({std::cos(th) / d, std::sin(th) / d});
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
  }
  const BoundaryWalk w = boundary_walk(c);
  for (const Branch& b : w.branches) {
    Polyline pl;
    const int first = b.open ? 1 : 0, last = b.open ? n - 1 : n;
    for (int i = first; i <= last; ++i) {
      const double phi = b.lo + (b.hi - b.lo) * i / n;
      if (const auto p = w.point(phi); p && std::isfinite(p->x) && std::isfinite(p->y)) pl.push_back(*p);
    }
    if (!pl.empty()) out.push_back(std::move(pl));
  }
  return out;
}

struct Canvas {
  Viewport box;
  double scale = 1.0;
  double width = 0.0, height = 0.0;
  double cx = 0.0, cy = 0.0;

  bool contains(Point2 p) const {
    return p.x >= box.xmin && p.x <= box.xmax && p.y >= box.ymin && p.y <= box.ymax;
  }
  double px(double x) const { return width / 2 + (x - cx) * scale; }
  double py(double y) const { return height / 2 - (y - cy) * scale; }
};

// Path data for the parts of `lines` inside the canvas box.
inline std::string path_data(const std::vector<Polyline>& lines, const Canvas& cv) {
  std::string d;
  for (const auto& pl : lines) {
    bool pen_down = false;
    for (const Point2& p : pl) {
      if (!cv.contains(p)) {
        pen_down = false;
        continue;
      }
      if (!d.empty()) d += ' ';
      d += pen_down ? "L" : "M";
      d += fmt9(cv.px(p.x)) + ',' + fmt9(cv.py(p.y));
      pen_down = true;
    }
  }
  return d;
}

}  // namespace detail

inline RenderResult render_svg(const ParamCurve& curve, const std::vector<ConicElement>& elements,
                               const RenderStyle& style) {
  if (!(curve.t0 < curve.t1)) throw InputError("curve domain is empty");
  if (style.width_px < 64 || style.height_px < 64) throw InputError("image must be at least 64x64 pixels");
  for (const auto& e : elements) {
    require_same_family(elements.front(), e);
    validate_conic(e);
  }

  const auto curve_lines = detail::sample_curve(curve, render_points_per_branch);

  Viewport box;
  if (style.viewport) {
    box = *style.viewport;
  } else {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& pl : curve_lines)
      for (const Point2& p : pl) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
      }
    if (!(x0 <= x1)) throw InputError("empty viewport: the curve has no finite points");
    double dx = x1 - x0, dy = y1 - y0;
    if (dx == 0.0 && dy == 0.0) throw InputError("empty viewport: the curve is a single point");
    if (dx == 0.0) dx = dy;
    if (dy == 0.0) dy = dx;
    const double mx = 0.5 * (x0 + x1), my = 0.5 * (y0 + y1);
    box = {mx - 0.7 * dx, mx + 0.7 * dx, my - 0.7 * dy, my + 0.7 * dy};
  }
  if (!(box.xmin < box.xmax && box.ymin < box.ymax)) throw InputError("empty viewport");

  detail::Canvas cv;
  cv.box = box;
  cv.width = style.width_px;
  cv.height = style.height_px;
  cv.scale = std::min(cv.width / (box.xmax - box.xmin), cv.height / (box.ymax - box.ymin));
  cv.cx = 0.5 * (box.xmin + box.xmax);
  cv.cy = 0.5 * (box.ymin + box.ymax);

  RenderResult res;
  std::string& s = res.svg;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(style.width_px) +
       "\" height=\"" + std::to_string(style.height_px) + "\" viewBox=\"0 0 " + std::to_string(style.width_px) +
       ' ' + std::to_string(style.height_px) + "\">\n";
  s += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width_px) + "\" height=\"" +
       std::to_string(style.height_px) + "\" fill=\"" + detail::xml_escape(style.background) + "\"/>\n";

  if (style.axes) {
    const std::string stroke = "\" stroke=\"" + detail::xml_escape(style.accent_color) + "\" stroke-width=\"0.5\"/>\n";
    if (box.ymin <= 0 && 0 <= box.ymax)
      s += "  <line x1=\"0\" y1=\"" + detail::fmt9(cv.py(0)) + "\" x2=\"" + std::to_string(style.width_px) +
           "\" y2=\"" + detail::fmt9(cv.py(0)) + stroke;
    if (box.xmin <= 0 && 0 <= box.xmax)
      s += "  <line x1=\"" + detail::fmt9(cv.px(0)) + "\" y1=\"0\" x2=\"" + detail::fmt9(cv.px(0)) + "\" y2=\"" +
           std::to_string(style.height_px) + stroke;
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string d = detail::path_data(detail::sample_conic(elements[i], render_points_per_branch), cv);
    if (d.empty()) {
      res.warnings.push_back("conic " + std::to_string(i) + " is outside the viewport; skipped");
      continue;
    }
    s += "  <path d=\"" + d + "\" fill=\"none\" stroke=\"" + detail::xml_escape(style.conic_color) +
         "\" stroke-width=\"" + detail::fmt9(style.conic_stroke) + "\"/>\n";
  }

  const std::string curve_d = detail::path_data(curve_lines, cv);
  if (curve_d.empty()) throw InputError("empty viewport: the curve lies outside it");
  s += "  <path d=\"" + curve_d + "\" fill=\"none\" stroke=\"" + detail::xml_escape(style.curve_color) +
       "\" stroke-width=\"" + detail::fmt9(style.curve_stroke) + "\"/>\n";

  if (!style.title.empty())
    s += "  <text x=\"8\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" +
         detail::xml_escape(style.curve_color) + "\">" + detail::xml_escape(style.title) + "</text>\n";
  s += "</svg>\n";
  return res;
}

// Osculating conics at `count` evenly spaced interior parameters. Points
// where the family does not osculate are skipped with a warning.
inline std::vector<ConicElement> osculating_fan(const ParamCurve& c, Family family, int count,
                                                std::vector<std::string>* warnings = nullptr) {
  std::vector<ConicElement> out;
  for (int i = 0; i < count; ++i) {
    const double t = c.t0 + (c.t1 - c.t0) * (i + 0.5) / count;
    try {
      ConicElement e = osculating_element(c, family, t);
      validate_conic(e);
      out.push_back(e);
    } catch (const Error& err) {
      if (warnings) warnings->push_back(std::string("no osculating conic at t=") + detail::fmt9(t) + ": " + err.what());
    }
  }
  return out;
}

inline RenderResult render_fan(const ParamCurve& c, Family family, const RenderStyle& style) {
  std::vector<std::string> warnings;
  const auto elements = osculating_fan(c, family, style.conic_count, &warnings);
  RenderResult r = render_svg(c, elements, style);
  r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
  return r;
}

}  // namespace tait
