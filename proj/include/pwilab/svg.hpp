#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/embedding.hpp"
#include "pwilab/pwi.hpp"

namespace pwilab {

struct PlotStyle {
  double marker_radius = 0.3;  // viewport units
  int viewport = 1000;
};

namespace detail {

struct Frame {
  double xmin, xmax, ymin, ymax;
  int viewport;

  double sx(double x) const {
    return (x - xmin) / (xmax - xmin) * viewport;
  }
  double sy(double y) const {
    return (1.0 - (y - ymin) / (ymax - ymin)) * viewport;
  }
};

inline void emit_points(std::ostringstream& out, const Frame& fr,
                        const std::vector<Complex>& pts, double radius) {
  for (Complex p : pts)
    out << "<circle cx=\"" << fr.sx(p.real()) << "\" cy=\"" << fr.sy(p.imag())
        << "\" r=\"" << radius << "\" fill=\"#1f4e79\"/>\n";
}

}  // namespace detail

/// Standalone SVG scatter plot of orbit points; when a PWI is supplied its
/// half-plane boundaries are drawn as lines clipped by the viewport.
inline std::string render_scatter(const std::vector<Complex>& points,
                                  const Pwi* pwi = nullptr,
                                  PlotStyle style = {}) {
  if (points.empty()) throw EmptyInputError("no points to plot");
  double xmin = points[0].real(), xmax = xmin;
  double ymin = points[0].imag(), ymax = ymin;
  for (Complex p : points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double padx = std::max(1e-9, (xmax - xmin) * 0.05);
  const double pady = std::max(1e-9, (ymax - ymin) * 0.05);
  detail::Frame fr{xmin - padx, xmax + padx, ymin - pady, ymax + pady,
                   style.viewport};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.viewport
      << "\" height=\"" << style.viewport << "\" viewBox=\"0 0 "
      << style.viewport << ' ' << style.viewport << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (pwi) {
    // Each half-plane boundary is the line anchor + t e^{-i phi}; a
    // segment much longer than the data diagonal is enough, the viewport
    // clips the rest.
    const double reach =
        4.0 * std::max(fr.xmax - fr.xmin, fr.ymax - fr.ymin);
    for (int i = 1; i <= pwi->atom_count(); ++i)
      for (const HalfPlane& h : pwi->atom(i).constraints()) {
        const Complex dir = unit_phase(-h.phi);
        const Complex a = h.anchor - reach * dir;
        const Complex b = h.anchor + reach * dir;
        out << "<line x1=\"" << fr.sx(a.real()) << "\" y1=\""
            << fr.sy(a.imag()) << "\" x2=\"" << fr.sx(b.real()) << "\" y2=\""
            << fr.sy(b.imag())
            << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
      }
  }
  detail::emit_points(out, fr, points, style.marker_radius);
  out << "</svg>\n";
  return out.str();
}

/// Cylinder plot of a tangent-map orbit on the fixed rectangle
/// [0, |I|] x [0, 2 pi).
inline std::string render_cylinder(const std::vector<TangentState>& states,
                                   double total_length, PlotStyle style = {}) {
  if (states.empty()) throw EmptyInputError("no points to plot");
  detail::Frame fr{0.0, total_length, 0.0, kTwoPi, style.viewport};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.viewport
      << "\" height=\"" << style.viewport << "\" viewBox=\"0 0 "
      << style.viewport << ' ' << style.viewport << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::vector<Complex> pts;
  pts.reserve(states.size());
  for (const TangentState& s : states) pts.emplace_back(s.x, s.y);
  detail::emit_points(out, fr, pts, style.marker_radius);
  out << "</svg>\n";
  return out.str();
}

inline void write_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << svg;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace pwilab
