#include "mbook/draw.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mbook {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

struct Point {
  double x;
  double y;
};

// Screen coordinates: y grows downward, so counter-clockwise means
// subtracting the sine.
Point vertex_point(int position, int n, double cx, double cy, double radius) {
  const double angle = 2.0 * std::numbers::pi * position / n;
  return {cx + radius * std::cos(angle), cy - radius * std::sin(angle)};
}

}  // namespace

StrokeStyle page_style(Page p, const std::map<Page, std::string>& color_names) {
  auto it = color_names.find(p);
  if (it != color_names.end()) {
    const std::string& name = it->second;
    if (name == "red") return {"#d62728", 2.0, ""};
    if (name == "black") return {"#000000", 1.0, "6,4"};
    if (name == "green") return {"#2ca02c", 3.0, "8,4"};
    if (name == "blue") return {"#1f77b4", 1.5, "10,3,2,3,4,3"};
    if (name == "purple") return {"#9467bd", 1.0, ""};
  }
  static const StrokeStyle palette[] = {
      {"#d62728", 2.0, ""},           {"#000000", 1.0, "6,4"},
      {"#2ca02c", 3.0, "8,4"},        {"#1f77b4", 1.5, "10,3,2,3,4,3"},
      {"#9467bd", 1.0, ""},           {"#ff7f0e", 1.5, "2,2"},
      {"#8c564b", 2.0, "12,4"},       {"#17becf", 1.0, "4,2,1,2"},
  };
  return palette[(p - 1) % std::size(palette)];
}

std::string draw_svg(const BookEmbedding& embedding,
                     const std::map<Page, std::string>& color_names) {
  const CyclicLayout& layout = embedding.layout();
  const int n = layout.size();
  const double size = 480.0;
  const double c = size / 2;
  const double radius = size / 2 - 40;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size)
     << "\" height=\"" << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " "
     << fmt(size) << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Page p = 1; p <= embedding.pages(); ++p) {
    const StrokeStyle style = page_style(p, color_names);
    os << "  <g class=\"page\" data-page=\"" << p << "\" stroke=\"" << style.color
       << "\" stroke-width=\"" << fmt(style.width) << "\" fill=\"none\"";
    if (!style.dash.empty()) os << " stroke-dasharray=\"" << style.dash << "\"";
    os << ">\n";
    for (const Edge& e : embedding.page_edges(p)) {
      const Point a = vertex_point(layout.position(e.u), n, c, c, radius);
      const Point b = vertex_point(layout.position(e.v), n, c, c, radius);
      os << "    <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\""
         << fmt(b.x) << "\" y2=\"" << fmt(b.y) << "\"/>\n";
    }
    os << "  </g>\n";
  }
  os << "  <g class=\"vertices\" font-family=\"sans-serif\" font-size=\"12\" "
        "text-anchor=\"middle\">\n";
  for (int pos = 0; pos < n; ++pos) {
    const Point pt = vertex_point(pos, n, c, c, radius);
    const Point label = vertex_point(pos, n, c, c, radius + 18);
    os << "    <circle cx=\"" << fmt(pt.x) << "\" cy=\"" << fmt(pt.y)
       << "\" r=\"4\" fill=\"black\"/>\n";
    os << "    <text x=\"" << fmt(label.x) << "\" y=\"" << fmt(label.y + 4) << "\">"
       << layout.at(pos) << "</text>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

std::string draw_dot(const BookEmbedding& embedding,
                     const std::map<Page, std::string>& color_names) {
  const CyclicLayout& layout = embedding.layout();
  const int n = layout.size();
  const double radius = 3.0;  // inches
  std::ostringstream os;
  os << "graph embedding {\n";
  os << "  layout=neato;\n  node [shape=circle, width=0.3, fixedsize=true];\n";
  for (int pos = 0; pos < n; ++pos) {
    // DOT y grows upward, so the plain angle is already counter-clockwise.
    const double angle = 2.0 * std::numbers::pi * pos / n;
    os << "  " << layout.at(pos) << " [pos=\"" << fmt(radius * std::cos(angle)) << ","
       << fmt(radius * std::sin(angle)) << "!\"];\n";
  }
  for (Page p = 1; p <= embedding.pages(); ++p) {
    const StrokeStyle style = page_style(p, color_names);
    for (const Edge& e : embedding.page_edges(p)) {
      os << "  " << e.u << " -- " << e.v << " [color=\"" << style.color
         << "\", penwidth=" << fmt(style.width)
         << ", style=" << (style.dash.empty() ? "solid" : "dashed") << ", page=" << p
         << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mbook
