#pragma once

#include <map>
#include <string>

#include "mbook/embedding.hpp"

namespace mbook {

struct StrokeStyle {
  std::string color;
  double width = 1.0;
  std::string dash;  // SVG stroke-dasharray, empty for solid
};

// Style for a page. Known color names (red, black, green, blue, purple)
// get fixed line types; other pages cycle through a fixed palette.
StrokeStyle page_style(Page p, const std::map<Page, std::string>& color_names);

// Vertices equally spaced counter-clockwise in layout order starting at
// angle 0, edges as straight chords. Output is deterministic.
std::string draw_svg(const BookEmbedding& embedding,
                     const std::map<Page, std::string>& color_names = {});
std::string draw_dot(const BookEmbedding& embedding,
                     const std::map<Page, std::string>& color_names = {});

}  // namespace mbook
