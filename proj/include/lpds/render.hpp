#pragma once

#include <string>

#include "lpds/pattern.hpp"

namespace lpds {

/// X/. grid in the Window text format.
std::string render_ascii(const PatternOrWindow& source, const WindowBounds& bounds);

/// SVG with members as filled squares. For periodic input the matching is
/// drawn as segments between partner centres.
std::string render_svg(const PatternOrWindow& source, const WindowBounds& bounds, int cell_size = 20);

}  // namespace lpds
