#include "lpds/render.hpp"

#include <sstream>

#include "lpds/verify.hpp"

namespace lpds {
namespace {

bool member(const PatternOrWindow& source, Point p) {
  if (const auto* pattern = std::get_if<PeriodicPattern>(&source)) return pattern->contains(p);
  return std::get<FiniteWindow>(source).contains(p);
}

}  // namespace

std::string render_ascii(const PatternOrWindow& source, const WindowBounds& b) {
  FiniteWindow w(b.x0, b.x1, b.y0, b.y1);
  for (std::int64_t y = b.y0; y <= b.y1; ++y)
    for (std::int64_t x = b.x0; x <= b.x1; ++x)
      if (member(source, {x, y})) w.set({x, y}, true);
  return serialize(w);
}

std::string render_svg(const PatternOrWindow& source, const WindowBounds& b, int cell) {
  const std::int64_t cols = b.x1 - b.x0 + 1, rows = b.y1 - b.y0 + 1;
  // Column x, row y (y grows upwards) to the centre of its square.
  auto cx = [&](std::int64_t x) { return (x - b.x0) * cell + cell / 2; };
  auto cy = [&](std::int64_t y) { return (b.y1 - y) * cell + cell / 2; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell << "\" height=\"" << rows * cell
      << "\" viewBox=\"0 0 " << cols * cell << ' ' << rows * cell << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (std::int64_t i = 0; i <= cols; ++i)
    out << "<line x1=\"" << i * cell << "\" y1=\"0\" x2=\"" << i * cell << "\" y2=\"" << rows * cell << "\"/>\n";
  for (std::int64_t j = 0; j <= rows; ++j)
    out << "<line x1=\"0\" y1=\"" << j * cell << "\" x2=\"" << cols * cell << "\" y2=\"" << j * cell << "\"/>\n";
  out << "</g>\n<g fill=\"black\">\n";
  const int pad = cell / 8;
  for (std::int64_t y = b.y1; y >= b.y0; --y)
    for (std::int64_t x = b.x0; x <= b.x1; ++x)
      if (member(source, {x, y}))
        out << "<rect x=\"" << (x - b.x0) * cell + pad << "\" y=\"" << (b.y1 - y) * cell + pad
            << "\" width=\"" << cell - 2 * pad << "\" height=\"" << cell - 2 * pad << "\"/>\n";
  out << "</g>\n";
  if (const auto* pattern = std::get_if<PeriodicPattern>(&source)) {
    const MatchingResult m = find_perfect_matching(*pattern);
    if (m.matching) {
      out << "<g stroke=\"#d62728\" stroke-width=\"" << std::max(2, cell / 6) << "\" stroke-linecap=\"round\">\n";
      for (std::int64_t y = b.y1; y >= b.y0; --y)
        for (std::int64_t x = b.x0; x <= b.x1; ++x) {
          const Point p{x, y};
          if (!pattern->contains(p)) continue;
          const Point q = m.matching->partner_of(p);
          const bool inside = q.x >= b.x0 && q.x <= b.x1 && q.y >= b.y0 && q.y <= b.y1;
          if (inside && q < p) continue;
          out << "<line x1=\"" << cx(p.x) << "\" y1=\"" << cy(p.y) << "\" x2=\"" << cx(q.x) << "\" y2=\""
              << cy(q.y) << "\"/>\n";
        }
      out << "</g>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lpds
