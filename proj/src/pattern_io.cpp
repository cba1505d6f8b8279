#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "lpds/error.hpp"
#include "lpds/pattern.hpp"

namespace lpds {
namespace {

const std::string kInt = R"(\s*([+-]?\d+)\s*)";

std::string trim(const std::string& s) {
  const auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  const auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); });
  if (first >= last.base()) return {};
  return {first, last.base()};
}

std::vector<std::string> nonblank_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::int64_t to_int(const std::string& s) {
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw Error("integer out of range: " + s);
  }
}

std::string first_word(const std::string& line) {
  const auto end = std::find_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
  return {line.begin(), end};
}

}  // namespace

LatticeBasis parse_basis(const std::string& text) {
  static const std::regex re(R"(\s*u\s*=\s*\()" + kInt + "," + kInt + R"(\)\s+v\s*=\s*\()" + kInt + "," +
                             kInt + R"(\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error("malformed lattice: " + trim(text));
  const LatticeBasis basis{{to_int(m[1]), to_int(m[2])}, {to_int(m[3]), to_int(m[4])}};
  if (basis.det() == 0) throw Error("degenerate lattice");
  return basis;
}

PeriodicPattern parse_pattern(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.size() != 2) throw Error("pattern text needs a lattice line and a base line");
  if (first_word(lines[0]) != "lattice") throw Error("malformed lattice line: " + lines[0]);
  const LatticeBasis basis = parse_basis(lines[0].substr(7));

  if (first_word(lines[1]) != "base") throw Error("malformed base line: " + lines[1]);
  static const std::regex point_re(R"(\()" + kInt + "," + kInt + R"(\))");
  std::string rest = lines[1].substr(4);
  std::vector<Point> base;
  auto it = std::sregex_iterator(rest.begin(), rest.end(), point_re);
  std::string leftover;
  std::size_t cursor = 0;
  for (; it != std::sregex_iterator(); ++it) {
    leftover += rest.substr(cursor, static_cast<std::size_t>(it->position()) - cursor);
    cursor = static_cast<std::size_t>(it->position() + it->length());
    base.push_back({to_int((*it)[1]), to_int((*it)[2])});
  }
  leftover += rest.substr(cursor);
  if (!trim(leftover).empty()) throw Error("malformed base line: " + lines[1]);
  return PeriodicPattern(basis, base);
}

std::string serialize(const PeriodicPattern& pattern) {
  std::ostringstream out;
  const auto& b = pattern.basis();
  out << "lattice u=" << b.u << " v=" << b.v << "\nbase";
  for (const Point& p : pattern.base()) out << ' ' << p;
  out << '\n';
  return out.str();
}

WindowBounds parse_bounds(const std::string& text) {
  static const std::regex re(R"(\s*x\s*=\s*\[)" + kInt + R"(\.\.)" + kInt + R"(\]\s*y\s*=\s*\[)" + kInt +
                             R"(\.\.)" + kInt + R"(\]\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error("malformed window bounds: " + text);
  WindowBounds b{to_int(m[1]), to_int(m[2]), to_int(m[3]), to_int(m[4])};
  if (b.x0 > b.x1 || b.y0 > b.y1) throw Error("degenerate window bounds");
  return b;
}

FiniteWindow parse_window(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty() || first_word(lines[0]) != "window") throw Error("window text must start with 'window'");
  const WindowBounds b = parse_bounds(lines[0].substr(6));
  FiniteWindow w(b.x0, b.x1, b.y0, b.y1);
  if (static_cast<std::int64_t>(lines.size()) - 1 != w.height())
    throw Error("window has " + std::to_string(lines.size() - 1) + " rows, expected " +
                std::to_string(w.height()));
  for (std::int64_t row = 0; row < w.height(); ++row) {
    const std::string& line = lines[static_cast<std::size_t>(row + 1)];
    if (static_cast<std::int64_t>(line.size()) != w.width())
      throw Error("window row " + std::to_string(row + 1) + " has wrong length");
    const std::int64_t y = b.y1 - row;
    for (std::int64_t i = 0; i < w.width(); ++i) {
      const char c = line[static_cast<std::size_t>(i)];
      if (c != 'X' && c != '.') throw Error(std::string("unexpected character '") + c + "' in window");
      if (c == 'X') w.set({b.x0 + i, y}, true);
    }
  }
  return w;
}

std::string serialize(const FiniteWindow& w) {
  std::ostringstream out;
  out << "window x=[" << w.x0() << ".." << w.x1() << "] y=[" << w.y0() << ".." << w.y1() << "]\n";
  for (std::int64_t y = w.y1(); y >= w.y0(); --y) {
    for (std::int64_t x = w.x0(); x <= w.x1(); ++x) out << (w.contains({x, y}) ? 'X' : '.');
    out << '\n';
  }
  return out.str();
}

PatternOrWindow parse(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw Error("empty input");
  const std::string head = first_word(lines[0]);
  if (head == "lattice") return parse_pattern(text);
  if (head == "window") return parse_window(text);
  throw Error("unknown format: expected 'lattice' or 'window'");
}

XDescriptor parse_x(const std::string& text) {
  static const std::regex periodic_re(R"(\s*period\s*=)" + kInt + R"(\s+bits\s*=\s*([01]+)\s*)");
  static const std::regex set_re(R"(\s*set\s*=\s*\{([^}]*)\}\s*)");
  std::smatch m;
  if (std::regex_match(text, m, periodic_re)) {
    const std::int64_t period = to_int(m[1]);
    const std::string bits = m[2];
    if (period < 1) throw Error("period must be >= 1");
    if (static_cast<std::int64_t>(bits.size()) != period)
      throw Error("bits length " + std::to_string(bits.size()) + " does not match period");
    std::vector<bool> v;
    for (char c : bits) v.push_back(c == '1');
    return XDescriptor::periodic(std::move(v));
  }
  if (std::regex_match(text, m, set_re)) {
    std::vector<std::int64_t> members;
    std::string body = m[1];
    std::istringstream in(body);
    std::string item;
    static const std::regex int_re(kInt);
    while (std::getline(in, item, ',')) {
      if (trim(item).empty() && body.find_first_not_of(" \t") == std::string::npos) break;
      std::smatch im;
      if (!std::regex_match(item, im, int_re)) throw Error("malformed set member: '" + item + "'");
      members.push_back(to_int(im[1]));
    }
    return XDescriptor::finite(std::move(members));
  }
  throw Error("malformed X spec (expected 'period=<P> bits=<b..>' or 'set={..}'): " + text);
}

}  // namespace lpds
