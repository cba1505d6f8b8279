#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <boost/rational.hpp>

namespace lpds {

/// Exact rational used for every density, charge and bound.
///
/// Compare only against other Rationals: with C++20 rewritten comparison
/// candidates, boost::rational's mixed `rational == int` recurses forever.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

}  // namespace lpds
