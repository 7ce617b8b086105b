#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74 defines `integer == rational` by delegating to `rational ==
// integer`; under C++20 rewritten-operator lookup that call resolves back to
// itself and never returns. Exact-match non-template overloads take
// precedence over both the template and its reversed form.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a == static_cast<std::int64_t>(b);
}

}  // namespace boost

namespace xlproj {

// Exact non-floating arithmetic for costs, objectives and scores.
using Rational = boost::rational<std::int64_t>;

// "a/b", or "a" when the denominator is one.
std::string to_string(const Rational& value);

// Accepts "a/b", an integer, or a plain decimal such as "0.8".
// Throws ConfigError on anything else.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

}  // namespace xlproj
