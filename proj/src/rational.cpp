#include "xlproj/rational.hpp"

#include <charconv>
#include <limits>

#include "xlproj/error.hpp"

namespace xlproj {

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) {
    return std::to_string(value.numerator());
  }
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ConfigError("not a rational number: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) {
      throw ConfigError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15 ||
        frac_part.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ConfigError("not a rational number: '" + std::string(text) + "'");
    }
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::int64_t whole = (int_part.empty() || int_part == "-") ? 0 : parse_int(int_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    std::int64_t frac = parse_int(frac_part, text);
    if (whole > std::numeric_limits<std::int64_t>::max() / scale - 1 ||
        whole < std::numeric_limits<std::int64_t>::min() / scale + 1) {
      throw ConfigError("rational out of range: '" + std::string(text) + "'");
    }
    std::int64_t num = whole * scale + (negative ? -frac : frac);
    return Rational(num, scale);
  }
  return Rational(parse_int(text, text));
}

}  // namespace xlproj
