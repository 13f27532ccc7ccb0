#include "qlp/rational.hpp"

#include <algorithm>
#include <cctype>

namespace qlp {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto all_digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt q{std::string(den)};
    if (q == 0) return std::nullopt;
    return Rational(BigInt{std::string(num)}, q);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) return std::nullopt;
    return Rational(BigInt{std::string(text)});
  }
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !all_digits(whole)) return std::nullopt;
  if (!frac.empty() && !all_digits(frac)) return std::nullopt;
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  BigInt w = whole.empty() ? BigInt{0} : BigInt{std::string(whole)};
  BigInt f = frac.empty() ? BigInt{0} : BigInt{std::string(frac)};
  return Rational(w * scale + f, scale);
}

std::string format_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  // decimal rendering is exact iff den = 2^a 5^b
  BigInt d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int scale = std::max(twos, fives);
  BigInt pow10 = 1;
  for (int i = 0; i < scale; ++i) pow10 *= 10;
  BigInt digits = num * pow10 / den; // exact by construction
  std::string s = digits.str();
  if (static_cast<int>(s.size()) <= scale) s.insert(0, std::string(scale + 1 - s.size(), '0'));
  s.insert(s.size() - scale, ".");
  return s;
}

} // namespace qlp
