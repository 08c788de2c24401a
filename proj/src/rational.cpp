#include "alex/rational.hpp"

#include <string>

#include "alex/error.hpp"

namespace alex {

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw Error("malformed rational '" + std::string(text) + "'");
  boost::multiprecision::mpz_int n(std::string(num.front() == '+' ? num.substr(1) : num));
  boost::multiprecision::mpz_int d{std::string(den)};
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& value) {
  const auto den = denominator(value);
  if (den == 1) return numerator(value).str();
  return numerator(value).str() + "/" + den.str();
}

}  // namespace alex
