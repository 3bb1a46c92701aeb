#include "dlogdist/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace dlogdist {

namespace {

i64 parse_int(const std::string& s) {
  if (s.empty()) throw PreconditionError("empty number in rational");
  std::size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw PreconditionError("trailing characters in rational: " + s);
  return static_cast<i64>(v);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    i64 num = parse_int(text.substr(0, slash));
    i64 den = parse_int(text.substr(slash + 1));
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(parse_int(text), 1);
  }
  std::string whole = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  if (frac.size() > 18) throw PreconditionError("decimal part longer than 18 digits");
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw PreconditionError("malformed decimal: " + text);
    }
  }
  bool negative = !whole.empty() && whole[0] == '-';
  i64 whole_v = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
  i64 den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  i64 frac_v = frac.empty() ? 0 : parse_int(frac);
  i64 num = whole_v * den + (negative ? -frac_v : frac_v);
  return Rational(num, den);
}

}  // namespace dlogdist
