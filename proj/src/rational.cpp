#include "qac/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "qac/error.hpp"

namespace qac {

bool is_dyadic(const Rat& r) {
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return true;
  // Power of two iff exactly one set bit.
  return boost::multiprecision::lsb(den) == boost::multiprecision::msb(den);
}

std::string to_fraction_string(const Rat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rat& r) {
  if (!is_dyadic(r)) {
    throw InvalidArgument("non-dyadic rational cannot print as exact decimal: " +
                          to_fraction_string(r));
  }
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  unsigned k = boost::multiprecision::lsb(den);  // den == 2^k
  // p / 2^k == p * 5^k / 10^k.
  BigInt scaled = num * boost::multiprecision::pow(BigInt(5), k);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  return (neg ? "-" : "") + digits;
}

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty rational literal");
  auto bad = [&] { throw InvalidArgument("malformed rational literal: '" + text + "'"); };

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) bad();
      return Rat(num, den);
    } catch (const std::exception&) {
      bad();
    }
  }

  std::string s = text;
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string int_part, frac_part;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) int_part += s[i];
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) frac_part += s[i];
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty())) bad();

  BigInt num = int_part.empty() ? BigInt(0) : BigInt(int_part);
  BigInt den = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace qac
