#include "axfi/rational.hpp"

#include <algorithm>
#include <cctype>

#include "axfi/error.hpp"

namespace axfi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain_error";
    case ErrorKind::argument: return "argument_error";
    case ErrorKind::resource: return "resource_error";
    case ErrorKind::method: return "method_error";
    case ErrorKind::schema: return "schema_error";
  }
  return "error";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw SchemaError("malformed rational '" + std::string(whole) + "'");
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw SchemaError("malformed rational '" + std::string(text) + "'");
    BigInt den(std::string{den_text});
    if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty()) int_part = "0";
    if (!all_digits(int_part) || !all_digits(frac_part)) {
      throw SchemaError("malformed rational '" + std::string(text) + "'");
    }
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    BigInt num = BigInt(std::string(int_part)) * scale + BigInt(std::string(frac_part));
    Rational r(num, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_decimal(const Rational& value, int places) {
  const bool negative = value < 0;
  Rational magnitude = negative ? Rational(-value) : value;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
  Rational scaled = magnitude * scale;
  BigInt floor_part = numerator(scaled) / denominator(scaled);
  Rational remainder = scaled - Rational(floor_part);
  const Rational half(1, 2);
  if (remainder > half || (remainder == half && floor_part % 2 != 0)) floor_part += 1;

  std::string digits = floor_part.str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string int_part = digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  std::string frac_part = digits.substr(digits.size() - static_cast<std::size_t>(places));
  while (frac_part.size() > 1 && frac_part.back() == '0') frac_part.pop_back();
  if (frac_part.empty()) frac_part = "0";
  const bool is_zero = floor_part == 0;
  return (negative && !is_zero ? "-" : "") + int_part + "." + frac_part;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace axfi
