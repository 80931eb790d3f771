#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace infhom {

/// Exact scalar field for all algebraic work: arbitrary-precision rational,
/// kept in lowest terms with positive denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_to_string(const Rational& q) { return q.str(); }

/// Parses "p" or "p/q" with p a (signed) integer and q a positive integer.
/// Rejects anything else, in particular zero denominators and float syntax.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&](const char* why) {
    throw std::invalid_argument("malformed rational \"" + text + "\": " + why);
  };
  if (text.empty()) bad("empty string");
  std::size_t pos = 0;
  if (text[pos] == '-') ++pos;
  const std::size_t num_begin = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == num_begin) bad("expected an integer numerator");
  const std::string num = text.substr(0, pos);
  if (pos == text.size()) return Rational(BigInt(num));
  if (text[pos] != '/') bad("expected '/' or end of string");
  ++pos;
  const std::size_t den_begin = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == den_begin || pos != text.size()) bad("expected a positive integer denominator");
  const BigInt den(text.substr(den_begin));
  if (den == 0) bad("zero denominator");
  return Rational(BigInt(num), den);
}

}  // namespace infhom
