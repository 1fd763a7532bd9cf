#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace tt {

// Exact integer and rational types used throughout the engine.  All cone,
// measure and slope arithmetic is exact; floating point appears only in
// statistics (correlation coefficients) and fitted constants reporting.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline std::string to_string(const Int& v) { return v.str(); }

// Rationals serialize as exact "p/q" strings; integers drop the "/q" part.
inline std::string rat_to_string(const Rat& r) {
  if (r.denominator() == 1) return r.numerator().str();
  return r.numerator().str() + "/" + r.denominator().str();
}

inline std::optional<Int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  return Int(s);
}

inline std::optional<Rat> parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto n = parse_int(s);
    if (!n) return std::nullopt;
    return Rat(*n, 1);
  }
  auto n = parse_int(s.substr(0, slash));
  auto d = parse_int(s.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rat(*n, *d);
}

// floor(p/q) for exact integers, q > 0.
inline Int floor_div(const Int& p, const Int& q) {
  Int quo = p / q;
  if ((p % q) != 0 && ((p < 0) != (q < 0))) quo -= 1;
  return quo;
}

}  // namespace tt
