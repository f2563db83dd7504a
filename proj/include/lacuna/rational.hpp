#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "lacuna/errors.hpp"

namespace lacuna {

// Exact arithmetic everywhere: no floating point result ever crosses a module
// boundary. Square roots are carried symbolically (see SqrtTerm).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int floor_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);  // d > 0 canonical
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

// Accepts "p/q", plain integers, and decimal literals like ".01" or "2.5".
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty())
      throw InvalidInput("malformed rational: " + text);
    Int n(ns), d(ds);
    if (d == 0) throw InvalidInput("zero denominator: " + text);
    return Rat(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    if (tail.empty()) tail = "0";
    Int scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Rat value = Rat(Int(head)) + Rat(Int(tail), scale);
    return neg ? -value : value;
  }
  return Rat(Int(text));
}

// Integers render without the "/1".
inline std::string to_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// A value of the form coeff * sqrt(radicand), kept exact. Used for Rips-area
// and certificate constants where a radical is intrinsic.
struct SqrtTerm {
  Rat coeff;
  Int radicand;  // >= 0

  // coeff^2 * radicand, the radical-free square (assumes coeff >= 0 users
  // compare magnitudes).
  Rat square() const { return coeff * coeff * Rat(radicand); }

  bool is_zero() const { return coeff == 0 || radicand == 0; }
};

// this >= rhs, both sides nonnegative: compare squares.
inline bool sqrt_term_geq(const SqrtTerm& lhs, const SqrtTerm& rhs) {
  return lhs.square() >= rhs.square();
}

}  // namespace lacuna
