#pragma once

// Univariate integer polynomials (coefficients ascending), used for q-analogues
// and for rendering symbolic values in powers of q.

#include <string>
#include <vector>

#include "kloost/cyclo.hpp"

namespace kloost {

using IntPoly = std::vector<BigInt>;

inline void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly ipoly_add(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

inline IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Exact division; throws RangeError when the divisor does not divide.
inline IntPoly ipoly_div_exact(IntPoly a, const IntPoly& b) {
  trim(a);
  if (b.empty()) fail(Errc::RangeError, "division by zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) fail(Errc::RangeError, "inexact polynomial division");
  IntPoly quo(a.size() - b.size() + 1);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const BigInt& top = a[i + b.size() - 1];
    if (top % b.back() != 0) fail(Errc::RangeError, "inexact polynomial division");
    quo[i] = top / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= quo[i] * b[j];
  }
  trim(a);
  if (!a.empty()) fail(Errc::RangeError, "inexact polynomial division");
  trim(quo);
  return quo;
}

inline BigInt ipoly_eval(const IntPoly& a, const BigInt& x) {
  BigInt r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

/// Descending-degree rendering in the variable q, e.g. "q^2-q+1".
inline std::string ipoly_to_string(const IntPoly& a) {
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    BigInt c = a[i];
    const bool neg = c < 0;
    if (neg) c = -c;
    if (!out.empty()) out += neg ? "-" : "+";
    else if (neg) out += "-";
    if (i == 0) out += c.str();
    else {
      if (c != 1) out += c.str();
      out += "q";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace kloost
