#pragma once

// Exact arithmetic in the cyclotomic ring Z[zeta_p].
//
// Elements are stored in the basis {1, zeta, ..., zeta^(p-2)}; zeta^(p-1) is
// eliminated with 1 + zeta + ... + zeta^(p-1) = 0, so equality is a plain
// coefficient comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kloost/error.hpp"

namespace kloost {

using BigInt = boost::multiprecision::cpp_int;

class CycloInt {
 public:
  explicit CycloInt(unsigned p = 2) : p_(p), c_(p > 1 ? p - 1 : 1) {}

  static CycloInt from_int(unsigned p, const BigInt& v) {
    CycloInt r(p);
    r.c_[0] = v;
    return r;
  }

  static CycloInt zeta_pow(unsigned p, long long k) {
    std::vector<std::int64_t> counts(p, 0);
    long long m = k % static_cast<long long>(p);
    if (m < 0) m += p;
    counts[static_cast<std::size_t>(m)] = 1;
    return from_counts(p, counts);
  }

  /// sum_t counts[t] * zeta^t for a histogram indexed by residues mod p.
  static CycloInt from_counts(unsigned p, std::span<const std::int64_t> counts) {
    if (counts.size() != p) fail(Errc::DimensionMismatch, "histogram length must equal p");
    CycloInt r(p);
    const std::int64_t top = counts[p - 1];
    for (unsigned i = 0; i + 1 < p; ++i) r.c_[i] = BigInt(counts[i]) - top;
    return r;
  }

  unsigned prime() const noexcept { return p_; }
  const std::vector<BigInt>& coeffs() const noexcept { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& x) { return x == 0; });
  }

  bool is_integer() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const BigInt& x) { return x == 0; });
  }

  BigInt to_integer() const {
    if (!is_integer()) fail(Errc::RangeError, "cyclotomic value is not a rational integer");
    return c_[0];
  }

  CycloInt& operator+=(const CycloInt& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloInt& operator-=(const CycloInt& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycloInt& operator*=(const BigInt& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  CycloInt& operator*=(const CycloInt& o) { return *this = *this * o; }

  friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
  friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
  friend CycloInt operator-(CycloInt a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend CycloInt operator*(CycloInt a, const BigInt& s) { return a *= s; }
  friend CycloInt operator*(const BigInt& s, CycloInt a) { return a *= s; }

  friend CycloInt operator*(const CycloInt& a, const CycloInt& b) {
    a.check(b);
    const unsigned p = a.p_;
    std::vector<BigInt> full(p);
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j + 1 < p; ++j) {
        if (b.c_[j] == 0) continue;
        unsigned k = i + j;
        if (k >= p) k -= p;
        full[k] += a.c_[i] * b.c_[j];
      }
    }
    CycloInt r(p);
    for (unsigned i = 0; i + 1 < p; ++i) r.c_[i] = full[i] - full[p - 1];
    return r;
  }

  friend bool operator==(const CycloInt& a, const CycloInt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  CycloInt pow(unsigned e) const {
    CycloInt result = from_int(p_, 1);
    CycloInt base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Value under zeta -> exp(2 pi i / p).
  std::complex<double> embed() const {
    // Shifting all p coefficients by a common amount does not change the
    // value; centring them keeps the floating-point sum well conditioned.
    std::vector<BigInt> full(c_.begin(), c_.end());
    if (p_ > 2) full.push_back(0);
    std::vector<BigInt> sorted = full;
    std::sort(sorted.begin(), sorted.end());
    const BigInt shift = p_ > 2 ? sorted[sorted.size() / 2] : BigInt(0);
    long double re = 0, im = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::size_t k = 0; k < full.size(); ++k) {
      const long double v = static_cast<long double>(full[k] - shift);
      if (v == 0) continue;
      const long double ang = two_pi * static_cast<long double>(k) / static_cast<long double>(p_);
      re += v * std::cos(ang);
      im += v * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  double abs() const { return std::abs(embed()); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      std::string term = c_[i].str();
      if (!out.empty()) out += (c_[i] < 0 ? " - " : " + ");
      else if (c_[i] < 0) out += "-";
      if (c_[i] < 0) term = term.substr(1);
      if (i == 0) out += term;
      else {
        if (term != "1") out += term + "*";
        out += (i == 1 ? std::string("z") : "z^" + std::to_string(i));
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const CycloInt& o) const {
    if (o.p_ != p_) fail(Errc::PrimeMismatch, "Z[zeta_p] operands with different p");
  }

  unsigned p_;
  std::vector<BigInt> c_;
};

inline CycloInt cyclo_mul(const CycloInt& a, const CycloInt& b) { return a * b; }
inline double cyclo_abs(const CycloInt& a) { return a.abs(); }

}  // namespace kloost
