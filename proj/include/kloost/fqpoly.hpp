#pragma once

// Dense polynomials over a FieldCtx, constant term first.

#include <algorithm>
#include <utility>
#include <vector>

#include "kloost/field.hpp"

namespace kloost {

using FqPoly = std::vector<Elem>;

namespace fq {

inline void trim(FqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }

inline bool is_one(const FqPoly& a) { return a.size() == 1 && a[0] == 1; }

inline FqPoly add(const FieldCtx& F, FqPoly a, const FqPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  trim(a);
  return a;
}

inline FqPoly sub(const FieldCtx& F, FqPoly a, const FqPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

inline FqPoly mul(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

inline FqPoly scale(const FieldCtx& F, FqPoly a, Elem c) {
  for (auto& x : a) x = F.mul(x, c);
  trim(a);
  return a;
}

/// Returns (quotient, remainder).
inline std::pair<FqPoly, FqPoly> divmod(const FieldCtx& F, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) fail(Errc::ZeroPolynomial, "division by the zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  const Elem lead_inv = F.inv(b.back());
  FqPoly quo(a.size() - b.size() + 1, 0);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const Elem c = F.mul(a[i + b.size() - 1], lead_inv);
    quo[i] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = F.sub(a[i + j], F.mul(c, b[j]));
  }
  trim(a);
  trim(quo);
  return {quo, a};
}

inline FqPoly rem(const FieldCtx& F, const FqPoly& a, const FqPoly& b) { return divmod(F, a, b).second; }

inline FqPoly monic(const FieldCtx& F, FqPoly a) {
  trim(a);
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

/// Monic gcd; gcd(0,0) = 0.
inline FqPoly gcd(const FieldCtx& F, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline FqPoly derivative(const FieldCtx& F, const FqPoly& a) {
  FqPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(F.from_int(static_cast<long long>(i)), a[i]));
  trim(r);
  return r;
}

inline Elem eval(const FieldCtx& F, const FqPoly& a, Elem x) {
  Elem r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

inline FqPoly powmod(const FieldCtx& F, FqPoly base, std::uint64_t e, const FqPoly& m) {
  FqPoly r{1};
  r = rem(F, r, m);
  base = rem(F, base, m);
  while (e) {
    if (e & 1) r = rem(F, mul(F, r, base), m);
    e >>= 1;
    if (e) base = rem(F, mul(F, base, base), m);
  }
  return r;
}

/// Coefficientwise p-th root of a polynomial whose derivative vanishes.
inline FqPoly pth_root(const FieldCtx& F, const FqPoly& a) {
  const unsigned p = F.p();
  // x -> x^{q/p} inverts Frobenius on F_q.
  std::uint64_t qp = F.q() / p;
  FqPoly r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(F.pow(a[i], qp));
  trim(r);
  return r;
}

}  // namespace fq

struct RootMult {
  Elem root;
  int mult;
};

struct RootsResult {
  std::vector<RootMult> roots;  // ascending by element code
  FqPoly cofactor;             // part without roots in the field, same leading coefficient
};

/// Exhaustive root search with multiplicities by repeated synthetic division.
inline RootsResult poly_roots(const FieldCtx& F, FqPoly a) {
  fq::trim(a);
  if (a.empty()) fail(Errc::ZeroPolynomial, "poly_roots of the zero polynomial");
  RootsResult out;
  for (Elem x = 0; x < F.q() && a.size() > 1; ++x) {
    int m = 0;
    while (a.size() > 1 && fq::eval(F, a, x) == 0) {
      a = fq::divmod(F, a, FqPoly{F.neg(x), 1}).first;
      ++m;
    }
    if (m) out.roots.push_back({x, m});
  }
  out.cofactor = std::move(a);
  return out;
}

struct FactorPower {
  FqPoly factor;  // monic
  int mult;
};

/// Squarefree decomposition of a monic polynomial: f = prod factor^mult with
/// pairwise coprime squarefree factors.
inline std::vector<FactorPower> squarefree_decomposition(const FieldCtx& F, FqPoly f) {
  f = fq::monic(F, f);
  if (f.empty()) fail(Errc::ZeroPolynomial, "squarefree decomposition of zero");
  std::vector<FactorPower> out;
  auto rec = [&](auto&& self, FqPoly g, int scale) -> void {
    if (fq::deg(g) < 1) return;
    FqPoly c = fq::gcd(F, g, fq::derivative(F, g));
    FqPoly w = fq::divmod(F, g, c).first;
    int i = 1;
    while (!fq::is_one(w)) {
      FqPoly y = fq::gcd(F, w, c);
      FqPoly fac = fq::divmod(F, w, y).first;
      if (fq::deg(fac) > 0) out.push_back({fq::monic(F, fac), i * scale});
      w = y;
      c = fq::divmod(F, c, y).first;
      ++i;
    }
    if (fq::deg(c) > 0) self(self, fq::pth_root(F, c), scale * static_cast<int>(F.p()));
  };
  rec(rec, f, 1);
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
    return a.mult != b.mult ? a.mult < b.mult : a.factor < b.factor;
  });
  return out;
}

struct DegreePart {
  FqPoly product;  // product of all irreducible factors of this degree
  int degree;
};

/// Distinct-degree factorization of a monic squarefree polynomial.
inline std::vector<DegreePart> distinct_degree_factorization(const FieldCtx& F, FqPoly f) {
  f = fq::monic(F, f);
  std::vector<DegreePart> out;
  const FqPoly x{0, 1};
  FqPoly h = fq::rem(F, x, f);
  for (int i = 1; 2 * i <= fq::deg(f); ++i) {
    h = fq::powmod(F, h, F.q(), f);
    FqPoly g = fq::gcd(F, f, fq::sub(F, h, x));
    if (!fq::is_one(g)) {
      out.push_back({g, i});
      f = fq::divmod(F, f, g).first;
      h = fq::rem(F, h, f);
    }
  }
  if (fq::deg(f) > 0) out.push_back({f, fq::deg(f)});
  return out;
}

inline bool is_irreducible_over(const FieldCtx& F, const FqPoly& f) {
  if (fq::deg(f) < 1) return false;
  auto sq = squarefree_decomposition(F, f);
  if (sq.size() != 1 || sq[0].mult != 1) return false;
  auto dd = distinct_degree_factorization(F, sq[0].factor);
  return dd.size() == 1 && dd[0].degree == fq::deg(f);
}

}  // namespace kloost
