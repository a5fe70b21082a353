#pragma once

// Brute-force evaluation of K_n(a,b) = sum_{x in GL_n} psi(tr(ax + bx^-1)), of
// its restrictions to Bruhat cells, and of the classical K_1 over any field.
//
// Every routine accumulates a histogram over the absolute trace in F_p and
// converts it to Z[zeta_p] once at the end, so merging worker results is
// plain integer addition and the answer does not depend on the split.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "kloost/enumerate.hpp"

namespace kloost {

using Histogram = std::vector<std::int64_t>;

struct OracleOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 0;  // 0: hardware concurrency
  bool naive = false;    // reference path: full inverse and product per element
};

inline constexpr int kMaxSmallDim = 8;

/// Gauss-Jordan on a stack buffer; false when singular.
inline bool small_inverse(const FieldCtx& F, int n, const Elem* x, Elem* out) {
  std::array<Elem, kMaxSmallDim * 2 * kMaxSmallDim> m{};
  const int w = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i * w + j] = x[i * n + j];
    for (int j = 0; j < n; ++j) m[i * w + n + j] = i == j;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && !m[piv * w + c]) ++piv;
    if (piv == n) return false;
    if (piv != c)
      for (int j = 0; j < w; ++j) std::swap(m[piv * w + j], m[c * w + j]);
    const Elem inv = F.inv(m[c * w + c]);
    for (int j = c; j < w; ++j) m[c * w + j] = F.mul(m[c * w + j], inv);
    for (int i = 0; i < n; ++i) {
      const Elem f = m[i * w + c];
      if (i == c || !f) continue;
      for (int j = c; j < w; ++j) m[i * w + j] = F.sub(m[i * w + j], F.mul(f, m[c * w + j]));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = m[i * w + n + j];
  return true;
}

inline CycloInt histogram_to_cyclo(unsigned p, const Histogram& h) { return CycloInt::from_counts(p, h); }

inline unsigned resolve_threads(unsigned t) {
  if (t) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(lo, hi, hist) on disjoint slices of [0, total) and sums the histograms.
template <class Body>
Histogram parallel_histogram(unsigned p, std::uint64_t total, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(total, 1)));
  std::vector<Histogram> parts(threads, Histogram(p, 0));
  auto slice = [&](unsigned t) {
    const std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
    body(lo, hi, parts[t]);
  };
  if (threads == 1) slice(0);
  else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(slice, t);
    for (auto& th : pool) th.join();
  }
  Histogram out(p, 0);
  for (const auto& h : parts)
    for (unsigned i = 0; i < p; ++i) out[i] += h[i];
  return out;
}

namespace detail {

inline void check_pair(const MatFq& a, const MatFq& b) {
  if (a.n() != b.n()) fail(Errc::DimensionMismatch, "a and b have different dimensions");
  if (!a.F().same_as(b.F())) fail(Errc::FieldMismatch, "a and b live over different fields");
  if (a.n() < 1) fail(Errc::DimensionMismatch, "dimension must be >= 1");
  if (a.n() > kMaxSmallDim) fail(Errc::DimensionMismatch, "dimension too large for the oracle");
}

inline void naive_range(const MatFq& a, const MatFq& b, std::uint64_t lo, std::uint64_t hi, Histogram& h) {
  const FieldCtx& F = a.F();
  enumerate_gl(
      a.field(), a.n(),
      [&](const MatFq& x) {
        const Elem t = (a * x + b * mat_inverse(x)).trace();
        ++h[F.abs_trace(t)];
      },
      UINT64_MAX, EnumRange{lo, hi});
}

// Fixes the first n-1 rows R, then sweeps the last row r. With u spanning the
// right kernel of R and r0 = e_k / u_k, the inverse of x = [R; r] is a rank-one
// update of Y0 = [R; r0]^-1, giving
//   tr(b x^-1) = tr(b Y0) - (r.z - r0.z) / (r.u),   z = Y0 b u,
// and x is invertible exactly when r.u != 0.
inline void fast_range(const MatFq& a, const MatFq& b, const VectorTable& V, std::uint64_t lo, std::uint64_t hi,
                       Histogram& h) {
  const FieldCtx& F = a.F();
  const int n = a.n();
  const Elem q = F.q();
  std::vector<Elem> tu(n * q), tz(n * q), ta(n * q);
  std::array<Elem, kMaxSmallDim * kMaxSmallDim> X0{}, Y0{};
  std::vector<Elem> red(static_cast<std::size_t>(n) * n);

  auto node = [&](const std::vector<std::uint64_t>& rows, std::uint64_t rlo, std::uint64_t rhi) {
    // right kernel of R
    std::array<Elem, kMaxSmallDim> u{};
    if (n == 1) u[0] = 1;
    else {
      for (int i = 0; i + 1 < n; ++i)
        for (int k = 0; k < n; ++k) red[i * n + k] = V[rows[i]][k];
      detail::row_reduce(F, red, n - 1, n, n);
      int free_col = -1;
      std::array<int, kMaxSmallDim> pivot_of_row{};
      int r = 0;
      for (int c = 0; c < n; ++c) {
        if (r < n - 1 && red[r * n + c]) pivot_of_row[r++] = c;
        else if (free_col < 0) free_col = c;
      }
      u[free_col] = 1;
      for (int i = 0; i + 1 < n; ++i) u[pivot_of_row[i]] = F.neg(red[i * n + free_col]);
    }
    int k = 0;
    while (!u[k]) ++k;
    const Elem uk_inv = F.inv(u[k]);
    for (int i = 0; i + 1 < n; ++i)
      for (int c = 0; c < n; ++c) X0[i * n + c] = V[rows[i]][c];
    for (int c = 0; c < n; ++c) X0[(n - 1) * n + c] = c == k ? uk_inv : 0;
    small_inverse(F, n, X0.data(), Y0.data());

    std::array<Elem, kMaxSmallDim> bu{}, z{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) bu[i] = F.add(bu[i], F.mul(b(i, j), u[j]));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) z[i] = F.add(z[i], F.mul(Y0[i * n + j], bu[j]));
    Elem base = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) base = F.add(base, F.mul(b(i, j), Y0[j * n + i]));
    // tr(ax) over the fixed rows: sum_i sum_c x_ic a_ci
    for (int i = 0; i + 1 < n; ++i)
      for (int c = 0; c < n; ++c) base = F.add(base, F.mul(V[rows[i]][c], a(c, i)));
    const Elem kappa = F.mul(uk_inv, z[k]);
    for (int c = 0; c < n; ++c)
      for (Elem e = 0; e < q; ++e) {
        tu[c * q + e] = F.mul(e, u[c]);
        tz[c * q + e] = F.neg(F.mul(e, z[c]));
        ta[c * q + e] = F.mul(e, a(c, n - 1));
      }
    for (std::uint64_t r = rlo; r < rhi; ++r) {
      const Elem* d = V[r];
      Elem du = 0, dz = kappa, da = 0;
      for (int c = 0; c < n; ++c) {
        du = F.add(du, tu[c * q + d[c]]);
        dz = F.add(dz, tz[c * q + d[c]]);
        da = F.add(da, ta[c * q + d[c]]);
      }
      if (!du) continue;
      const Elem val = F.add(F.add(base, da), F.mul(dz, F.inv(du)));
      ++h[F.abs_trace(val)];
    }
  };

  if (n == 1) {
    node({}, lo, hi);
    return;
  }
  walk_independent_rows(V, F, n - 1, EnumRange{lo, hi},
                        [&](const std::vector<std::uint64_t>& rows) { node(rows, 0, V.size()); });
}

}  // namespace detail

/// Trace histogram of K_n(a,b): entry t counts x with Tr tr(ax + bx^-1) = t.
inline Histogram kloosterman_histogram(const MatFq& a, const MatFq& b, const OracleOptions& opt = {}) {
  detail::check_pair(a, b);
  check_budget(a.n(), a.F(), opt.budget);
  const unsigned p = a.F().p();
  VectorTable V(a.F(), a.n());
  return parallel_histogram(p, V.size(), resolve_threads(opt.threads),
                            [&](std::uint64_t lo, std::uint64_t hi, Histogram& h) {
                              if (opt.naive) detail::naive_range(a, b, lo, hi, h);
                              else detail::fast_range(a, b, V, lo, hi, h);
                            });
}

inline CycloInt kloosterman_oracle(const MatFq& a, const MatFq& b, const OracleOptions& opt = {}) {
  return histogram_to_cyclo(a.F().p(), kloosterman_histogram(a, b, opt));
}

inline CycloInt kloosterman_oracle(const MatFq& a, const OracleOptions& opt = {}) {
  return kloosterman_oracle(a, MatFq::identity(a.field(), a.n()), opt);
}

/// Classical K_1(alpha) = sum_{x != 0} psi(alpha x + 1/x) over alpha's field.
inline CycloInt k1_sum(const FieldCtx& F, Elem alpha) {
  Histogram h(F.p(), 0);
  for (Elem x = 1; x < F.q(); ++x) ++h[F.abs_trace(F.add(F.mul(alpha, x), F.inv(x)))];
  return histogram_to_cyclo(F.p(), h);
}

inline CycloInt k1_sum(const FqElem& alpha) { return k1_sum(*alpha.ctx(), alpha.code()); }

// ---- Bruhat cells ----

struct CellSpec {
  enum class Kind { FullGroup, BorelCell, ParabolicCell };
  Kind kind = Kind::FullGroup;
  Perm w;     // BorelCell
  int k = 0;  // ParabolicCell, 1-based

  static CellSpec full() { return {}; }
  static CellSpec borel(Perm w) { return {Kind::BorelCell, std::move(w), 0}; }
  static CellSpec parabolic(int k) { return {Kind::ParabolicCell, {}, k}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::FullGroup: return "full";
      case Kind::BorelCell: return "borel:" + perm_to_cycles(w);
      case Kind::ParabolicCell: return "parabolic:" + std::to_string(k);
    }
    return "?";
  }
};

namespace detail {

// Sum over x = u W g with u from `us` and g from the generator. For each u we
// store M = a u W and N = W^-1 u^-1 b, so tr(ax) = sum M_cr g_rc and
// tr(bx^-1) = sum ginv_rc N_cr, restricted to the positions g can occupy.
template <class ForEachG>
Histogram cell_core(const MatFq& a, const MatFq& b, const std::vector<MatFq>& us, const MatFq& W,
                    const std::vector<std::pair<int, int>>& g_pos, const std::vector<std::pair<int, int>>& ginv_pos,
                    ForEachG&& for_each_g) {
  const FieldCtx& F = a.F();
  const int n = a.n();
  const bool prime = F.f() == 1;
  const unsigned p = F.p();
  const MatFq Wt = W.transpose();
  std::vector<Elem> Ms, Ns;
  for (const auto& u : us) {
    const MatFq M = a * u * W, N = Wt * mat_inverse(u) * b;
    for (auto [r, c] : g_pos) Ms.push_back(M(c, r));
    for (auto [r, c] : ginv_pos) Ns.push_back(N(c, r));
  }
  const std::size_t gp = g_pos.size(), ip = ginv_pos.size();
  std::vector<Elem> gv(gp), iv(ip);
  Histogram h(p, 0);
  for_each_g([&](const Elem* g, const Elem* ginv) {
    for (std::size_t t = 0; t < gp; ++t) gv[t] = g[g_pos[t].first * n + g_pos[t].second];
    for (std::size_t t = 0; t < ip; ++t) iv[t] = ginv[ginv_pos[t].first * n + ginv_pos[t].second];
    for (std::size_t ui = 0; ui < us.size(); ++ui) {
      const Elem* M = &Ms[ui * gp];
      const Elem* N = &Ns[ui * ip];
      if (prime) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < gp; ++t) s += static_cast<std::uint64_t>(M[t]) * gv[t];
        for (std::size_t t = 0; t < ip; ++t) s += static_cast<std::uint64_t>(N[t]) * iv[t];
        ++h[s % p];
      } else {
        Elem s = 0;
        for (std::size_t t = 0; t < gp; ++t) s = F.add(s, F.mul(M[t], gv[t]));
        for (std::size_t t = 0; t < ip; ++t) s = F.add(s, F.mul(N[t], iv[t]));
        ++h[F.abs_trace(s)];
      }
    }
  });
  return h;
}

/// Every assignment of field elements to `cells` positions of a base matrix.
inline std::vector<MatFq> affine_family(const MatFq& base, const std::vector<std::pair<int, int>>& cells) {
  const FieldCtx& F = base.F();
  std::vector<MatFq> out;
  std::vector<Elem> digit(cells.size(), 0);
  MatFq m = base;
  while (true) {
    for (std::size_t t = 0; t < cells.size(); ++t) m.at(cells[t].first, cells[t].second) = digit[t];
    out.push_back(m);
    std::size_t t = 0;
    while (t < cells.size() && ++digit[t] == F.q()) digit[t++] = 0;
    if (t == cells.size()) break;
  }
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

}  // namespace detail

/// Restriction of K_n(a,b) to one Bruhat cell; b defaults to the identity.
inline CycloInt cell_oracle(const MatFq& a, const MatFq& b, const CellSpec& spec, const OracleOptions& opt = {}) {
  detail::check_pair(a, b);
  const FieldCtx& F = a.F();
  const FieldPtr& Fp = a.field();
  const int n = a.n();
  const std::uint64_t q = F.q();
  if (spec.kind == CellSpec::Kind::FullGroup) return kloosterman_oracle(a, b, opt);

  if (spec.kind == CellSpec::Kind::BorelCell) {
    if (static_cast<int>(spec.w.size()) != n || !is_permutation_vec(spec.w))
      fail(Errc::RangeError, "Borel cell needs a permutation of size n");
    const Perm winv = perm_inverse(spec.w);
    std::vector<std::pair<int, int>> free, upper;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        upper.push_back({i, j});
        if (j > i && winv[i] > winv[j]) free.push_back({i, j});
      }
    const std::uint64_t borel_size = detail::checked_mul(detail::ipow(q - 1, n), detail::ipow(q, n * (n - 1) / 2));
    if (detail::checked_mul(detail::ipow(q, static_cast<unsigned>(free.size())), borel_size) > opt.budget)
      fail(Errc::BudgetExceeded, "Borel cell exceeds the budget");
    const auto us = detail::affine_family(MatFq::identity(Fp, n), free);
    const MatFq W = MatFq::permutation(Fp, spec.w);
    auto for_each_b = [&](auto&& cb) {
      std::vector<Elem> g(n * n, 0), ginv(n * n, 0);
      std::vector<Elem> digit(upper.size(), 0);
      for (std::size_t t = 0; t < upper.size(); ++t)
        if (upper[t].first == upper[t].second) digit[t] = 1;
      while (true) {
        for (std::size_t t = 0; t < upper.size(); ++t) g[upper[t].first * n + upper[t].second] = digit[t];
        small_inverse(F, n, g.data(), ginv.data());
        cb(g.data(), ginv.data());
        std::size_t t = 0;
        for (; t < upper.size(); ++t) {
          const bool diag = upper[t].first == upper[t].second;
          if (++digit[t] < F.q()) break;
          digit[t] = diag ? 1 : 0;
        }
        if (t == upper.size()) break;
      }
    };
    return histogram_to_cyclo(F.p(), detail::cell_core(a, b, us, W, upper, upper, for_each_b));
  }

  const int k = spec.k;
  if (k < 1 || k > n) fail(Errc::RangeError, "parabolic cell index must lie in [1, n]");
  const BigInt psize = gl_order(n - 1, q) * BigInt(q - 1) * detail::ipow(q, n - 1);
  if (psize * detail::ipow(q, n - k) > opt.budget) fail(Errc::BudgetExceeded, "parabolic cell exceeds the budget");
  std::vector<std::pair<int, int>> free, ppos;
  for (int j = k; j < n; ++j) free.push_back({k - 1, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i < n - 1 || j == n - 1) ppos.push_back({i, j});
  const auto us = detail::affine_family(MatFq::identity(Fp, n), free);
  Perm t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  std::swap(t[k - 1], t[n - 1]);
  const MatFq W = MatFq::permutation(Fp, t);
  auto for_each_p = [&](auto&& cb) {
    std::vector<Elem> g(n * n, 0), ginv(n * n, 0);
    auto with_h = [&](const Elem* h, const Elem* hinv) {
      const int m = n - 1;
      std::vector<Elem> v(m, 0);
      while (true) {
        for (Elem lam = 1; lam < F.q(); ++lam) {
          const Elem li = F.inv(lam);
          for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
              g[i * n + j] = h[i * m + j];
              ginv[i * n + j] = hinv[i * m + j];
            }
            g[i * n + m] = v[i];
            Elem s = 0;
            for (int j = 0; j < m; ++j) s = F.add(s, F.mul(hinv[i * m + j], v[j]));
            ginv[i * n + m] = F.neg(F.mul(s, li));
          }
          g[m * n + m] = lam;
          ginv[m * n + m] = li;
          cb(g.data(), ginv.data());
        }
        int i = 0;
        while (i < m && ++v[i] == F.q()) v[i++] = 0;
        if (i == m) break;
      }
    };
    if (n == 1) with_h(nullptr, nullptr);
    else {
      std::vector<Elem> hinv((n - 1) * (n - 1));
      enumerate_gl(
          Fp, n - 1,
          [&](const MatFq& hm) {
            small_inverse(F, n - 1, hm.data().data(), hinv.data());
            with_h(hm.data().data(), hinv.data());
          },
          UINT64_MAX);
    }
  };
  return histogram_to_cyclo(F.p(), detail::cell_core(a, b, us, W, ppos, ppos, for_each_p));
}

inline CycloInt cell_oracle(const MatFq& a, const CellSpec& spec, const OracleOptions& opt = {}) {
  return cell_oracle(a, MatFq::identity(a.field(), a.n()), spec, opt);
}

// ---- fibered evaluation for an irreducible characteristic polynomial ----
//
// L = F_q[a] is a field. For x in M_n let s(x) in L be the trace-form projection,
// tr(l x) = tr(l s(x)) for all l in L, read off from tau(x) = (tr(a^i x))_i.
// Every invertible x has either s(x) = 0 or x = m x' with m in L^*, s(x') = 1,
// and then psi(tr(ax + x^-1)) = psi(tr(am) + c(m^-1) . tau(x'^-1)), where c(l)
// are the coordinates of l in the basis a^i. Only the two fibers
// s = 0 and s = 1 (each of size q^(n^2 - n)) are enumerated.

inline CycloInt kloosterman_oracle_fibered(const MatFq& a, const OracleOptions& opt = {}) {
  const FieldCtx& F = a.F();
  const int n = a.n();
  const int nn = n * n;
  if (n < 1 || n > kMaxSmallDim) fail(Errc::DimensionMismatch, "fibered oracle dimension out of range");
  const FqPoly chi = char_poly(a);
  if (!is_irreducible_over(F, chi)) fail(Errc::RangeError, "fibered oracle needs an irreducible characteristic polynomial");
  const std::uint64_t q = F.q();
  const std::uint64_t fiber = detail::ipow(q, static_cast<unsigned>(nn - n));
  if (detail::checked_mul(fiber, 2) > opt.budget) fail(Errc::BudgetExceeded, "fiber enumeration exceeds the budget");
  const std::uint64_t qn = detail::ipow(q, static_cast<unsigned>(n));

  std::vector<MatFq> apow{MatFq::identity(a.field(), n)};
  for (int i = 1; i <= n; ++i) apow.push_back(apow.back() * a);

  // tau as an n x n^2 matrix on vec(x), coordinate j*n+k <-> x_jk
  std::vector<Elem> T(static_cast<std::size_t>(n) * nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) T[i * nn + j * n + k] = apow[i](k, j);
  detail::row_reduce(F, T, n, nn, nn);
  std::vector<int> pivots;
  for (int i = 0, c = 0; i < n && c < nn; ++c)
    if (T[i * nn + c]) {
      pivots.push_back(c);
      ++i;
    }
  if (static_cast<int>(pivots.size()) != n) fail(Errc::RangeError, "trace form is degenerate");
  std::vector<std::vector<Elem>> basis;
  for (int c = 0; c < nn; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    std::vector<Elem> v(nn, 0);
    v[c] = 1;
    for (int i = 0; i < n; ++i) v[pivots[i]] = F.neg(T[i * nn + c]);
    basis.push_back(std::move(v));
  }
  const int dimk = static_cast<int>(basis.size());

  // multiples[t][e] = e * basis[t]
  std::vector<Elem> mult(static_cast<std::size_t>(dimk) * q * nn);
  for (int t = 0; t < dimk; ++t)
    for (Elem e = 0; e < q; ++e)
      for (int c = 0; c < nn; ++c) mult[(t * q + e) * nn + c] = F.mul(e, basis[t][c]);

  auto sweep = [&](bool unit_fiber, auto&& visit) {
    std::vector<Elem> x(nn, 0), inv(nn);
    if (unit_fiber)
      for (int i = 0; i < n; ++i) x[i * n + i] = 1;
    std::vector<Elem> digit(dimk, 0);
    while (true) {
      if (small_inverse(F, n, x.data(), inv.data())) visit(inv.data());
      int t = 0;
      for (; t < dimk; ++t) {
        const Elem old = digit[t];
        const Elem nw = old + 1 == q ? 0 : old + 1;
        digit[t] = nw;
        const Elem* mo = &mult[(t * q + old) * nn];
        const Elem* mn = &mult[(t * q + nw) * nn];
        for (int c = 0; c < nn; ++c) x[c] = F.add(F.sub(x[c], mo[c]), mn[c]);
        if (nw) break;
      }
      if (t == dimk) break;
    }
  };

  Histogram h(F.p(), 0);
  sweep(false, [&](const Elem* y) {
    Elem t = 0;
    for (int i = 0; i < n; ++i) t = F.add(t, y[i * n + i]);
    ++h[F.abs_trace(t)];
  });

  std::vector<std::int64_t> H(qn, 0);
  sweep(true, [&](const Elem* y) {
    std::uint64_t key = 0;
    for (int i = n; i-- > 0;) {
      Elem t = 0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t = F.add(t, F.mul(apow[i](k, j), y[j * n + k]));
      key = key * q + t;
    }
    ++H[key];
  });

  // L arithmetic: polynomials in a reduced mod chi.
  std::vector<Elem> tr_pow(n + 1);
  for (int i = 0; i <= n; ++i) tr_pow[i] = apow[i].trace();
  VectorTable V(F, n);
  std::vector<Elem> u_of(qn), inv_key(qn);
  for (std::uint64_t m = 1; m < qn; ++m) {
    FqPoly mp(V[m], V[m] + n);
    fq::trim(mp);
    const FqPoly mi = fq::powmod(F, mp, qn - 2, chi);
    std::vector<Elem> c(n, 0);
    std::copy(mi.begin(), mi.end(), c.begin());
    inv_key[m] = static_cast<Elem>(V.index_of(c.data()));
    Elem u = 0;  // tr(a m) = sum_i m_i tr(a^{i+1})
    for (int i = 0; i < n; ++i) u = F.add(u, F.mul(V[m][i], tr_pow[i + 1]));
    u_of[m] = u;
  }
  for (std::uint64_t key = 0; key < qn; ++key) {
    if (!H[key]) continue;
    const Elem* tau = V[key];
    for (std::uint64_t m = 1; m < qn; ++m) {
      const Elem* c = V[inv_key[m]];
      Elem s = u_of[m];
      for (int i = 0; i < n; ++i) s = F.add(s, F.mul(c[i], tau[i]));
      h[F.abs_trace(s)] += H[key];
    }
  }
  return histogram_to_cyclo(F.p(), h);
}

}  // namespace kloost
