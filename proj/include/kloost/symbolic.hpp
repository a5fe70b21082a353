#pragma once

// Characteristic-free polynomials for K_n(alpha I + nilpotent): the partition
// recursion, the involution sum for the scalar case, the one-block Chebyshev
// form, and Bruhat-cell polynomials.

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "kloost/combinat.hpp"
#include "kloost/kpoly.hpp"
#include "kloost/matrix.hpp"

namespace kloost {

namespace detail {

inline std::mutex& partition_memo_mutex() {
  static std::mutex m;
  return m;
}
inline std::map<Partition, KPoly>& partition_memo() {
  static std::map<Partition, KPoly> memo;
  return memo;
}

inline KPoly compute_partition_poly(const Partition& lambda);

}  // namespace detail

/// P_lambda(A, G, K) for a canonical (non-decreasing) partition.
inline KPoly partition_poly(const Partition& lambda) {
  if (!lambda.is_canonical()) fail(Errc::NonCanonicalPartition, "partition " + lambda.to_string() + " is not canonical");
  {
    std::lock_guard lock(detail::partition_memo_mutex());
    auto& memo = detail::partition_memo();
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
  }
  KPoly r = detail::compute_partition_poly(lambda);
  std::lock_guard lock(detail::partition_memo_mutex());
  detail::partition_memo().emplace(lambda, r);
  return r;
}

inline KPoly detail::compute_partition_poly(const Partition& lambda) {
  const auto& v = lambda.parts;
  const int n = lambda.size();
  if (n == 0) return KPoly(1);
  if (v == std::vector<int>{1}) return KPoly::K();
  const KPoly A = KPoly::A(), K = KPoly::K();
  const KPoly An1 = KPoly::A(n - 1), A2n2 = KPoly::A(2 * n - 2);

  if (v.back() == 1) {
    // scalar: [1^n]
    const Partition p1{std::vector<int>(n - 1, 1)}, p2{std::vector<int>(n - 2, 1)};
    return An1 * K * partition_poly(p1) + A2n2 * (An1 - KPoly(1)) * partition_poly(p2);
  }

  const int top = v.back();
  int kl = 0;
  for (int x : v) kl += x == top;
  std::vector<int> rest(v.begin(), v.end() - kl);

  auto build = [&](std::vector<int> tail) {
    std::vector<int> w = rest;
    w.insert(w.end(), tail.begin(), tail.end());
    return Partition::canonical(std::move(w));
  };
  std::vector<int> tops(kl - 1, top);
  auto with = [&](std::vector<int> head) {
    head.insert(head.end(), tops.begin(), tops.end());
    return build(std::move(head));
  };
  const Partition l1 = with({top - 1}), l2 = with({top - 2});
  KPoly r = An1 * K * partition_poly(l1) - A2n2 * partition_poly(l2);
  if (kl > 1) {
    std::vector<int> t3{top - 1, top - 1};
    t3.insert(t3.end(), kl - 2, top);
    const Partition l3 = build(t3);
    r -= (KPoly::A(kl - 1) - KPoly(1)) * A2n2 * (partition_poly(l2) - partition_poly(l3));
  }
  return r;
}

/// sum over involutions w of A^{n(n-1)/2 + N(w)} G^{e(w)} K^{f(w)}
inline KPoly involution_closed_form(int n) {
  if (n < 1) fail(Errc::RangeError, "involution_closed_form needs n >= 1");
  KPoly r;
  for (const auto& w : involutions(n)) r += KPoly::mono(n * (n - 1) / 2 + w.N, w.e, w.f);
  return r;
}

/// A^{n(n-1)/2} k_n with k_0 = 1, k_1 = K, k_n = K k_{n-1} - A k_{n-2}.
inline KPoly single_block_poly(int n) {
  if (n < 0) fail(Errc::RangeError, "single_block_poly needs n >= 0");
  KPoly prev(1), cur = KPoly::K();
  if (n == 0) return prev;
  for (int m = 2; m <= n; ++m) {
    KPoly nxt = KPoly::K() * cur - KPoly::A() * prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return KPoly::A(n * (n - 1) / 2) * cur;
}

/// Cell polynomial of the transposition (i j), 1-based i < j, for alpha I +
/// abar where abar has superdiagonal eps from the composition `blocks`.
inline KPoly transposition_cell_poly(const std::vector<int>& blocks, int i, int j) {
  int n = 0;
  for (int b : blocks) {
    if (b <= 0) fail(Errc::EmptyPartition, "block sizes must be positive");
    n += b;
  }
  if (n < 2 || i < 1 || j > n || i >= j) fail(Errc::RangeError, "transposition needs 1 <= i < j <= n");
  const auto eps = epsilon_of(blocks);
  auto e = [&](int idx) { return eps[idx - 1]; };  // eps_idx, 1-based
  const KPoly head = KPoly::A(n * (n - 1) / 2) * KPoly::K(n - 2);
  if (j == i + 1) return e(i) == 0 ? head * KPoly::G() * KPoly::A() : -(head * KPoly::A());
  if (e(i) != 0 || e(j - 1) != 0) return KPoly{};
  int d = 0;
  for (int k = i + 1; k < j - 1; ++k) d += e(k) != 0;
  return head * KPoly::G() * KPoly::A(j - i - d);
}

inline KPoly transposition_cell_poly(const Partition& lambda, int i, int j) {
  if (!lambda.is_canonical()) fail(Errc::NonCanonicalPartition, "partition is not canonical");
  return transposition_cell_poly(lambda.parts, i, j);
}

struct CellPoly {
  std::vector<int> blocks;  // composition fixing the superdiagonal
  Involution w;
  KPoly poly;
};

namespace detail {

struct CellRow {
  std::vector<int> blocks;
  std::vector<const char*> polys;
};

inline std::vector<CellPoly> build_table(int n, const std::vector<const char*>& cols, const std::vector<CellRow>& rows) {
  std::vector<CellPoly> out;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < cols.size(); ++c)
      out.push_back({row.blocks, Involution::from_map(perm_from_cycles(cols[c], n)), parse_kpoly(row.polys[c])});
  return out;
}

}  // namespace detail

/// Golden Bruhat-cell tables for n = 2, 3, 4: every involution w and every
/// composition of n. Cells with w^2 != 1 vanish and are not listed.
inline std::vector<CellPoly> cell_table(int n) {
  using detail::CellRow;
  if (n == 2)
    return detail::build_table(2, {"(12)", "I"}, {{{1, 1}, {"q^2(q-1)", "qK^2"}}, {{2}, {"-q^2", "qK^2"}}});
  if (n == 3)
    // The [2,1] and [1,2] rows follow the superdiagonal convention of
    // jordan_matrix (eps_j = 0 at block ends); brute force confirms this order.
    return detail::build_table(3, {"(13)", "(12)", "(23)", "I"},
                               {{{1, 1, 1}, {"q^5(q-1)K", "q^4(q-1)K", "q^4(q-1)K", "q^3K^3"}},
                                {{2, 1}, {"0", "-q^4K", "q^4(q-1)K", "q^3K^3"}},
                                {{1, 2}, {"0", "q^4(q-1)K", "-q^4K", "q^3K^3"}},
                                {{3}, {"0", "-q^4K", "-q^4K", "q^3K^3"}}});
  if (n == 4)
    return detail::build_table(
        4, {"(14)(23)", "(13)(24)", "(12)(34)", "(14)", "(13)", "(24)", "(12)", "(23)", "(34)", "I"},
        {{{1, 1, 1, 1},
          {"q^10(q-1)^2", "q^9(q-1)^2", "q^8(q-1)^2", "q^9(q-1)K^2", "q^8(q-1)K^2", "q^8(q-1)K^2", "q^7(q-1)K^2",
           "q^7(q-1)K^2", "q^7(q-1)K^2", "q^6K^4"}},
         {{2, 1, 1},
          {"0", "0", "-q^8(q-1)", "0", "0", "q^8(q-1)K^2", "-q^7K^2", "q^7(q-1)K^2", "q^7(q-1)K^2", "q^6K^4"}},
         {{1, 2, 1},
          {"-q^9(q-1)", "0", "q^8(q-1)^2", "q^8(q-1)K^2", "0", "0", "q^7(q-1)K^2", "-q^7K^2", "q^7(q-1)K^2",
           "q^6K^4"}},
         {{1, 1, 2},
          {"0", "0", "-q^8(q-1)", "0", "q^8(q-1)K^2", "0", "q^7(q-1)K^2", "q^7(q-1)K^2", "-q^7K^2", "q^6K^4"}},
         {{3, 1}, {"0", "0", "-q^8(q-1)", "0", "0", "0", "-q^7K^2", "-q^7K^2", "q^7(q-1)K^2", "q^6K^4"}},
         {{2, 2}, {"0", "q^9(q-1)", "q^8", "0", "0", "0", "-q^7K^2", "q^7(q-1)K^2", "-q^7K^2", "q^6K^4"}},
         {{1, 3}, {"0", "0", "-q^8(q-1)", "0", "0", "0", "q^7(q-1)K^2", "-q^7K^2", "-q^7K^2", "q^6K^4"}},
         {{4}, {"0", "0", "q^8", "0", "0", "0", "-q^7K^2", "-q^7K^2", "-q^7K^2", "q^6K^4"}}});
  fail(Errc::RangeError, "cell tables exist for n = 2, 3, 4 only");
}

inline std::vector<CellPoly> n4_cell_table() { return cell_table(4); }

/// Table entry for (blocks, w); zero when w^2 != 1.
inline KPoly cell_table_lookup(const std::vector<int>& blocks, const Perm& w) {
  if (!is_involution(w)) return KPoly{};
  for (const auto& c : cell_table(static_cast<int>(w.size())))
    if (c.blocks == blocks && c.w.map == w) return c.poly;
  fail(Errc::RangeError, "no table entry for this composition");
}

}  // namespace kloost
