#pragma once

// Partitions, involutions with the N(w) statistic, q-analogues and the
// counting functions |GL_n(F_q)| and c_{k,l}(j).

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "kloost/error.hpp"
#include "kloost/intpoly.hpp"

namespace kloost {

/// Non-decreasing list of positive parts.
struct Partition {
  std::vector<int> parts;

  int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  bool empty() const { return parts.empty(); }

  bool is_canonical() const {
    return std::all_of(parts.begin(), parts.end(), [](int x) { return x > 0; }) &&
           std::is_sorted(parts.begin(), parts.end());
  }

  /// Drop zeros, sort; the form every recursion step returns to.
  static Partition canonical(std::vector<int> v) {
    if (std::any_of(v.begin(), v.end(), [](int x) { return x < 0; }))
      fail(Errc::NonCanonicalPartition, "negative part");
    std::erase(v, 0);
    std::sort(v.begin(), v.end());
    return Partition{std::move(v)};
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

namespace detail {
inline void gen_partitions(int remaining, int min_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{cur});
    return;
  }
  for (int k = min_part; k <= remaining; ++k) {
    if (remaining - k != 0 && remaining - k < k) continue;
    cur.push_back(k);
    gen_partitions(remaining - k, k, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All partitions of n, lexicographic in the non-decreasing form.
inline std::vector<Partition> partitions(int n) {
  if (n < 0) fail(Errc::RangeError, "negative partition size");
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::gen_partitions(n, 1, cur, out);
  return out;
}

/// All compositions (ordered block sizes) of n, lexicographic.
inline std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= rem; ++k) {
      cur.push_back(k);
      self(self, rem - k);
      cur.pop_back();
    }
  };
  if (n > 0) rec(rec, n);
  return out;
}

// Permutations are 0-based images: perm[i] = w(i).
using Perm = std::vector<int>;

inline bool is_permutation_vec(const Perm& w) {
  std::vector<bool> seen(w.size(), false);
  for (int v : w) {
    if (v < 0 || v >= static_cast<int>(w.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline bool is_involution(const Perm& w) {
  if (!is_permutation_vec(w)) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[w[i]] != static_cast<int>(i)) return false;
  return true;
}

inline Perm perm_inverse(const Perm& w) {
  Perm r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[w[i]] = static_cast<int>(i);
  return r;
}

/// N(w) = #{(i,j): i<j, w(j) < w(i) <= j}, in 1-based terms; literal double loop.
inline int n_stat(const Perm& w) {
  if (!is_involution(w)) fail(Errc::NotInvolution, "n_stat needs w^2 = 1");
  int count = 0;
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w[j] < w[i] && w[i] <= j) ++count;
  return count;
}

struct Involution {
  Perm map;
  int e = 0;  // 2-cycles
  int f = 0;  // fixed points
  int N = 0;

  static Involution from_map(Perm w) {
    if (!is_involution(w)) fail(Errc::NotInvolution, "not an involution");
    Involution inv;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == static_cast<int>(i)) ++inv.f;
      else if (w[i] > static_cast<int>(i)) ++inv.e;
    }
    inv.N = n_stat(w);
    inv.map = std::move(w);
    return inv;
  }
};

/// Cycle notation with 1-based letters, "I" for the identity, e.g. "(14)(23)".
/// Letters are single digits for n <= 9, otherwise comma separated.
inline std::string perm_to_cycles(const Perm& w) {
  std::string out;
  std::vector<bool> seen(w.size(), false);
  const bool wide = w.size() > 9;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (seen[i] || w[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = w[j]) {
      seen[j] = true;
      if (wide && out.back() != '(') out += ",";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "I" : out;
}

/// Parses "I", "(13)", "(14)(23)" or "(1,10)" into a permutation of size n.
inline Perm perm_from_cycles(const std::string& s, int n) {
  Perm w(n);
  std::iota(w.begin(), w.end(), 0);
  if (s == "I" || s == "e" || s.empty()) return w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') fail(Errc::ParseError, "bad cycle string: " + s);
    const auto close = s.find(')', pos);
    if (close == std::string::npos) fail(Errc::ParseError, "unclosed cycle: " + s);
    const std::string body = s.substr(pos + 1, close - pos - 1);
    std::vector<int> letters;
    if (body.find(',') != std::string::npos) {
      std::size_t b = 0;
      while (b <= body.size()) {
        auto e = body.find(',', b);
        if (e == std::string::npos) e = body.size();
        letters.push_back(std::stoi(body.substr(b, e - b)));
        b = e + 1;
      }
    } else {
      for (char c : body) {
        if (c < '1' || c > '9') fail(Errc::ParseError, "bad cycle letter in " + s);
        letters.push_back(c - '0');
      }
    }
    for (std::size_t k = 0; k < letters.size(); ++k) {
      const int from = letters[k] - 1, to = letters[(k + 1) % letters.size()] - 1;
      if (from < 0 || from >= n || to < 0 || to >= n) fail(Errc::ParseError, "cycle letter out of range: " + s);
      w[from] = to;
    }
    pos = close + 1;
  }
  if (!is_permutation_vec(w)) fail(Errc::ParseError, "cycles overlap: " + s);
  return w;
}

/// All involutions of S_n. Generated by pairing the smallest free letter.
inline std::vector<Involution> involutions(int n) {
  std::vector<Involution> out;
  Perm w(n, -1);
  auto rec = [&](auto&& self) -> void {
    int i = 0;
    while (i < n && w[i] >= 0) ++i;
    if (i == n) {
      out.push_back(Involution::from_map(w));
      return;
    }
    w[i] = i;
    self(self);
    for (int j = i + 1; j < n; ++j) {
      if (w[j] >= 0) continue;
      w[i] = j;
      w[j] = i;
      self(self);
      w[j] = -1;
    }
    w[i] = -1;
  };
  rec(rec);
  return out;
}

/// All permutations of S_n in lexicographic order.
inline std::vector<Perm> permutations(int n) {
  Perm w(n);
  std::iota(w.begin(), w.end(), 0);
  std::vector<Perm> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// ---- q-analogues ----

/// [m]_q = 1 + q + ... + q^{m-1}
inline IntPoly q_int(int m) { return IntPoly(static_cast<std::size_t>(std::max(m, 0)), BigInt(1)); }

inline IntPoly q_factorial(int m) {
  IntPoly r{1};
  for (int i = 2; i <= m; ++i) r = ipoly_mul(r, q_int(i));
  return r;
}

inline IntPoly q_binomial(int k, int l) {
  if (k < 0 || l < 0 || l > k) fail(Errc::RangeError, "q_binomial needs 0 <= l <= k");
  return ipoly_div_exact(q_factorial(k), ipoly_mul(q_factorial(l), q_factorial(k - l)));
}

inline BigInt big_pow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i)
inline BigInt gl_order(int n, const BigInt& q) {
  if (n < 0) fail(Errc::RangeError, "negative dimension");
  BigInt qn = big_pow(q, static_cast<unsigned>(n)), qi = 1, r = 1;
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

/// Number of k x l matrices over F_q of rank j.
inline BigInt rank_count(int k, int l, int j, const BigInt& q) {
  if (k < 0 || l < 0 || j < 0 || j > std::min(k, l)) fail(Errc::RangeError, "rank_count needs 0 <= j <= min(k,l)");
  const IntPoly num = ipoly_mul(q_factorial(k), q_factorial(l));
  const IntPoly den = ipoly_mul(ipoly_mul(q_factorial(k - j), q_factorial(l - j)), q_factorial(j));
  const BigInt ratio = ipoly_eval(ipoly_div_exact(num, den), q);
  return big_pow(q - 1, j) * big_pow(q, j * (j - 1) / 2) * ratio;
}

}  // namespace kloost
