#pragma once

// Square matrices over F_q and their spectral classification.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kloost/combinat.hpp"
#include "kloost/fqpoly.hpp"

namespace kloost {

class MatFq {
 public:
  MatFq(FieldPtr F, int n) : F_(std::move(F)), n_(n), e_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) fail(Errc::DimensionMismatch, "negative dimension");
  }

  static MatFq scalar(FieldPtr F, int n, Elem a) {
    MatFq m(std::move(F), n);
    for (int i = 0; i < n; ++i) m.at(i, i) = a;
    return m;
  }
  static MatFq identity(FieldPtr F, int n) { return scalar(std::move(F), n, 1); }

  /// Integer rows; each entry is reduced into the prime field.
  static MatFq from_rows(FieldPtr F, const std::vector<std::vector<long long>>& rows) {
    const int n = static_cast<int>(rows.size());
    MatFq m(F, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) fail(Errc::DimensionMismatch, "matrix must be square");
      for (int j = 0; j < n; ++j) m.at(i, j) = F->from_int(rows[i][j]);
    }
    return m;
  }

  /// E_{ij} with 0-based indices.
  static MatFq unit(FieldPtr F, int n, int i, int j) {
    MatFq m(std::move(F), n);
    m.at(i, j) = 1;
    return m;
  }

  /// w_pi = sum_j e_{pi(j), j}
  static MatFq permutation(FieldPtr F, const Perm& w) {
    MatFq m(std::move(F), static_cast<int>(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j) m.at(w[j], static_cast<int>(j)) = 1;
    return m;
  }

  int n() const noexcept { return n_; }
  const FieldPtr& field() const noexcept { return F_; }
  const FieldCtx& F() const noexcept { return *F_; }

  Elem operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  Elem& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<Elem>& data() const noexcept { return e_; }

  bool is_zero() const {
    for (Elem x : e_)
      if (x) return false;
    return true;
  }

  Elem trace() const {
    Elem t = 0;
    for (int i = 0; i < n_; ++i) t = F_->add(t, (*this)(i, i));
    return t;
  }

  MatFq transpose() const {
    MatFq r(F_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = (*this)(i, j);
    return r;
  }

  friend MatFq operator+(const MatFq& a, const MatFq& b) {
    a.check_same(b);
    MatFq r(a.F_, a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.F_->add(a.e_[k], b.e_[k]);
    return r;
  }
  friend MatFq operator-(const MatFq& a, const MatFq& b) {
    a.check_same(b);
    MatFq r(a.F_, a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.F_->sub(a.e_[k], b.e_[k]);
    return r;
  }
  MatFq operator-() const {
    MatFq r(F_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = F_->neg(e_[k]);
    return r;
  }
  friend MatFq operator*(const MatFq& a, const MatFq& b) {
    a.check_same(b);
    const FieldCtx& F = *a.F_;
    MatFq r(a.F_, a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Elem x = a(i, k);
        if (!x) continue;
        for (int j = 0; j < a.n_; ++j) r.at(i, j) = F.add(r(i, j), F.mul(x, b(k, j)));
      }
    return r;
  }
  friend MatFq operator*(Elem c, const MatFq& a) {
    MatFq r(a.F_, a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.F_->mul(c, a.e_[k]);
    return r;
  }
  friend bool operator==(const MatFq& a, const MatFq& b) {
    return a.n_ == b.n_ && a.F_->same_as(*b.F_) && a.e_ == b.e_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same(const MatFq& b) const {
    if (n_ != b.n_) fail(Errc::DimensionMismatch, "matrix dimensions differ");
    if (!F_->same_as(*b.F_)) fail(Errc::FieldMismatch, "matrices over different fields");
  }

  FieldPtr F_;
  int n_;
  std::vector<Elem> e_;
};

inline MatFq mat_pow(const MatFq& a, unsigned e) {
  MatFq r = MatFq::identity(a.field(), a.n()), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

namespace detail {
// Row reduction in place; returns rank and the determinant of the square part.
struct Elim {
  int rank = 0;
  Elem det = 1;
};

inline Elim row_reduce(const FieldCtx& F, std::vector<Elem>& m, int rows, int cols, int square_cols) {
  Elim out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i * cols + c]) {
        piv = i;
        break;
      }
    if (piv < 0) {
      if (c < square_cols) out.det = 0;
      continue;
    }
    if (piv != r) {
      for (int j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
      out.det = F.neg(out.det);
    }
    const Elem pv = m[r * cols + c];
    if (c < square_cols) out.det = F.mul(out.det, pv);
    const Elem inv = F.inv(pv);
    for (int j = 0; j < cols; ++j) m[r * cols + j] = F.mul(m[r * cols + j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = m[i * cols + c];
      if (!factor) continue;
      for (int j = 0; j < cols; ++j) m[i * cols + j] = F.sub(m[i * cols + j], F.mul(factor, m[r * cols + j]));
    }
    ++r;
  }
  out.rank = r;
  if (r < square_cols) out.det = 0;
  return out;
}
}  // namespace detail

inline int rank(const MatFq& a) {
  std::vector<Elem> m = a.data();
  return detail::row_reduce(a.F(), m, a.n(), a.n(), a.n()).rank;
}

inline Elem det(const MatFq& a) {
  std::vector<Elem> m = a.data();
  return detail::row_reduce(a.F(), m, a.n(), a.n(), a.n()).det;
}

inline std::optional<MatFq> try_inverse(const MatFq& a) {
  const int n = a.n();
  std::vector<Elem> m(static_cast<std::size_t>(n) * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i * 2 * n + j] = a(i, j);
    m[i * 2 * n + n + i] = 1;
  }
  auto e = detail::row_reduce(a.F(), m, n, 2 * n, n);
  if (e.rank < n || e.det == 0) return std::nullopt;
  MatFq r(a.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = m[i * 2 * n + n + j];
  return r;
}

inline MatFq mat_inverse(const MatFq& a) {
  auto r = try_inverse(a);
  if (!r) fail(Errc::SingularMatrix, "matrix is singular");
  return *r;
}

/// Basis of the right kernel {v : a v = 0}.
inline std::vector<std::vector<Elem>> kernel_basis(const MatFq& a) {
  const int n = a.n();
  const FieldCtx& F = a.F();
  std::vector<Elem> m = a.data();
  detail::row_reduce(F, m, n, n, n);
  std::vector<int> pivot_col_of_row, is_pivot(n, 0);
  for (int i = 0; i < n; ++i) {
    int c = 0;
    while (c < n && !m[i * n + c]) ++c;
    if (c == n) break;
    pivot_col_of_row.push_back(c);
    is_pivot[c] = 1;
  }
  std::vector<std::vector<Elem>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) v[pivot_col_of_row[r]] = F.neg(m[r * n + free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// det(xI - a) via reduction to upper Hessenberg form.
inline FqPoly char_poly(const MatFq& a) {
  const int n = a.n();
  const FieldCtx& F = a.F();
  std::vector<Elem> H = a.data();
  auto h = [&](int i, int j) -> Elem& { return H[i * n + j]; };
  for (int c = 0; c + 2 < n; ++c) {
    int piv = -1;
    for (int i = c + 1; i < n; ++i)
      if (h(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      for (int j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
      for (int i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
    }
    const Elem inv = F.inv(h(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      const Elem u = F.mul(h(i, c), inv);
      if (!u) continue;
      for (int j = 0; j < n; ++j) h(i, j) = F.sub(h(i, j), F.mul(u, h(c + 1, j)));
      for (int r = 0; r < n; ++r) h(r, c + 1) = F.add(h(r, c + 1), F.mul(u, h(r, i)));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{im} (prod_{k=i+1}^{m} h_{k,k-1}) p_{i-1}
  std::vector<FqPoly> P(n + 1);
  P[0] = {1};
  for (int m = 1; m <= n; ++m) {
    FqPoly cur = fq::mul(F, FqPoly{F.neg(h(m - 1, m - 1)), 1}, P[m - 1]);
    Elem t = 1;
    for (int i = m - 1; i >= 1; --i) {
      t = F.mul(t, h(i, i - 1));
      if (!t) break;
      const Elem coef = F.mul(t, h(i - 1, m - 1));
      cur = fq::sub(F, cur, fq::scale(F, P[i - 1], coef));
    }
    P[m] = std::move(cur);
  }
  return P[n];
}

/// Companion matrix with ones on the superdiagonal and last row -c_0..-c_{n-1}.
inline MatFq companion(FieldPtr F, const FqPoly& monic_poly) {
  const int n = fq::deg(monic_poly);
  if (n < 1 || monic_poly.back() != 1) fail(Errc::DegreeMismatch, "companion needs a monic polynomial of degree >= 1");
  MatFq m(F, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = F->neg(monic_poly[j]);
  return m;
}

inline MatFq block_diag(const std::vector<MatFq>& blocks) {
  if (blocks.empty()) fail(Errc::DimensionMismatch, "no blocks");
  int n = 0;
  for (const auto& b : blocks) n += b.n();
  MatFq m(blocks[0].field(), n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) m.at(off + i, off + j) = b(i, j);
    off += b.n();
  }
  return m;
}

/// Superdiagonal flags eps_1..eps_{n-1}; zero exactly at the block boundaries
/// of the composition (ordered block sizes).
inline std::vector<int> epsilon_of(const std::vector<int>& blocks) {
  std::vector<int> eps;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int k = 1; k < blocks[b]; ++k) eps.push_back(1);
    if (b + 1 < blocks.size()) eps.push_back(0);
  }
  return eps;
}

/// alpha I + sum eps_j e_{j,j+1}; blocks taken in the given order.
inline MatFq jordan_matrix(FieldPtr F, const std::vector<int>& blocks, Elem alpha) {
  if (blocks.empty()) fail(Errc::EmptyPartition, "jordan_matrix needs at least one block");
  int n = 0;
  for (int b : blocks) {
    if (b <= 0) fail(Errc::EmptyPartition, "block sizes must be positive");
    n += b;
  }
  MatFq m = MatFq::scalar(F, n, alpha);
  const auto eps = epsilon_of(blocks);
  for (int j = 0; j + 1 < n; ++j) m.at(j, j + 1) = static_cast<Elem>(eps[j]);
  return m;
}

inline MatFq jordan_matrix(FieldPtr F, const Partition& lambda, Elem alpha) {
  return jordan_matrix(std::move(F), lambda.parts, alpha);
}

struct JordanData {
  std::map<Elem, Partition> blocks;
  bool split = true;
  FqPoly cofactor{1};

  friend bool operator==(const JordanData&, const JordanData&) = default;
};

/// Eigenvalue partitions from d_k = dim ker (a - alpha)^k.
inline JordanData jordan_data(const MatFq& a) {
  const FieldCtx& F = a.F();
  const int n = a.n();
  JordanData out;
  auto roots = poly_roots(F, char_poly(a));
  out.cofactor = roots.cofactor;
  out.split = fq::deg(roots.cofactor) == 0;
  for (const auto& [alpha, mult] : roots.roots) {
    const MatFq N = a - MatFq::scalar(a.field(), n, alpha);
    std::vector<int> ge{0};  // ge[k] = d_k
    MatFq P = MatFq::identity(a.field(), n);
    while (ge.back() < mult) {
      P = P * N;
      ge.push_back(n - rank(P));
    }
    std::vector<int> parts;
    const int K = static_cast<int>(ge.size()) - 1;
    for (int k = 1; k <= K; ++k) {
      const int at_least_k = ge[k] - ge[k - 1];
      const int at_least_k1 = k < K ? ge[k + 1] - ge[k] : 0;
      for (int c = 0; c < at_least_k - at_least_k1; ++c) parts.push_back(k);
    }
    out.blocks[alpha] = Partition::canonical(parts);
  }
  return out;
}

enum class SpectralTag {
  Zero,
  Nilpotent,
  Scalar,
  SplitSingleEigenvalue,
  SplitGeneral,
  RegularSplitSemisimple,
  IrreducibleCharPoly,
  NonSplitMixed,
  Singular
};

inline const char* spectral_tag_name(SpectralTag t) {
  switch (t) {
    case SpectralTag::Zero: return "Zero";
    case SpectralTag::Nilpotent: return "Nilpotent";
    case SpectralTag::Scalar: return "Scalar";
    case SpectralTag::SplitSingleEigenvalue: return "SplitSingleEigenvalue";
    case SpectralTag::SplitGeneral: return "SplitGeneral";
    case SpectralTag::RegularSplitSemisimple: return "RegularSplitSemisimple";
    case SpectralTag::IrreducibleCharPoly: return "IrreducibleCharPoly";
    case SpectralTag::NonSplitMixed: return "NonSplitMixed";
    case SpectralTag::Singular: return "Singular";
  }
  return "?";
}

struct SpectralClass {
  SpectralTag tag;
  Elem alpha = 0;  // meaningful for Scalar and SplitSingleEigenvalue
  JordanData data;
};

inline SpectralClass classify(const MatFq& a) {
  SpectralClass c{SpectralTag::SplitGeneral, 0, jordan_data(a)};
  const auto& jd = c.data;
  const int n = a.n();
  if (a.is_zero()) c.tag = SpectralTag::Zero;
  else if (jd.split && jd.blocks.size() == 1 && jd.blocks.begin()->first == 0) c.tag = SpectralTag::Nilpotent;
  else if (jd.split && jd.blocks.size() == 1) {
    c.alpha = jd.blocks.begin()->first;
    c.tag = a == MatFq::scalar(a.field(), n, c.alpha) ? SpectralTag::Scalar : SpectralTag::SplitSingleEigenvalue;
  } else if (jd.split) {
    c.tag = static_cast<int>(jd.blocks.size()) == n ? SpectralTag::RegularSplitSemisimple : SpectralTag::SplitGeneral;
  } else if (jd.blocks.contains(0)) {
    c.tag = SpectralTag::Singular;
  } else if (jd.blocks.empty() && is_irreducible_over(a.F(), jd.cofactor)) {
    c.tag = SpectralTag::IrreducibleCharPoly;
  } else {
    c.tag = SpectralTag::NonSplitMixed;
  }
  return c;
}

}  // namespace kloost
