#pragma once

// Row-by-row enumeration of GL_n(F_q): each row is drawn from F_q^n (indexed by
// its base-q code) and must avoid the span of the rows above it.

#include <cstdint>
#include <functional>
#include <vector>

#include "kloost/matrix.hpp"

namespace kloost {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 36;

/// All vectors of F_q^n, entry k of vector v is digit k of v in base q.
class VectorTable {
 public:
  VectorTable(const FieldCtx& F, int n) : F_(&F), n_(n) {
    count_ = 1;
    for (int i = 0; i < n; ++i) count_ *= F.q();
    if (count_ > (std::uint64_t{1} << 26)) fail(Errc::BudgetExceeded, "vector table too large");
    v_.resize(count_ * n);
    for (std::uint64_t idx = 0; idx < count_; ++idx) {
      std::uint64_t x = idx;
      for (int k = 0; k < n; ++k) {
        v_[idx * n + k] = static_cast<Elem>(x % F.q());
        x /= F.q();
      }
    }
  }

  std::uint64_t size() const noexcept { return count_; }
  int dim() const noexcept { return n_; }
  const Elem* operator[](std::uint64_t idx) const { return &v_[idx * n_]; }

  std::uint64_t index_of(const Elem* v) const {
    std::uint64_t idx = 0;
    for (int k = n_; k-- > 0;) idx = idx * F_->q() + v[k];
    return idx;
  }

  /// index of s + c*r
  std::uint64_t axpy(std::uint64_t s, Elem c, std::uint64_t r) const {
    std::uint64_t idx = 0;
    const Elem* vs = (*this)[s];
    const Elem* vr = (*this)[r];
    for (int k = n_; k-- > 0;) idx = idx * F_->q() + F_->add(vs[k], F_->mul(c, vr[k]));
    return idx;
  }

 private:
  const FieldCtx* F_;
  int n_;
  std::uint64_t count_ = 0;
  std::vector<Elem> v_;
};

struct EnumRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = UINT64_MAX;  // first-row index range [lo, hi)
};

inline void check_budget(int n, const FieldCtx& F, std::uint64_t budget) {
  if (gl_order(n, F.q()) > budget)
    fail(Errc::BudgetExceeded, "|GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) + ")| exceeds the budget of " +
                                   std::to_string(budget) + " summands");
}

/// Depth-first walk over independent row tuples. `leaf_depth` rows are chosen;
/// `on_leaf` receives the chosen row indices. With leaf_depth == n this visits GL_n.
template <class OnLeaf>
void walk_independent_rows(const VectorTable& V, const FieldCtx& F, int leaf_depth, EnumRange range, OnLeaf&& on_leaf) {
  std::vector<std::uint64_t> rows(leaf_depth);
  std::vector<std::vector<std::uint64_t>> span(leaf_depth + 1);
  std::vector<std::uint8_t> mark(V.size(), 0);
  span[0] = {0};
  auto rec = [&](auto&& self, int d) -> void {
    if (d == leaf_depth) {
      on_leaf(static_cast<const std::vector<std::uint64_t>&>(rows));
      return;
    }
    for (auto s : span[d]) mark[s] = 1;
    std::uint64_t lo = 0, hi = V.size();
    if (d == 0) {
      lo = std::min(range.lo, hi);
      hi = std::min(range.hi, hi);
    }
    // A child clears every mark on return, so ours are restored after each call.
    for (std::uint64_t v = lo; v < hi; ++v) {
      if (mark[v]) continue;
      rows[d] = v;
      if (d + 1 < leaf_depth) {
        auto& nxt = span[d + 1];
        nxt.clear();
        for (auto s : span[d])
          for (Elem c = 0; c < F.q(); ++c) nxt.push_back(V.axpy(s, c, v));
        for (auto s : span[d]) mark[s] = 0;
        self(self, d + 1);
        for (auto s : span[d]) mark[s] = 1;
      } else {
        self(self, d + 1);
      }
    }
    for (auto s : span[d]) mark[s] = 0;
  };
  rec(rec, 0);
}

/// Visit every invertible n x n matrix exactly once, rows in ascending index order.
inline std::uint64_t enumerate_gl(const FieldPtr& F, int n, const std::function<void(const MatFq&)>& visit,
                                  std::uint64_t budget = kDefaultBudget, EnumRange range = {}) {
  if (n < 1) fail(Errc::DimensionMismatch, "enumerate_gl needs n >= 1");
  check_budget(n, *F, budget);
  VectorTable V(*F, n);
  std::uint64_t count = 0;
  MatFq x(F, n);
  walk_independent_rows(V, *F, n, range, [&](const std::vector<std::uint64_t>& rows) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) x.at(i, k) = V[rows[i]][k];
    ++count;
    if (visit) visit(x);
  });
  return count;
}

}  // namespace kloost
