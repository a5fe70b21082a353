// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "kloost/kloost.hpp"

using namespace kloost;

namespace {

struct Instance {
  MatFq a, b;
  CycloInt value;
  bool conjectural;
  std::string label;
};

// exact values from criteria 1-6, re-checked against the bounds in criterion 8
std::vector<Instance> g_values;

void record(const MatFq& a, const MatFq& b, const CycloInt& v, const std::string& label, bool conj = false) {
  g_values.push_back({a, b, v, conj, label});
}

void record(const MatFq& a, const CycloInt& v, const std::string& label, bool conj = false) {
  record(a, MatFq::identity(a.field(), a.n()), v, label, conj);
}

class Checks {
 public:
  void operator()(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  int count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::vector<std::string> notes;

 private:
  int count_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << x;
  return os.str();
}

MatFq random_matrix(const FieldPtr& F, int n, std::mt19937_64& rng) {
  MatFq m(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<Elem>(rng() % F->q());
  return m;
}

MatFq random_invertible(const FieldPtr& F, int n, std::mt19937_64& rng) {
  while (true) {
    MatFq m = random_matrix(F, n, rng);
    if (det(m) != 0) return m;
  }
}

MatFq random_of_rank(const FieldPtr& F, int n, int r, std::mt19937_64& rng) {
  while (true) {
    MatFq m = random_matrix(F, n, rng);
    if (rank(m) == r) return m;
  }
}

const Policy kEverything{true, true, {}};

// ---- 1: every 2x2 class representative ----

void criterion1(Checks& c) {
  const KPoly scalar_row = parse_kpoly("q^3-q^2+K^2q"), jordan_row = parse_kpoly("-q^2+K^2q");
  c(scalar_row.equivalent(partition_poly(Partition{{1, 1}})), "scalar row polynomial");
  c(jordan_row.equivalent(partition_poly(Partition{{2}})), "Jordan row polynomial");
  for (unsigned q : {3u, 5u, 7u}) {
    const FieldPtr F = make_field(q, 1);
    const BigInt Q = q;
    auto K = [&](Elem x) { return k1_sum(*F, x); };
    const std::string tag = " q=" + std::to_string(q);
    auto both = [&](const MatFq& a, const CycloInt& expected, const std::string& what) {
      const EvalResult r = eval_kn(a, kEverything);
      const CycloInt o = kloosterman_oracle(a);
      c(r.value == o, what + tag + ": formula vs oracle");
      c(expected == o, what + tag + ": table row vs oracle");
      c(r.kind == ProvenanceKind::Formula, what + tag + ": exact formula path");
      record(a, r.value, what + tag);
    };
    for (Elem al = 0; al < q; ++al)
      for (Elem be = al + 1; be < q; ++be)
        both(MatFq::from_rows(F, {{al, 0}, {0, be}}), K(al) * K(be) * Q, "diag(" + std::to_string(al) + "," + std::to_string(be) + ")");
    for (Elem al = 1; al < q; ++al) {
      both(MatFq::scalar(F, 2, al), scalar_row.eval(Q, K(al)), "scalar " + std::to_string(al));
      both(MatFq::from_rows(F, {{al, 1}, {0, al}}), jordan_row.eval(Q, K(al)), "Jordan " + std::to_string(al));
    }
    both(MatFq(F, 2), CycloInt::from_int(q, Q), "zero");
    both(MatFq::unit(F, 2, 0, 1), CycloInt::from_int(q, Q), "nilpotent");

    // non-split: -q K_1(alpha + beta sqrt(delta), F_{q^2}), the root taken in an explicit F_{q^2}
    Elem delta = 2;
    while (true) {
      bool square = false;
      for (Elem y = 1; y < q; ++y) square = square || F->mul(y, y) == delta;
      if (!square) break;
      ++delta;
    }
    const FieldPtr E = extension_field(*F, 2);
    const Embedding emb(F, E);
    Elem sq = 0;
    while (E->mul(sq, sq) != emb(delta)) ++sq;
    for (Elem al = 0; al < q; ++al)
      for (Elem be = 1; be < q; ++be) {
        const Elem root = E->add(emb(al), E->mul(emb(be), sq));
        both(MatFq::from_rows(F, {{al, F->mul(delta, be)}, {be, al}}), -(k1_sum(*E, root) * Q),
             "non-split(" + std::to_string(al) + "," + std::to_string(be) + ")");
      }
  }
}

// ---- 2: n = 3 table and [2^2] ----

std::string despace(std::string s) {
  std::erase(s, ' ');
  return s;
}

void criterion2(Checks& c) {
  const std::pair<std::vector<int>, std::string> reference[] = {
      {{1, 1, 1}, "q^3K^3+(q^5+2q^4)(q-1)K"},
      {{1, 2}, "q^3K^3 + q^4(q-2)K"},
      {{3}, "q^3K^3-2q^4K"},
      {{2, 2}, "q^6K^4 + q^7(q-3)K^2+q^8(q^2-q+1)"},
  };
  for (const auto& [parts, text] : reference) {
    const std::string got = kpoly_display(partition_poly(Partition{parts}));
    c(got == despace(text), Partition{parts}.to_string() + ": got " + got);
  }
  for (unsigned q : {2u, 3u, 5u}) {
    const FieldPtr F = make_field(q, 1);
    for (const auto& lam : partitions(3))
      for (Elem al = 1; al < q; ++al) {
        const MatFq a = jordan_matrix(F, lam, al);
        const CycloInt v = partition_poly(lam).eval(q, k1_sum(*F, al));
        c(v == kloosterman_oracle(a), lam.to_string() + " q=" + std::to_string(q) + " alpha=" + std::to_string(al));
        record(a, v, lam.to_string() + " q=" + std::to_string(q));
      }
  }
}

// ---- 3: closed forms ----

void criterion3(Checks& c) {
  for (int n = 1; n <= 8; ++n)
    c(involution_closed_form(n).equivalent(partition_poly(Partition{std::vector<int>(n, 1)})),
      "[1^" + std::to_string(n) + "]");
  for (int n = 1; n <= 10; ++n)
    c(single_block_poly(n).equivalent(partition_poly(Partition{{n}})), "[" + std::to_string(n) + "]");
}

// ---- 4: irreducible-case numerics ----

bool two_is_cube(unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (x * x % p * x % p == 2) return true;
  return false;
}

void criterion4(Checks& c) {
  const FieldPtr F5 = make_field(5, 1);
  ScanOptions cubic;
  cubic.explicit_polys = {{1, 0, 1, 1}};  // x^3 + x^2 + 1, companion row (-1, 0, -1)
  cubic.method = OracleMethod::Brute;
  const ScanEntry e3 = conjecture_scan(3, {5}, 1, cubic).at(0);
  const double k3 = e3.oracle_value.abs();
  const double k1 = k1_over_root(F5, FqPoly{1, 0, 1, 1}).abs();
  c(e3.match, "K_3 over F_5: formula equals brute force");
  c(std::abs(k3 - 327.2542) < 1e-3, "|K_3(A,F_5)| = " + fmt(k3) + ", expected 327.2542");
  c(std::abs(k1 - (3 + std::sqrt(5.0)) / 2) < 1e-6,
    "K_1(alpha,F_125) = " + fmt(k1, 6) + ", expected (3+sqrt5)/2 = " + fmt((3 + std::sqrt(5.0)) / 2, 6));
  c.notes.push_back("|K_3|=" + fmt(k3) + " K_1=" + fmt(k1, 6));
  record(companion(F5, e3.poly), e3.oracle_value, "K_3 x^3+x^2+1 q=5");

  ScanOptions quartic;
  quartic.explicit_polys = {{2, 0, 0, 2, 1}};  // x^4 + 2x^3 + 2
  quartic.method = OracleMethod::Brute;
  const ScanEntry e4 = conjecture_scan(4, {3}, 1, quartic).at(0);
  c(e4.oracle_value == CycloInt::from_int(3, 11664), "K_4(A,F_3) = " + e4.oracle_value.to_string());
  c(e4.match, "K_4 over F_3: formula equals brute force");
  record(companion(make_field(3, 1), e4.poly), e4.oracle_value, "K_4 x^4+2x^3+2 q=3");

  int matched = 0;
  std::string primes;
  for (unsigned p : {7u, 13u, 19u}) {
    if (p % 3 != 1 || two_is_cube(p)) continue;
    ScanOptions fam;
    fam.explicit_polys = {{-2, 0, 0, 1}};  // x^3 - 2
    fam.method = p <= 7 ? OracleMethod::Brute : OracleMethod::Fibered;
    const ScanEntry e = conjecture_scan(3, {p}, 1, fam).at(0);
    c(e.match, "cube-root family p=" + std::to_string(p));
    if (e.match) {
      ++matched;
      primes += (primes.empty() ? "" : ",") + std::to_string(p);
    }
    record(companion(make_field(p, 1), e.poly), e.oracle_value, "x^3-2 p=" + std::to_string(p));
  }
  c(matched >= 3, "cube-root family matched for " + std::to_string(matched) + " primes");
  c.notes.push_back("cube-root primes " + primes);
}

// ---- 5: Bruhat cells ----

void cell_suite(Checks& c, const FieldPtr& F, int n) {
  const BigInt Q = F->q();
  const CycloInt k = k1_sum(*F, 1);
  const std::string tag = " n=" + std::to_string(n) + " q=" + std::to_string(F->q());
  for (const auto& blocks : compositions(n)) {
    const MatFq a = jordan_matrix(F, blocks, 1);
    const std::string bt = Partition{blocks}.to_string();
    CycloInt borel(F->p()), parabolic(F->p());
    for (const auto& w : permutations(n)) {
      const CycloInt v = cell_oracle(a, CellSpec::borel(w));
      borel += v;
      c(v == cell_table_lookup(blocks, w).eval(Q, k), "table " + bt + " " + perm_to_cycles(w) + tag);
      if (!is_involution(w)) c(v.is_zero(), "non-involution cell " + bt + " " + perm_to_cycles(w) + tag);
    }
    for (int j = 1; j <= n; ++j) parabolic += cell_oracle(a, CellSpec::parabolic(j));
    const CycloInt full = kloosterman_oracle(a);
    c(borel == full, "Borel cell sum " + bt + tag);
    c(parabolic == full, "parabolic sum " + bt + tag);
    record(a, full, "cells " + bt + tag);
  }
}

void criterion5(Checks& c) {
  const FieldPtr F5 = make_field(5, 1);
  cell_suite(c, F5, 3);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 5; ++it) {
    MatFq a(F5, 3);
    for (int i = 0; i < 3; ++i) {
      a.at(i, i) = 1 + static_cast<Elem>(rng() % 4);
      for (int j = i + 1; j < 3; ++j) a.at(i, j) = static_cast<Elem>(rng() % 5);
    }
    CycloInt borel(5);
    for (const auto& w : permutations(3)) {
      const CycloInt v = cell_oracle(a, CellSpec::borel(w));
      borel += v;
      if (!is_involution(w)) c(v.is_zero(), "random triangular, non-involution cell " + perm_to_cycles(w));
    }
    c(borel == kloosterman_oracle(a), "random triangular Borel sum");
  }
  cell_suite(c, make_field(3, 1), 4);
}

// ---- 6: degenerate pairs ----

void criterion6(Checks& c) {
  std::mt19937_64 rng(6);
  for (unsigned q : {3u, 5u}) {
    const FieldPtr F = make_field(q, 1);
    const BigInt Q = q;
    for (int n = 1; n <= 3; ++n)
      for (int r = 0; r <= n; ++r) {
        MatFq er(F, n);
        for (int i = 0; i < r; ++i) er.at(i, i) = 1;
        const MatFq z(F, n);
        BigInt expect = big_pow(Q, static_cast<unsigned>(r * n - r * (r + 1) / 2)) * gl_order(n - r, Q);
        if (r % 2) expect = -expect;
        const std::string tag = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " q=" + std::to_string(q);
        for (const MatFq& a : {er, random_of_rank(F, n, r, rng)}) {
          const CycloInt o = kloosterman_oracle(a, z);
          c(o == CycloInt::from_int(q, expect), "projection closed form " + tag);
          c(eval_knab(a, z).value == o, "projection evaluator " + tag);
          c(eval_knab(z, a).value == o, "projection evaluator, swapped " + tag);
          record(a, z, o, "projection " + tag);
        }
      }
  }
  const FieldPtr F3 = make_field(3, 1);
  for (const auto& [n, expect] : {std::pair{3, 1026}, {4, 641520}}) {
    const MatFq e = MatFq::unit(F3, n, 0, n - 1);
    const CycloInt o = kloosterman_oracle(e, e);
    c(eval_knab(e, e).value == o, "corner pair n=" + std::to_string(n));
    c(o == CycloInt::from_int(3, expect), "corner pair value n=" + std::to_string(n) + ": " + o.to_string());
    record(e, e, o, "corner pair n=" + std::to_string(n));
  }
  for (const auto& inst : g_values) {
    if (det(inst.a) != 0 || det(inst.b) != 0) continue;
    const auto reps = bound_report(inst.a, inst.b, inst.value);
    c(all_satisfied(reps), "degenerate bounds: " + inst.label);
  }
}

// ---- 7: combinatorics ----

void criterion7(Checks& c) {
  for (unsigned q : {2u, 3u}) {
    const FieldPtr F = make_field(q, 1);
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= 3; ++l) {
        std::vector<BigInt> counts(std::min(k, l) + 1, 0);
        std::uint64_t total = 1;
        for (int i = 0; i < k * l; ++i) total *= q;
        std::vector<Elem> m(k * l);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
          std::uint64_t t = idx;
          for (auto& e : m) {
            e = static_cast<Elem>(t % q);
            t /= q;
          }
          ++counts[detail::row_reduce(*F, m, k, l, 0).rank];
        }
        for (int j = 0; j <= std::min(k, l); ++j)
          c(rank_count(k, l, j, q) == counts[j], "rank_count " + std::to_string(k) + "x" + std::to_string(l) +
                                                     " rank " + std::to_string(j) + " q=" + std::to_string(q));
      }
    for (int n = 1; n <= 4; ++n) {
      std::uint64_t visited = 0;
      const std::uint64_t count = enumerate_gl(F, n, [&](const MatFq&) { ++visited; });
      c(BigInt(count) == gl_order(n, q) && visited == count,
        "enumerate_gl n=" + std::to_string(n) + " q=" + std::to_string(q));
    }
  }
  for (int n = 1; n <= 8; ++n) {
    int best = 0;
    for (const auto& w : involutions(n)) best = std::max(best, w.N);
    c(best == n * n / 4, "max N over involutions, n=" + std::to_string(n));
    const int e = n / 2;
    Perm w(n);
    std::iota(w.begin(), w.end(), 0);
    for (int i = 0; i < e; ++i) std::swap(w[i], w[n - 1 - i]);
    c(n_stat(w) == e * (n - e), "N of the longest involution, n=" + std::to_string(n));
  }
}

// ---- 8: bounds over every recorded value ----

void criterion8(Checks& c) {
  int reports = 0, advisory_misses = 0;
  for (const auto& inst : g_values) {
    const auto reps = bound_report(inst.a, inst.b, inst.value, inst.conjectural);
    for (const auto& r : reps) {
      ++reports;
      if (r.advisory) advisory_misses += !r.satisfied;
      else c(r.satisfied, inst.label + ": " + r.bound_name + " (" + fmt(r.actual) + " > " + fmt(r.bound_value) + ")");
    }
  }
  c(g_values.size() > 100, "recorded values: " + std::to_string(g_values.size()));
  c.notes.push_back(std::to_string(g_values.size()) + " values, " + std::to_string(reports) + " bound checks, " +
                    std::to_string(advisory_misses) + " advisory misses");
}

// ---- 9: invariance and Fourier inversion ----

void criterion9(Checks& c) {
  std::mt19937_64 rng(9);
  const FieldPtr F5 = make_field(5, 1);
  for (int it = 0; it < 100; ++it) {
    const MatFq a = random_matrix(F5, 2, rng), b = random_matrix(F5, 2, rng);
    const MatFq c1 = random_invertible(F5, 2, rng), c2 = random_invertible(F5, 2, rng);
    const CycloInt k = kloosterman_oracle(a, b);
    c(kloosterman_oracle(c1 * a * mat_inverse(c2), c2 * b * mat_inverse(c1)) == k, "bi-invariance #" + std::to_string(it));
    c(kloosterman_oracle(b, a) == k, "symmetry #" + std::to_string(it));
  }
  // sum over all a of K(-a) psi(tr ax) = q^{n^2} psi(tr x^{-1})
  const FieldPtr F3 = make_field(3, 1);
  const MatFq x = MatFq::from_rows(F3, {{1, 2}, {0, 1}});
  CycloInt acc(3);
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    MatFq a(F3, 2);
    std::uint64_t t = idx;
    for (int k = 0; k < 4; ++k) {
      a.at(k / 2, k % 2) = static_cast<Elem>(t % 3);
      t /= 3;
    }
    acc += kloosterman_oracle(-a) * CycloInt::zeta_pow(3, F3->abs_trace((a * x).trace()));
  }
  c(acc == CycloInt::zeta_pow(3, mat_inverse(x).trace()) * BigInt(81), "Fourier inversion at x = [[1,2],[0,1]]");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    void (*run)(Checks&);
  };
  const Criterion all[] = {
      {1, "K_2 class table", 10, criterion1},           {2, "n=3 table and [2^2]", 120, criterion2},
      {3, "scalar and single-block closed forms", 5, criterion3},
      {4, "irreducible characteristic polynomial numerics", 900, criterion4},
      {5, "Bruhat cells", 600, criterion5},             {6, "degenerate pairs", 300, criterion6},
      {7, "combinatorics", 600, criterion7},            {8, "bounds on all exact values", 60, criterion8},
      {9, "invariance and Fourier inversion", 60, criterion9},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Checks c;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < cr.limit_s;
    const bool pass = c.ok() && error.empty() && in_time;
    failed += !pass;
    std::cout << "criterion " << cr.id << " [" << cr.name << "]: " << (pass ? "PASS" : "FAIL") << " (" << c.count()
              << " checks, " << c.failures().size() << " failed, " << fmt(secs, 2) << " s of " << cr.limit_s << " s)";
    for (const auto& n : c.notes) std::cout << " | " << n;
    if (!error.empty()) std::cout << " | exception: " << error;
    if (!in_time) std::cout << " | over time limit";
    for (std::size_t i = 0; i < c.failures().size() && i < 4; ++i) std::cout << " | " << c.failures()[i];
    if (c.failures().size() > 4) std::cout << " | ...";
    std::cout << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
