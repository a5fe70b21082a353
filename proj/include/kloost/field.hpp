#pragma once

// Finite fields F_{p^f} with table-driven arithmetic, the absolute trace and
// the additive character x -> zeta^Tr(x).
//
// An element is encoded as the integer sum_i c_i p^i of its coefficient
// vector in the basis 1, x, ..., x^(f-1) of F_p[x]/(modulus).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kloost/cyclo.hpp"
#include "kloost/error.hpp"

namespace kloost {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = 1u << 20;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Dense polynomials over the prime field, coefficients in [0,p), constant first.
namespace fp {

using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime and small; Fermat is fine here.
  std::uint64_t r = 1, b = a % p;
  for (unsigned e = p - 2; e; e >>= 1) {
    if (e & 1u) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<unsigned>(r);
}

inline Poly mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const unsigned lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<unsigned>((a[shift + i] + p - c * m[i] % p) % p);
    trim(a);
  }
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<unsigned>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b, unsigned p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^k) mod m.
inline Poly frobenius_power_of_x(const Poly& m, unsigned p, unsigned k) {
  Poly r = mod(Poly{0, 1}, m, p);
  for (unsigned step = 0; step < k; ++step) {
    Poly base = r, acc{1};
    for (unsigned e = p; e; e >>= 1) {
      if (e & 1u) acc = mod(mul(acc, base, p), m, p);
      base = mod(mul(base, base, p), m, p);
    }
    r = acc;
  }
  return r;
}

/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
inline bool is_irreducible(const Poly& m, unsigned p) {
  const std::size_t d = m.size() - 1;
  if (d == 1) return true;
  for (std::size_t k = 1; k <= d / 2; ++k) {
    Poly t = frobenius_power_of_x(m, p, static_cast<unsigned>(k));
    Poly g = gcd(m, sub(t, Poly{0, 1}, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace fp

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
 public:
  unsigned p() const noexcept { return p_; }
  unsigned f() const noexcept { return f_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Monic modulus, constant term first; {0,1} for prime fields.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (f_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
    return add_digits(a, b, false);
  }
  Elem neg(Elem a) const {
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_table_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (f_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(Errc::SingularMatrix, "inverse of zero field element");
    if (f_ == 1) return inv_prime_[a];
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Absolute trace Tr_{F_q/F_p}, as a residue in [0,p).
  unsigned abs_trace(Elem a) const { return trace_[a]; }

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  Elem from_coeffs(std::span<const long long> coeffs) const {
    if (coeffs.size() > f_) fail(Errc::DegreeMismatch, "too many coefficients for field element");
    Elem code = 0, place = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      code += static_cast<Elem>(from_int(coeffs[i])) * place;
      place *= p_;
    }
    return code;
  }

  std::vector<unsigned> coeffs(Elem a) const {
    std::vector<unsigned> c(f_);
    for (unsigned i = 0; i < f_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  /// Class of x in F_p[x]/(modulus); 0 for prime fields by the x - 0 convention.
  Elem x() const { return f_ == 1 ? 0 : p_; }

  /// A generator of the multiplicative group.
  Elem primitive() const { return f_ == 1 ? primitive_prime_ : exp_[1]; }

  bool same_as(const FieldCtx& o) const { return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_; }

  /// Use make_field(); this constructor performs no validation.
  FieldCtx(unsigned p, unsigned f, std::vector<unsigned> modulus)
      : p_(p), f_(f), q_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < f; ++i) q_ *= p;
    build_tables();
  }

 private:
  Elem add_digits(Elem a, Elem b, bool negate_b) const {
    Elem r = 0, place = 1;
    for (unsigned i = 0; i < f_; ++i) {
      const unsigned da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      const unsigned d = negate_b ? (da + p_ - db) % p_ : (da + db) % p_;
      r += d * place;
      place *= p_;
    }
    return r;
  }

  Elem mul_poly(Elem a, Elem b) const {
    fp::Poly pa = coeffs(a), pb = coeffs(b);
    fp::trim(pa);
    fp::trim(pb);
    fp::Poly r = fp::mod(fp::mul(pa, pb, p_), modulus_, p_);
    Elem code = 0, place = 1;
    for (unsigned c : r) {
      code += c * place;
      place *= p_;
    }
    return code;
  }

  void build_tables() {
    trace_.assign(q_, 0);
    if (f_ == 1) {
      inv_prime_.assign(p_, 0);
      for (unsigned a = 1; a < p_; ++a) inv_prime_[a] = fp::inv_mod(a, p_);
      for (unsigned a = 0; a < p_; ++a) trace_[a] = a;
      const auto factors = prime_factors(p_ - 1);
      for (unsigned g = 1; g < p_; ++g) {
        bool ok = true;
        for (auto r : factors)
          if (pow(g, (p_ - 1) / r) == 1) ok = false;
        if (ok) {
          primitive_prime_ = g;
          break;
        }
      }
      return;
    }
    neg_table_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) neg_table_[a] = add_digits(0, a, true);
    if (q_ <= 1024) {
      add_table_.assign(std::size_t(q_) * q_, 0);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_table_[std::size_t(a) * q_ + b] = add_digits(a, b, false);
    }
    // Find a primitive element by checking its order.
    const auto factors = prime_factors(q_ - 1);
    auto pow_slow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1u) r = mul_poly(r, a);
        a = mul_poly(a, a);
        e >>= 1;
      }
      return r;
    };
    Elem g = 0;
    for (Elem cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto r : factors)
        if (pow_slow(cand, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Elem cur = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = cur;
      log_[cur] = i;
      cur = mul_poly(cur, g);
    }
    for (Elem a = 0; a < q_; ++a) {
      Elem t = 0, y = a;
      for (unsigned i = 0; i < f_; ++i) {
        t = add(t, y);
        y = pow(y, p_);
      }
      trace_[a] = t;  // lands in the prime subfield, whose codes are 0..p-1
    }
  }

  unsigned p_, f_;
  std::uint32_t q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_table_, neg_table_, exp_, log_, inv_prime_;
  std::vector<unsigned> trace_;
  Elem primitive_prime_ = 1;
};

/// Lexicographically smallest monic irreducible of degree f over F_p, comparing
/// coefficient vectors from the top degree down.
inline std::vector<unsigned> smallest_irreducible(unsigned p, unsigned f) {
  if (f == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < f; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    fp::Poly m(f + 1, 0);
    m[f] = 1;
    // idx enumerates coefficients with the x^(f-1) digit most significant
    std::uint64_t t = idx;
    for (unsigned i = 0; i < f; ++i) {
      m[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    if (m[0] == 0) continue;
    if (fp::is_irreducible(m, p)) return m;
  }
  fail(Errc::ReducibleModulus, "no irreducible polynomial found");
}

/// Validated field construction; the modulus is monic, constant term first.
inline FieldPtr make_field(unsigned p, unsigned f, std::optional<std::vector<long long>> modulus = std::nullopt) {
  if (!is_prime(p)) fail(Errc::CompositeP, std::to_string(p) + " is not prime");
  if (f < 1) fail(Errc::DegreeMismatch, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxFieldSize) fail(Errc::RangeError, "field size exceeds 2^20");
  }
  std::vector<unsigned> m;
  if (modulus) {
    if (modulus->size() != f + 1) fail(Errc::DegreeMismatch, "modulus must have degree f");
    for (long long c : *modulus) {
      long long r = c % static_cast<long long>(p);
      m.push_back(static_cast<unsigned>(r < 0 ? r + p : r));
    }
    if (m.back() != 1) fail(Errc::DegreeMismatch, "modulus must be monic of degree f");
    if (f == 1) m = {0, 1};
    else if (!fp::is_irreducible(m, p)) fail(Errc::ReducibleModulus, "modulus is reducible over F_p");
  } else {
    m = smallest_irreducible(p, f);
  }
  return std::make_shared<const FieldCtx>(p, f, std::move(m));
}

/// Value type for a single field element bound to its field.
class FqElem {
 public:
  FqElem(FieldPtr ctx, Elem v) : ctx_(std::move(ctx)), v_(v) {}
  static FqElem from_int(FieldPtr ctx, long long v) {
    const Elem e = ctx->from_int(v);
    return {std::move(ctx), e};
  }

  const FieldPtr& ctx() const noexcept { return ctx_; }
  Elem code() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  friend FqElem operator+(const FqElem& a, const FqElem& b) { return {a.ctx_, a.ctx_->add(a.v_, b.v_)}; }
  friend FqElem operator-(const FqElem& a, const FqElem& b) { return {a.ctx_, a.ctx_->sub(a.v_, b.v_)}; }
  friend FqElem operator*(const FqElem& a, const FqElem& b) { return {a.ctx_, a.ctx_->mul(a.v_, b.v_)}; }
  friend FqElem operator/(const FqElem& a, const FqElem& b) { return {a.ctx_, a.ctx_->div(a.v_, b.v_)}; }
  FqElem operator-() const { return {ctx_, ctx_->neg(v_)}; }
  FqElem inverse() const { return {ctx_, ctx_->inv(v_)}; }
  FqElem pow(std::uint64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.v_ == b.v_ && a.ctx_->same_as(*b.ctx_); }

 private:
  FieldPtr ctx_;
  Elem v_;
};

inline unsigned fq_trace(const FqElem& x) { return x.ctx()->abs_trace(x.code()); }

/// zeta^Tr(x) in canonical form.
inline CycloInt psi_char(const FqElem& x) { return CycloInt::zeta_pow(x.ctx()->p(), fq_trace(x)); }

/// F_{q^m} as a fresh field over the same prime, default modulus.
inline FieldPtr extension_field(const FieldCtx& base, unsigned m) { return make_field(base.p(), base.f() * m); }

/// A field embedding src -> dst, fixed by sending x to a root of src's modulus.
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->f() % src_->f() != 0)
      fail(Errc::FieldMismatch, "no embedding between these fields");
    Elem beta = 0;
    if (src_->f() > 1) {
      bool found = false;
      for (Elem y = 0; y < dst_->q() && !found; ++y) {
        Elem val = 0;
        for (std::size_t i = src_->modulus().size(); i-- > 0;)
          val = dst_->add(dst_->mul(val, y), dst_->from_int(src_->modulus()[i]));
        if (val == 0) {
          beta = y;
          found = true;
        }
      }
      if (!found) fail(Errc::FieldMismatch, "modulus has no root in target field");
    }
    table_.resize(src_->q());
    for (Elem a = 0; a < src_->q(); ++a) {
      auto c = src_->coeffs(a);
      Elem acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, beta), dst_->from_int(c[i]));
      table_[a] = acc;
    }
  }

  Elem operator()(Elem a) const { return table_[a]; }
  const FieldPtr& src() const noexcept { return src_; }
  const FieldPtr& dst() const noexcept { return dst_; }

 private:
  FieldPtr src_, dst_;
  std::vector<Elem> table_;
};

}  // namespace kloost
