#pragma once

// Z[A,G,K]: A stands for q, G for q-1 and K for K_1(alpha). A and G stay
// independent variables; comparisons across formulas go through normalize(),
// which substitutes G = A-1.

#include <array>
#include <cctype>
#include <complex>
#include <map>
#include <string>

#include "kloost/cyclo.hpp"
#include "kloost/combinat.hpp"
#include "kloost/intpoly.hpp"

namespace kloost {

class KPoly {
 public:
  using Exp = std::array<int, 3>;  // (A, G, K)

  KPoly() = default;
  KPoly(long long c) { add_term({0, 0, 0}, BigInt(c)); }  // NOLINT: integers promote
  KPoly(const BigInt& c) { add_term({0, 0, 0}, c); }      // NOLINT

  static KPoly mono(int a, int g, int k, const BigInt& c = 1) {
    KPoly r;
    r.add_term({a, g, k}, c);
    return r;
  }
  static KPoly A(int e = 1) { return mono(e, 0, 0); }
  static KPoly G(int e = 1) { return mono(0, e, 0); }
  static KPoly K(int e = 1) { return mono(0, 0, e); }

  const std::map<Exp, BigInt>& terms() const noexcept { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exp& e, const BigInt& c) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) fail(Errc::RangeError, "negative exponent");
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  KPoly& operator+=(const KPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  KPoly& operator-=(const KPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
  friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
  friend KPoly operator-(const KPoly& a) { return KPoly{} - a; }
  friend KPoly operator*(const KPoly& a, const KPoly& b) {
    KPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  KPoly& operator*=(const KPoly& o) { return *this = *this * o; }

  KPoly pow(unsigned e) const {
    KPoly r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  friend bool operator==(const KPoly&, const KPoly&) = default;

  /// G -> A - 1; the result has no G.
  KPoly normalize() const {
    KPoly r;
    for (const auto& [e, c] : t_) {
      // (A-1)^g expanded
      for (int j = 0; j <= e[1]; ++j) {
        BigInt coef = c * binomial(e[1], j);
        if ((e[1] - j) % 2) coef = -coef;
        r.add_term({e[0] + j, 0, e[2]}, coef);
      }
    }
    return r;
  }

  bool equivalent(const KPoly& o) const { return normalize() == o.normalize(); }

  int k_degree() const {
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e[2]);
    return d;
  }

  CycloInt eval(const BigInt& q, const CycloInt& k1) const {
    const unsigned p = k1.prime();
    CycloInt out(p);
    std::vector<CycloInt> kp{CycloInt::from_int(p, 1)};
    for (const auto& [e, c] : t_) {
      while (static_cast<int>(kp.size()) <= e[2]) kp.push_back(kp.back() * k1);
      const BigInt s = c * big_pow(q, e[0]) * big_pow(q - 1, e[1]);
      out += kp[e[2]] * s;
    }
    return out;
  }

  std::complex<double> eval_complex(double q, std::complex<double> k1) const {
    std::complex<double> s = 0;
    for (const auto& [e, c] : t_)
      s += c.convert_to<double>() * std::pow(q, e[0]) * std::pow(q - 1, e[1]) * std::pow(k1, e[2]);
    return s;
  }

  /// Raw form, e.g. "A^3*K^3+A^4*G*K".
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [e, c] = *it;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      out += c < 0 ? "-" : (out.empty() ? "" : "+");
      std::string body;
      const char* names[3] = {"A", "G", "K"};
      for (int v = 0; v < 3; ++v) {
        if (!e[v]) continue;
        if (!body.empty()) body += "*";
        body += names[v];
        if (e[v] > 1) body += "^" + std::to_string(e[v]);
      }
      if (body.empty()) out += mag.str();
      else out += (mag == 1 ? "" : mag.str() + "*") + body;
    }
    return out;
  }

 private:
  std::map<Exp, BigInt> t_;
};

// ---- display in powers of q ----

namespace detail {

inline std::string q_monomial(const BigInt& s, int m) {
  std::string out = s < 0 ? "-" : "";
  const BigInt mag = s < 0 ? BigInt(-s) : s;
  if (m == 0) return out + mag.str();
  if (mag != 1) out += mag.str();
  out += "q";
  if (m > 1) out += "^" + std::to_string(m);
  return out;
}

inline int low_degree(const IntPoly& r) {
  int m = 0;
  while (r[m] == 0) ++m;
  return m;
}

inline bool is_monomial(const IntPoly& r) {
  int nz = 0;
  for (const auto& c : r) nz += c != 0;
  return nz == 1;
}

// Renders one K-coefficient; `bare_one` decides whether a unit coefficient
// disappears (it does when a K power follows).
inline std::string render_q_coefficient(IntPoly r, bool bare_one) {
  trim(r);
  if (is_monomial(r)) {
    const int m = low_degree(r);
    if (bare_one && m == 0 && (r[0] == 1 || r[0] == -1)) return r[0] == 1 ? "" : "-";
    return q_monomial(r[m], m);
  }
  std::string sign;
  if (r.back() < 0) {
    sign = "-";
    for (auto& c : r) c = -c;
  }
  int e = 0;
  const IntPoly qm1{BigInt(-1), BigInt(1)};
  // q-1 divides exactly when the coefficients sum to zero
  while (r.size() > 1 && ipoly_eval(r, 1) == 0) {
    r = ipoly_div_exact(r, qm1);
    ++e;
  }
  if (e > 0) {
    std::string tail = "(q-1)";
    if (e > 1) tail += "^" + std::to_string(e);
    if (is_monomial(r)) {
      const int m = low_degree(r);
      std::string mono = q_monomial(r[m], m);
      if (mono == "1") mono.clear();
      return sign + mono + tail;
    }
    return sign + "(" + ipoly_to_string(r) + ")" + tail;
  }
  const int m = low_degree(r);
  IntPoly t(r.begin() + m, r.end());
  std::string head = m ? q_monomial(1, m) : "";
  return sign + head + "(" + ipoly_to_string(t) + ")";
}

}  // namespace detail

/// Human form with A -> q, G -> (q-1): descending K powers, each coefficient
/// factored as q^m times a power of (q-1) where that is exact, for example
/// "q^3K^3+(q^5+2q^4)(q-1)K" or "-q^9(q-1)".
inline std::string kpoly_display(const KPoly& p) {
  const KPoly n = p.normalize();
  std::map<int, IntPoly, std::greater<int>> by_k;
  for (const auto& [e, c] : n.terms()) {
    auto& r = by_k[e[2]];
    if (static_cast<int>(r.size()) <= e[0]) r.resize(e[0] + 1, 0);
    r[e[0]] += c;
  }
  std::string out;
  for (const auto& [k, r] : by_k) {
    std::string term = detail::render_q_coefficient(r, k > 0);
    if (k > 0) term += k > 1 ? "K^" + std::to_string(k) : "K";
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

// ---- parser ----
//
// Grammar: sums of products of factors; a factor is an integer, one of
// q A G K (q aliases A), or a parenthesized expression, optionally raised to
// a non-negative integer power. Juxtaposition multiplies; '*' is optional;
// whitespace is ignored.

class KPolyParser {
 public:
  explicit KPolyParser(std::string s) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  KPoly parse() {
    KPoly r = expr();
    if (pos_ != s_.size()) error();
    return r;
  }

 private:
  [[noreturn]] void error() const { fail(Errc::ParseError, "cannot parse polynomial '" + s_ + "' at " + std::to_string(pos_)); }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  KPoly expr() {
    KPoly acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) break;
      KPoly t = term();
      acc += sign < 0 ? -t : t;
      first = false;
      if (at_end() || peek() == ')') break;
    }
    return acc;
  }

  KPoly term() {
    KPoly acc = factor();
    while (!at_end()) {
      if (peek() == '*') {
        ++pos_;
        acc *= factor();
      } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '(' || std::isalpha(static_cast<unsigned char>(peek()))) {
        acc *= factor();
      } else break;
    }
    return acc;
  }

  KPoly factor() {
    KPoly base;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      base = KPoly(BigInt(s_.substr(start, pos_ - start)));
    } else if (c == 'q' || c == 'A') {
      ++pos_;
      base = KPoly::A();
    } else if (c == 'G') {
      ++pos_;
      base = KPoly::G();
    } else if (c == 'K') {
      ++pos_;
      base = KPoly::K();
    } else if (c == '(') {
      ++pos_;
      base = expr();
      if (peek() != ')') error();
      ++pos_;
    } else error();
    if (peek() == '^') {
      ++pos_;
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) error();
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline KPoly parse_kpoly(const std::string& s) { return KPolyParser(s).parse(); }

}  // namespace kloost
