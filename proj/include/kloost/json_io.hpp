#pragma once

// JSON encodings for fields, matrices, cyclotomic values, polynomials and
// evaluator output. nlohmann::json keeps object keys sorted, which makes the
// output byte-stable.

#include <string>
#include <vector>

#include "json.hpp"
#include "kloost/evaluator.hpp"

namespace kloost {

using json = nlohmann::json;

inline json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail(Errc::ParseError, "expected an integer");
}

inline json field_to_json(const FieldCtx& F) {
  json j = {{"p", F.p()}, {"f", F.f()}};
  if (F.f() > 1) j["modulus"] = F.modulus();
  return j;
}

inline FieldPtr field_from_json(const json& j) {
  try {
    const unsigned p = j.at("p").get<unsigned>();
    const unsigned f = j.value("f", 1u);
    std::optional<std::vector<long long>> mod;
    if (j.contains("modulus") && f > 1) mod = j.at("modulus").get<std::vector<long long>>();
    return make_field(p, f, mod);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad field object: ") + e.what());
  }
}

inline json matrix_to_json(const MatFq& m) {
  const FieldCtx& F = m.F();
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) {
      if (F.f() == 1) row.push_back(m(i, j));
      else row.push_back(F.coeffs(m(i, j)));
    }
    rows.push_back(row);
  }
  return {{"field", field_to_json(F)}, {"n", m.n()}, {"rows", rows}};
}

/// Entries are integers (reduced mod p) or coefficient lists, constant first.
inline MatFq matrix_from_json(const json& j, FieldPtr F = nullptr) {
  try {
    if (!F) F = field_from_json(j.at("field"));
    const auto& rows = j.at("rows");
    const int n = static_cast<int>(rows.size());
    if (j.contains("n") && j.at("n").get<int>() != n) fail(Errc::DimensionMismatch, "\"n\" disagrees with the rows");
    MatFq m(F, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) fail(Errc::DimensionMismatch, "matrix must be square");
      for (int k = 0; k < n; ++k) {
        const auto& e = rows[i][k];
        if (e.is_array()) {
          const auto c = e.get<std::vector<long long>>();
          if (c.size() > F->f()) fail(Errc::DegreeMismatch, "entry has more coefficients than the degree");
          m.at(i, k) = F->from_coeffs(c);
        } else {
          m.at(i, k) = F->from_int(e.get<long long>());
        }
      }
    }
    return m;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad matrix object: ") + e.what());
  }
}

inline json cyclo_to_json(const CycloInt& c) {
  json coeffs = json::array();
  for (const auto& x : c.coeffs()) coeffs.push_back(bigint_to_json(x));
  return {{"p", c.prime()}, {"coeffs", coeffs}};
}

inline CycloInt cyclo_from_json(const json& j) {
  const unsigned p = j.at("p").get<unsigned>();
  CycloInt out(p);
  const auto& cs = j.at("coeffs");
  for (std::size_t i = 0; i < cs.size(); ++i) out += CycloInt::zeta_pow(p, static_cast<long long>(i)) * bigint_from_json(cs[i]);
  return out;
}

inline json kpoly_to_json(const KPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"a", e[0]}, {"g", e[1]}, {"k", e[2]}, {"c", bigint_to_json(c)}});
  return out;
}

inline KPoly kpoly_from_json(const json& j) {
  KPoly p;
  for (const auto& t : j) p.add_term({t.at("a").get<int>(), t.at("g").get<int>(), t.at("k").get<int>()}, bigint_from_json(t.at("c")));
  return p;
}

inline json eval_result_to_json(const EvalResult& r) {
  return {{"value", cyclo_to_json(r.value)}, {"abs", r.complex_abs}, {"provenance", r.provenance()}, {"route", r.route}};
}

inline json bound_to_json(const BoundReport& b) {
  return {{"bound_name", b.bound_name}, {"bound_value", b.bound_value}, {"actual", b.actual},
          {"satisfied", b.satisfied},   {"advisory", b.advisory},       {"conjectural_input", b.conjectural_input}};
}

inline json scan_entry_to_json(const ScanEntry& e) {
  return {{"p", e.p},
          {"poly", e.poly},
          {"oracle", cyclo_to_json(e.oracle_value)},
          {"oracle_abs", e.oracle_value.abs()},
          {"formula", cyclo_to_json(e.formula_value)},
          {"formula_abs", e.formula_value.abs()},
          {"match", e.match},
          {"method", e.method}};
}

}  // namespace kloost
