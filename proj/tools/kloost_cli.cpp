// Command-line front end: exact evaluation, brute force, tables, cells, scans, bounds.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kloost/kloost.hpp"

namespace {

using namespace kloost;

constexpr int kExitMismatch = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

MatFq load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

// b must live in the same field as a.
MatFq load_second(const std::string& path, const MatFq& a) {
  const json j = read_json_file(path);
  const FieldPtr Fb = field_from_json(j.at("field"));
  if (Fb->p() != a.F().p() || Fb->f() != a.F().f() || Fb->modulus() != a.F().modulus())
    fail(Errc::FieldMismatch, "the two matrices are over different fields");
  MatFq b = matrix_from_json(j, a.field());
  if (b.n() != a.n()) fail(Errc::DimensionMismatch, "the two matrices have different sizes");
  return b;
}

struct Common {
  std::string matrix, bmatrix;
  bool allow_conjecture = false, allow_oracle = false, naive = false;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 0;

  OracleOptions oracle() const { return {budget, threads, naive}; }
  Policy policy() const { return {allow_conjecture, allow_oracle, oracle()}; }
};

void add_common(CLI::App* app, Common& c, bool need_matrix) {
  auto* m = app->add_option("--matrix", c.matrix, "matrix JSON file");
  if (need_matrix) m->required();
  app->add_option("--budget", c.budget, "maximum number of enumerated group elements");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
}

void add_policy(CLI::App* app, Common& c) {
  app->add_flag("--allow-conjecture", c.allow_conjecture, "permit the conjectural irreducible formula");
  app->add_flag("--allow-oracle", c.allow_oracle, "fall back to brute force when no formula applies");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

class Timer {
 public:
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::cerr << "runtime: " << s << " s\n";
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

json value_json(const CycloInt& v) { return {{"value", cyclo_to_json(v)}, {"abs", v.abs()}}; }

EvalResult evaluate(const Common& c, const MatFq& a) {
  if (c.bmatrix.empty()) return eval_kn(a, c.policy());
  return eval_knab(a, load_second(c.bmatrix, a), c.policy());
}

// Brute force, or the fibered enumeration when the full group is over budget.
CycloInt oracle_value(const Common& c, const MatFq& a, const MatFq& b, std::string& method) {
  const bool b_is_identity = b == MatFq::identity(a.field(), a.n());
  if (gl_order(a.n(), a.F().q()) > c.budget && b_is_identity && is_irreducible_over(a.F(), char_poly(a))) {
    method = "fibered";
    return kloosterman_oracle_fibered(a, c.oracle());
  }
  method = "brute";
  return kloosterman_oracle(a, b, c.oracle());
}

int cmd_compute(const Common& c) {
  const Timer t;
  emit(eval_result_to_json(evaluate(c, load_matrix(c.matrix))));
  return 0;
}

int cmd_oracle(const Common& c, const std::string& cell) {
  const MatFq a = load_matrix(c.matrix);
  const MatFq b = c.bmatrix.empty() ? MatFq::identity(a.field(), a.n()) : load_second(c.bmatrix, a);
  const Timer t;
  CellSpec spec;
  if (cell.empty() || cell == "full") {
    spec = CellSpec::full();
  } else if (cell.rfind("borel:", 0) == 0) {
    spec = CellSpec::borel(perm_from_cycles(cell.substr(6), a.n()));
  } else if (cell.rfind("parabolic:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(cell.substr(10));
    } catch (const std::exception&) {
      throw UsageError("bad parabolic index in --cell " + cell);
    }
    if (k < 1 || k > a.n()) throw UsageError("parabolic index out of range");
    spec = CellSpec::parabolic(k);
  } else {
    throw UsageError("--cell must be full, borel:W or parabolic:K");
  }
  json out = value_json(cell_oracle(a, b, spec, c.oracle()));
  out["cell"] = spec.to_string();
  emit(out);
  return 0;
}

int cmd_compare(const Common& c) {
  const MatFq a = load_matrix(c.matrix);
  const MatFq b = c.bmatrix.empty() ? MatFq::identity(a.field(), a.n()) : load_second(c.bmatrix, a);
  const Timer t;
  const EvalResult r = evaluate(c, a);
  std::string method;
  const CycloInt o = oracle_value(c, a, b, method);
  const bool equal = r.value == o;
  json out = {{"formula", eval_result_to_json(r)}, {"oracle", value_json(o)}, {"equal", equal}};
  out["oracle"]["method"] = method;
  emit(out);
  return equal ? 0 : kExitMismatch;
}

int cmd_tables(int n, const std::string& format) {
  if (n < 0 || n > 12) throw UsageError("--n must be between 0 and 12");
  const bool csv = format == "csv";
  if (!csv && format != "json") throw UsageError("--format must be json or csv");
  std::vector<CellPoly> cells;
  if (n >= 2 && n <= 4) cells = cell_table(n);
  if (csv) {
    std::cout << "partition,K_lambda\n";
    for (const auto& lam : partitions(n))
      std::cout << '"' << lam.to_string() << "\"," << kpoly_display(partition_poly(lam)) << "\n";
    if (!cells.empty()) {
      std::cout << "\nblocks,w,cell\n";
      for (const auto& c : cells) {
        std::cout << '"' << Partition{c.blocks}.to_string() << "\"," << perm_to_cycles(c.w.map) << ","
                  << kpoly_display(c.poly) << "\n";
      }
    }
    return 0;
  }
  json rows = json::array();
  for (const auto& lam : partitions(n)) {
    const KPoly P = partition_poly(lam);
    rows.push_back({{"partition", lam.parts}, {"poly", kpoly_to_json(P)}, {"display", kpoly_display(P)}});
  }
  json out = {{"n", n}, {"partitions", rows}};
  if (!cells.empty()) {
    json ct = json::array();
    for (const auto& c : cells)
      ct.push_back({{"blocks", c.blocks},
                    {"w", perm_to_cycles(c.w.map)},
                    {"poly", kpoly_to_json(c.poly)},
                    {"display", kpoly_display(c.poly)}});
    out["cells"] = ct;
  }
  emit(out);
  return 0;
}

bool upper_triangular(const MatFq& a) {
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < i; ++j)
      if (a(i, j)) return false;
  return true;
}

int cmd_cells(const Common& c, std::optional<unsigned> q) {
  const MatFq a = load_matrix(c.matrix);
  if (q && *q != a.F().q()) throw UsageError("--q disagrees with the field of the matrix");
  const Timer t;
  const int n = a.n();
  const bool triangular = upper_triangular(a) && det(a) != 0;
  CycloInt borel_total(a.F().p()), parabolic_total(a.F().p());
  bool zero_ok = true;
  json borel = json::array();
  for (const auto& w : permutations(n)) {
    const CycloInt v = cell_oracle(a, CellSpec::borel(w), c.oracle());
    borel_total += v;
    const bool inv = is_involution(w);
    if (triangular && !inv && !v.is_zero()) zero_ok = false;
    json e = value_json(v);
    e["w"] = perm_to_cycles(w);
    e["involution"] = inv;
    borel.push_back(e);
  }
  json parabolic = json::array();
  for (int k = 1; k <= n; ++k) {
    const CycloInt v = cell_oracle(a, CellSpec::parabolic(k), c.oracle());
    parabolic_total += v;
    json e = value_json(v);
    e["k"] = k;
    parabolic.push_back(e);
  }
  const CycloInt full = kloosterman_oracle(a, c.oracle());
  json out = {{"borel", borel},
              {"parabolic", parabolic},
              {"full", value_json(full)},
              {"borel_sum_matches", borel_total == full},
              {"parabolic_sum_matches", parabolic_total == full}};
  if (triangular) out["non_involution_cells_vanish"] = zero_ok;
  emit(out);
  const bool ok = borel_total == full && parabolic_total == full && zero_ok;
  return ok ? 0 : kExitMismatch;
}

std::vector<unsigned> parse_primes(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      const long v = std::stol(tok);
      if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) throw UsageError("not a prime: " + tok);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw UsageError("bad prime list: " + s);
    }
  }
  if (out.empty()) throw UsageError("empty prime list");
  return out;
}

int cmd_scan(const Common& c, int n, const std::string& primes, int count, const std::string& method,
             const std::vector<std::string>& polys, std::uint64_t seed) {
  if (n < 1 || n > kMaxSmallDim) throw UsageError("--n out of range");
  ScanOptions opt;
  opt.seed = seed;
  opt.oracle = c.oracle();
  if (method == "brute") opt.method = OracleMethod::Brute;
  else if (method == "fibered") opt.method = OracleMethod::Fibered;
  else if (method == "auto") opt.method = OracleMethod::Auto;
  else throw UsageError("--method must be brute, fibered or auto");
  for (const auto& s : polys) {
    std::vector<long long> coeffs;
    std::stringstream ss(s);
    std::string tok;
    try {
      while (std::getline(ss, tok, ',')) coeffs.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
      throw UsageError("bad --poly coefficients: " + s);
    }
    opt.explicit_polys.push_back(coeffs);
  }
  const Timer t;
  const auto entries = conjecture_scan(n, parse_primes(primes), count, opt);
  json rows = json::array();
  bool all = true;
  for (const auto& e : entries) {
    rows.push_back(scan_entry_to_json(e));
    all = all && e.match;
  }
  emit({{"n", n}, {"entries", rows}, {"all_match", all}});
  return all ? 0 : kExitMismatch;
}

int cmd_bounds(const Common& c) {
  const MatFq a = load_matrix(c.matrix);
  const MatFq b = c.bmatrix.empty() ? MatFq::identity(a.field(), a.n()) : load_second(c.bmatrix, a);
  const Timer t;
  const EvalResult r = eval_knab(a, b, c.policy());
  const auto reps = bound_report(a, b, r.value, r.kind == ProvenanceKind::ConjecturalFormula);
  json rows = json::array();
  for (const auto& rep : reps) rows.push_back(bound_to_json(rep));
  emit({{"value", eval_result_to_json(r)}, {"bounds", rows}, {"all_satisfied", all_satisfied(reps)}});
  return all_satisfied(reps) ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact matrix Kloosterman sums over finite fields"};
  app.require_subcommand(1);

  Common c;
  std::string cell, primes, method = "auto", format = "json";
  std::vector<std::string> polys;
  int n = 0, count = 1;
  std::uint64_t seed = ScanOptions{}.seed;
  std::optional<unsigned> q;

  auto* compute = app.add_subcommand("compute", "evaluate through the strongest applicable formula");
  add_common(compute, c, true);
  add_policy(compute, c);
  compute->add_option("--b", c.bmatrix, "second matrix for K_n(a,b)");

  auto* oracle = app.add_subcommand("oracle", "brute-force sum over GL_n or one Bruhat cell");
  add_common(oracle, c, true);
  oracle->add_option("--b", c.bmatrix, "second matrix for K_n(a,b)");
  oracle->add_option("--cell", cell, "full, borel:W (cycle notation) or parabolic:K");
  oracle->add_flag("--naive", c.naive, "reference path with a full inverse per element");

  auto* compare = app.add_subcommand("compare", "formula against brute force, exact equality");
  add_common(compare, c, true);
  add_policy(compare, c);
  compare->add_option("--b", c.bmatrix, "second matrix for K_n(a,b)");

  auto* tables = app.add_subcommand("tables", "partition polynomials and Bruhat-cell tables");
  tables->add_option("--n", n, "dimension")->required();
  tables->add_option("--format", format, "json or csv");

  auto* cells = app.add_subcommand("cells", "per-cell brute-force sums");
  add_common(cells, c, true);
  cells->add_option("--q", q, "field size, checked against the matrix file");

  auto* scan = app.add_subcommand("scan-conjecture", "brute force against the irreducible-case formula");
  scan->add_option("--n", n, "dimension")->required();
  scan->add_option("--primes", primes, "comma-separated primes")->required();
  scan->add_option("--count", count, "polynomials sampled per prime");
  scan->add_option("--method", method, "brute, fibered or auto");
  scan->add_option("--poly", polys, "explicit monic polynomial, coefficients constant first (repeatable)");
  scan->add_option("--seed", seed, "sampling seed");
  scan->add_option("--budget", c.budget, "maximum number of enumerated elements");
  scan->add_option("--threads", c.threads, "worker threads (0: all cores)");

  auto* bounds = app.add_subcommand("bounds", "evaluate and check every applicable bound");
  add_common(bounds, c, true);
  add_policy(bounds, c);
  bounds->add_option("--b", c.bmatrix, "second matrix for K_n(a,b)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(c);
    if (*oracle) return cmd_oracle(c, cell);
    if (*compare) return cmd_compare(c);
    if (*tables) return cmd_tables(n, format);
    if (*cells) return cmd_cells(c, q);
    if (*scan) return cmd_scan(c, n, primes, count, method, polys, seed);
    if (*bounds) return cmd_bounds(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::NoExactPath: return kExitMismatch;
      case Errc::BudgetExceeded: return kExitBudget;
      default: return kExitUsage;
    }
  }
  return kExitUsage;
}
