#include "acspec/groupoid.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acspec/errors.hpp"

namespace acspec {

namespace {

FiniteTable make_table(std::vector<std::string> elements, std::vector<std::vector<int>> table) {
  return FiniteTable{std::move(elements), std::move(table)};
}

Bilinear make_cross() {
  Bilinear b;
  b.dim = 3;
  b.constants.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  auto set = [&b](int i, int j, int l, int c) { b.constants[i][j][l] = c; };
  set(0, 1, 2, 1);
  set(1, 0, 2, -1);
  set(1, 2, 0, 1);
  set(2, 1, 0, -1);
  set(2, 0, 1, 1);
  set(0, 2, 1, -1);
  return b;
}

Bilinear make_join() {
  Bilinear b;
  b.dim = 3;
  b.constants.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) b.constants[i][j][3 - i - j] = 1;
  return b;
}

Bilinear make_sl2() {
  // Basis order (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
  Bilinear b;
  b.dim = 3;
  b.constants.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  auto set = [&b](int i, int j, int l, int c) { b.constants[i][j][l] = c; };
  set(0, 1, 2, 1);
  set(1, 0, 2, -1);
  set(2, 0, 0, 2);
  set(0, 2, 0, -2);
  set(2, 1, 1, -2);
  set(1, 2, 1, 2);
  return b;
}

Linear make_linear(int k, Scalar alpha, Scalar beta,
                   LinearTransform transform = LinearTransform::none) {
  return Linear{k, std::move(alpha), std::move(beta), transform};
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  const Rational half(1, 2);

  out.push_back({"const1", "x*y = 1 on {0,1}",
                 make_table({"0", "1"}, {{1, 1}, {1, 1}})});
  out.push_back({"proj", "left projection x*y = x on {0,1}",
                 make_table({"0", "1"}, {{0, 0}, {1, 1}})});
  out.push_back({"min", "x*y = min(x,y) on {0,1}",
                 make_table({"0", "1"}, {{0, 0}, {0, 1}})});
  out.push_back({"xor", "x*y = x+y mod 2",
                 make_table({"0", "1"}, {{0, 1}, {1, 0}})});
  out.push_back({"succ2", "x*y = x+1 mod 2",
                 make_table({"0", "1"}, {{1, 1}, {0, 0}})});
  out.push_back({"nor", "negated disjunction: x*y = 1 iff x = y = 0",
                 make_table({"0", "1"}, {{1, 0}, {0, 0}})});
  out.push_back({"implication", "x*y = x -> y",
                 make_table({"0", "1"}, {{1, 1}, {0, 1}})});
  out.push_back({"converse-implication", "x*y = y -> x",
                 make_table({"0", "1"}, {{1, 0}, {1, 1}})});
  out.push_back({"rps", "rock-paper-scissors: the winner of x, y",
                 make_table({"r", "p", "s"}, {{0, 1, 0}, {1, 1, 2}, {0, 2, 2}})});
  out.push_back({"rps-e", "rock-paper-scissors with adjoined neutral element",
                 make_table({"r", "p", "s", "e"},
                            {{0, 1, 0, 0}, {1, 1, 2, 1}, {0, 2, 2, 2}, {0, 1, 2, 3}})});
  out.push_back({"leftzero-e", "left-zero semigroup {a,b} with adjoined identity",
                 make_table({"a", "b", "e"}, {{0, 0, 0}, {1, 1, 1}, {0, 1, 2}})});
  out.push_back({"mean", "arithmetic mean (a+b)/2 over Q",
                 make_linear(1, Scalar(half), Scalar(half))});
  out.push_back({"harmonic", "harmonic mean over positive rationals",
                 make_linear(1, Scalar(half), Scalar(half), LinearTransform::reciprocal)});
  out.push_back({"sub", "subtraction a - b",
                 make_linear(1, Scalar::one(), -Scalar::one())});
  out.push_back({"double-minus", "a*b = -a - b",
                 make_linear(1, -Scalar::one(), -Scalar::one())});
  for (int k = 2; k <= 4; ++k) {
    out.push_back({"add-zeta" + std::to_string(k),
                   "a + zeta_" + std::to_string(k) + " b over Q(zeta_" + std::to_string(k) + ")",
                   make_linear(k, Scalar::one(k), Scalar::zeta(k))});
  }
  for (int k = 2; k <= 4; ++k) {
    out.push_back({"scale-zeta" + std::to_string(k),
                   "zeta_" + std::to_string(k) + " (a + b) over Q(zeta_" + std::to_string(k) + ")",
                   make_linear(k, Scalar::zeta(k), Scalar::zeta(k))});
  }
  out.push_back({"cross", "cross product on Q^3", make_cross()});
  out.push_back({"join", "commutative version of the cross product", make_join()});
  out.push_back({"sl2", "Lie bracket on the sl2 triple (e, f, h)", make_sl2()});
  out.push_back({"free-groupoid", "free groupoid on one generator",
                 Structural{StructuralKind::free_groupoid}});
  out.push_back({"free-commutative", "free commutative groupoid on one generator",
                 Structural{StructuralKind::free_commutative}});
  out.push_back({"free-semigroup2", "free semigroup on two generators",
                 Structural{StructuralKind::free_semigroup_two_gen}});
  out.push_back({"exponentiation", "a*b = a^b, classified by unordered P-trees",
                 Structural{StructuralKind::exponentiation}});
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

std::vector<int> term_variables(const TermTree& t) {
  std::vector<int> vars = t.labels_in_order();
  std::sort(vars.begin(), vars.end());
  return vars;
}

int value_as_index(const Value& v) {
  if (const int* i = std::get_if<int>(&v)) return *i;
  throw EvalError("assignment value is not a finite element index");
}

Scalar value_as_scalar(const Value& v) {
  if (const Scalar* s = std::get_if<Scalar>(&v)) return *s;
  throw EvalError("assignment value is not a scalar");
}

QVec value_as_qvec(const Value& v) {
  if (const QVec* q = std::get_if<QVec>(&v)) return *q;
  throw EvalError("assignment value is not a rational vector");
}

template <typename T, typename Lookup, typename Combine>
T eval_rec(const TermTree& t, int node, const Lookup& lookup, const Combine& combine) {
  const TermTree::Node& n = t.node(node);
  if (n.var != 0) return lookup(n.var);
  T l = eval_rec<T>(t, n.left, lookup, combine);
  T r = eval_rec<T>(t, n.right, lookup, combine);
  return combine(l, r);
}

QVec bilinear_apply(const Bilinear& g, const QVec& a, const QVec& b) {
  QVec out(static_cast<std::size_t>(g.dim), Rational(0));
  for (int i = 0; i < g.dim; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < g.dim; ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      Rational c = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
      const std::vector<Rational>& k = g.constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int l = 0; l < g.dim; ++l) out[static_cast<std::size_t>(l)] += c * k[static_cast<std::size_t>(l)];
    }
  }
  for (Rational& q : out) q.canonicalize();
  return out;
}

Scalar linear_apply(const Linear& g, const Scalar& a, const Scalar& b) {
  if (g.transform == LinearTransform::none) return g.alpha * a + g.beta * b;
  Scalar inner = g.alpha * a.inverse() + g.beta * b.inverse();
  return inner.inverse();
}

}  // namespace

int eval_finite(const FiniteTable& g, const TermTree& t, std::span<const int> values_by_var) {
  auto lookup = [&](int var) -> int {
    if (var < 1 || static_cast<std::size_t>(var) > values_by_var.size())
      throw EvalError("assignment missing variable x" + std::to_string(var));
    return values_by_var[static_cast<std::size_t>(var) - 1];
  };
  auto combine = [&g](int a, int b) { return g.apply(a, b); };
  return eval_rec<int>(t, t.root(), lookup, combine);
}

Scalar eval_linear(const Linear& g, const TermTree& t, std::span<const Scalar> values_by_var) {
  auto lookup = [&](int var) -> Scalar {
    if (var < 1 || static_cast<std::size_t>(var) > values_by_var.size())
      throw EvalError("assignment missing variable x" + std::to_string(var));
    return values_by_var[static_cast<std::size_t>(var) - 1];
  };
  auto combine = [&g](const Scalar& a, const Scalar& b) { return linear_apply(g, a, b); };
  return eval_rec<Scalar>(t, t.root(), lookup, combine);
}

QVec eval_bilinear(const Bilinear& g, const TermTree& t, std::span<const QVec> values_by_var) {
  auto lookup = [&](int var) -> QVec {
    if (var < 1 || static_cast<std::size_t>(var) > values_by_var.size())
      throw EvalError("assignment missing variable x" + std::to_string(var));
    return values_by_var[static_cast<std::size_t>(var) - 1];
  };
  auto combine = [&g](const QVec& a, const QVec& b) { return bilinear_apply(g, a, b); };
  return eval_rec<QVec>(t, t.root(), lookup, combine);
}

Value eval(const GroupoidSpec& g, const TermTree& t, const Assignment& h) {
  auto fetch = [&h](int var) -> const Value& {
    auto it = h.find(var);
    if (it == h.end()) throw EvalError("assignment missing variable x" + std::to_string(var));
    return it->second;
  };
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g)) {
    auto lookup = [&](int var) -> int {
      int v = value_as_index(fetch(var));
      if (v < 0 || v >= ft->size()) throw EvalError("element index out of range");
      return v;
    };
    auto combine = [ft](int a, int b) { return ft->apply(a, b); };
    return eval_rec<int>(t, t.root(), lookup, combine);
  }
  if (const Linear* lin = std::get_if<Linear>(&g)) {
    auto lookup = [&](int var) { return value_as_scalar(fetch(var)); };
    auto combine = [lin](const Scalar& a, const Scalar& b) { return linear_apply(*lin, a, b); };
    return eval_rec<Scalar>(t, t.root(), lookup, combine);
  }
  if (const Bilinear* bil = std::get_if<Bilinear>(&g)) {
    auto lookup = [&](int var) -> QVec {
      QVec v = value_as_qvec(fetch(var));
      if (static_cast<int>(v.size()) != bil->dim)
        throw EvalError("vector value has wrong dimension");
      return v;
    };
    auto combine = [bil](const QVec& a, const QVec& b) { return bilinear_apply(*bil, a, b); };
    return eval_rec<QVec>(t, t.root(), lookup, combine);
  }
  throw UnsupportedKindError("structural groupoids are not pointwise evaluable");
}

std::vector<Scalar> linear_term_coefficients(const Linear& g, const TermTree& t) {
  DepthProfile p = depth_profile(t);
  std::vector<Scalar> coeffs(p.d.size(), Scalar::zero(g.field_order));
  for (int leaf : t.leaves_in_order()) {
    std::size_t i = static_cast<std::size_t>(t.node(leaf).var) - 1;
    coeffs[i] = g.alpha.pow(p.delta[i]) * g.beta.pow(p.rho[i]);
  }
  return coeffs;
}

std::vector<Scalar> reciprocal_probe_values(const Linear& g, const TermTree& t) {
  std::vector<int> vars = term_variables(t);
  const int max_var = vars.empty() ? 0 : vars.back();
  std::vector<Scalar> values(static_cast<std::size_t>(max_var), Scalar::one(g.field_order));
  std::vector<Scalar> probes;
  probes.reserve(vars.size());
  for (int var : vars) {
    values[static_cast<std::size_t>(var) - 1] = Scalar(Rational(1, 2));
    probes.push_back(eval_linear(g, t, values));
    values[static_cast<std::size_t>(var) - 1] = Scalar::one(g.field_order);
  }
  return probes;
}

namespace {

IdentityCheck verify_finite(const FiniteTable& g, const TermTree& lhs, const TermTree& rhs,
                            const std::vector<int>& vars) {
  const int size = g.size();
  const int max_var = vars.back();
  std::vector<int> values(static_cast<std::size_t>(max_var), 0);
  std::vector<int> digits(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      values[static_cast<std::size_t>(vars[i]) - 1] = digits[i];
    if (eval_finite(g, lhs, values) != eval_finite(g, rhs, values)) {
      Assignment h;
      for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = digits[i];
      return {false, h};
    }
    // next tuple in lexicographic order, leftmost variable most significant
    int pos = static_cast<int>(vars.size()) - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == size - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return {true, std::nullopt};
    ++digits[static_cast<std::size_t>(pos)];
  }
}

IdentityCheck verify_linear(const Linear& g, const TermTree& lhs, const TermTree& rhs,
                            const std::vector<int>& vars) {
  if (g.transform == LinearTransform::none) {
    std::vector<Scalar> cl = linear_term_coefficients(g, lhs);
    std::vector<Scalar> cr = linear_term_coefficients(g, rhs);
    for (int var : vars) {
      std::size_t i = static_cast<std::size_t>(var) - 1;
      if (cl[i] == cr[i]) continue;
      Assignment h;
      for (int v : vars) h[v] = Scalar::zero(g.field_order);
      h[var] = Scalar::one(g.field_order);
      return {false, h};
    }
    return {true, std::nullopt};
  }
  // Probe values jointly determine the coefficient vector, so comparing
  // them decides the identity; a differing probe is a genuine witness.
  std::vector<Scalar> pl = reciprocal_probe_values(g, lhs);
  std::vector<Scalar> pr = reciprocal_probe_values(g, rhs);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (pl[i] == pr[i]) continue;
    Assignment h;
    for (int v : vars) h[v] = Scalar::one(g.field_order);
    h[vars[i]] = Scalar(Rational(1, 2));
    return {false, h};
  }
  return {true, std::nullopt};
}

IdentityCheck verify_bilinear(const Bilinear& g, const TermTree& lhs, const TermTree& rhs,
                              const std::vector<int>& vars) {
  const int m = g.dim;
  const int max_var = vars.back();
  std::vector<QVec> values(static_cast<std::size_t>(max_var),
                           QVec(static_cast<std::size_t>(m), Rational(0)));
  std::vector<int> digits(vars.size(), 0);
  auto basis = [m](int b) {
    QVec v(static_cast<std::size_t>(m), Rational(0));
    v[static_cast<std::size_t>(b)] = 1;
    return v;
  };
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      values[static_cast<std::size_t>(vars[i]) - 1] = basis(digits[i]);
    if (eval_bilinear(g, lhs, values) != eval_bilinear(g, rhs, values)) {
      Assignment h;
      for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = basis(digits[i]);
      return {false, h};
    }
    int pos = static_cast<int>(vars.size()) - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == m - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return {true, std::nullopt};
    ++digits[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

IdentityCheck verify_identity(const GroupoidSpec& g, const TermTree& lhs, const TermTree& rhs) {
  std::vector<int> lv = term_variables(lhs);
  std::vector<int> rv = term_variables(rhs);
  if (lv != rv)
    throw ValidationError("verify_identity: terms must share their variable set");
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g)) return verify_finite(*ft, lhs, rhs, lv);
  if (const Linear* lin = std::get_if<Linear>(&g)) return verify_linear(*lin, lhs, rhs, lv);
  if (const Bilinear* bil = std::get_if<Bilinear>(&g)) return verify_bilinear(*bil, lhs, rhs, lv);
  throw UnsupportedKindError("verify_identity: structural groupoids are not supported");
}

GroupoidSpec opposite(const GroupoidSpec& g) {
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g)) {
    FiniteTable out = *ft;
    for (int r = 0; r < ft->size(); ++r)
      for (int c = 0; c < ft->size(); ++c)
        out.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = ft->apply(c, r);
    return out;
  }
  if (const Linear* lin = std::get_if<Linear>(&g)) {
    Linear out = *lin;
    std::swap(out.alpha, out.beta);
    return out;
  }
  if (const Bilinear* bil = std::get_if<Bilinear>(&g)) {
    Bilinear out = *bil;
    for (int i = 0; i < bil->dim; ++i)
      for (int j = 0; j < bil->dim; ++j)
        out.constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            bil->constants[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return out;
  }
  // Free structures and exponentiation are self-antiisomorphic for spectrum
  // purposes; the opposite shares every class count.
  return g;
}

FiniteTable product(const FiniteTable& a, const FiniteTable& b) {
  FiniteTable out;
  const int na = a.size();
  const int nb = b.size();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      out.elements.push_back(a.elements[static_cast<std::size_t>(i)] + "|" +
                             b.elements[static_cast<std::size_t>(j)]);
  out.table.assign(static_cast<std::size_t>(na * nb), std::vector<int>(static_cast<std::size_t>(na * nb), 0));
  for (int i = 0; i < na * nb; ++i) {
    for (int j = 0; j < na * nb; ++j) {
      int ra = a.apply(i / nb, j / nb);
      int rb = b.apply(i % nb, j % nb);
      out.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ra * nb + rb;
    }
  }
  return out;
}

FiniteTable parse_finite_table_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("groupoid file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("groupoid file: top level must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "elements" && item.key() != "table")
      throw ValidationError("groupoid file: unexpected key \"" + item.key() + "\"");
  if (!doc.contains("elements") || !doc.contains("table"))
    throw ValidationError("groupoid file: keys \"elements\" and \"table\" are required");

  FiniteTable out;
  const nlohmann::json& elems = doc["elements"];
  if (!elems.is_array() || elems.empty())
    throw ValidationError("groupoid file: \"elements\" must be a nonempty array");
  for (const nlohmann::json& e : elems) {
    if (!e.is_string()) throw ValidationError("groupoid file: element names must be strings");
    out.elements.push_back(e.get<std::string>());
  }
  const int n = out.size();
  const nlohmann::json& table = doc["table"];
  if (!table.is_array() || static_cast<int>(table.size()) != n)
    throw ValidationError("groupoid file: \"table\" must be a square matrix of size " +
                          std::to_string(n));
  for (const nlohmann::json& row : table) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ValidationError("groupoid file: \"table\" must be a square matrix of size " +
                            std::to_string(n));
    std::vector<int> r;
    for (const nlohmann::json& cell : row) {
      if (!cell.is_number_integer())
        throw ValidationError("groupoid file: table entries must be integers");
      int v = cell.get<int>();
      if (v < 0 || v >= n)
        throw ValidationError("groupoid file: table entry " + std::to_string(v) +
                              " out of range [0, " + std::to_string(n - 1) + "]");
      r.push_back(v);
    }
    out.table.push_back(std::move(r));
  }
  return out;
}

FiniteTable load_finite_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("groupoid file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_finite_table_json(buf.str());
}

std::string value_to_string(const Value& v) {
  if (const int* i = std::get_if<int>(&v)) return std::to_string(*i);
  if (const Scalar* s = std::get_if<Scalar>(&v)) return s->to_string();
  const QVec& q = std::get<QVec>(v);
  std::string out = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += ",";
    out += Scalar(q[i]).to_string();
  }
  out += ")";
  return out;
}

}  // namespace acspec
