#include "acspec/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <unordered_map>

#include "acspec/errors.hpp"
#include "classify.hpp"

namespace acspec {

namespace {

using detail::append_uleb;

void serialize_table(const std::vector<int>& values, std::string& out) {
  out.push_back('T');
  for (int v : values) append_uleb(out, static_cast<std::uint32_t>(v));
}

void serialize_scalars(const std::vector<Scalar>& scalars, std::string& out) {
  out.push_back('L');
  for (const Scalar& s : scalars) {
    out += s.to_string();
    out.push_back('\0');
  }
}

void serialize_tensor(const std::vector<QVec>& tensor, std::string& out) {
  out.push_back('M');
  for (const QVec& v : tensor) {
    for (const Rational& q : v) {
      out += Scalar(q).to_string();
      out.push_back(',');
    }
  }
}

int term_arity(const TermTree& t) {
  std::vector<int> labels = t.labels_in_order();
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1)
      throw ValidationError("term is not a full linear term over x1..xn");
  return static_cast<int>(labels.size());
}

std::string structural_code(StructuralKind kind, const TermTree& t) {
  switch (kind) {
    case StructuralKind::free_groupoid:
      return ordered_code(t);
    case StructuralKind::free_commutative:
      return unordered_code(t);
    case StructuralKind::free_semigroup_two_gen: {
      std::string code("S");
      for (int label : t.labels_in_order()) append_uleb(code, static_cast<std::uint32_t>(label));
      return code;
    }
    case StructuralKind::exponentiation:
      return p_tree_code(t);
  }
  throw UnsupportedKindError("unknown structural kind");
}

}  // namespace

std::string Fingerprint::bytes() const {
  std::string out;
  switch (kind) {
    case Kind::table:
      serialize_table(table, out);
      break;
    case Kind::linear:
      serialize_scalars(scalars, out);
      break;
    case Kind::multilinear:
      serialize_tensor(tensor, out);
      break;
    case Kind::structural:
      out.push_back('X');
      out += code;
      break;
  }
  return out;
}

bool Fingerprint::operator==(const Fingerprint& rhs) const {
  return kind == rhs.kind && table == rhs.table && scalars == rhs.scalars &&
         tensor == rhs.tensor && code == rhs.code;
}

int spectrum_cap(const GroupoidSpec& g) {
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g)) {
    const int size = ft->size();
    if (size <= 2) return 7;
    if (size <= 4) return 6;
    if (size <= 8) return 5;
    return 4;
  }
  if (std::holds_alternative<Linear>(g)) return 8;
  if (const Bilinear* bil = std::get_if<Bilinear>(&g)) return bil->dim <= 3 ? 6 : 4;
  return 8;  // structural
}

int effective_spectrum_cap(const GroupoidSpec& g) {
  int cap = spectrum_cap(g);
  if (const char* env = std::getenv("ACSPEC_CAP_OVERRIDE")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > cap) cap = static_cast<int>(std::min<long>(v, kTermEnumerationCap));
  }
  return cap;
}

namespace {

void check_spectrum_cap(const GroupoidSpec& g, int n) {
  if (n < 1) throw SizeError("spectrum: n must be >= 1");
  const int cap = effective_spectrum_cap(g);
  if (n > cap)
    throw SizeError("spectrum: n = " + std::to_string(n) + " exceeds the cap n <= " +
                    std::to_string(cap) + " for this groupoid kind");
}

}  // namespace

Fingerprint fingerprint(const GroupoidSpec& g, const TermTree& t) {
  const int n = term_arity(t);
  check_spectrum_cap(g, n);
  Fingerprint fp;
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g)) {
    fp.kind = Fingerprint::Kind::table;
    const int size = ft->size();
    std::uint64_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= static_cast<std::uint64_t>(size);
    std::vector<int> values(static_cast<std::size_t>(n));
    fp.table.reserve(tuples);
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
      std::uint64_t rest = idx;
      for (int v = n - 1; v >= 0; --v) {
        values[static_cast<std::size_t>(v)] = static_cast<int>(rest % size);
        rest /= static_cast<std::uint64_t>(size);
      }
      fp.table.push_back(eval_finite(*ft, t, values));
    }
    return fp;
  }
  if (const Linear* lin = std::get_if<Linear>(&g)) {
    fp.kind = Fingerprint::Kind::linear;
    fp.scalars = lin->transform == LinearTransform::none ? linear_term_coefficients(*lin, t)
                                                         : reciprocal_probe_values(*lin, t);
    return fp;
  }
  if (const Bilinear* bil = std::get_if<Bilinear>(&g)) {
    fp.kind = Fingerprint::Kind::multilinear;
    const int m = bil->dim;
    std::uint64_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= static_cast<std::uint64_t>(m);
    std::vector<QVec> values(static_cast<std::size_t>(n));
    fp.tensor.reserve(tuples);
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
      std::uint64_t rest = idx;
      for (int v = n - 1; v >= 0; --v) {
        QVec basis(static_cast<std::size_t>(m), Rational(0));
        basis[rest % static_cast<std::uint64_t>(m)] = 1;
        values[static_cast<std::size_t>(v)] = std::move(basis);
        rest /= static_cast<std::uint64_t>(m);
      }
      fp.tensor.push_back(eval_bilinear(*bil, t, values));
    }
    return fp;
  }
  fp.kind = Fingerprint::Kind::structural;
  fp.code = structural_code(std::get<Structural>(g).kind, t);
  return fp;
}

namespace {

// ----- streaming key engines ------------------------------------------------

class TableEngine final : public detail::KeyEngine {
 public:
  TableEngine(const FiniteTable& g, int n)
      : n_(n), size_(g.size()) {
    flat_.reserve(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_));
    for (const auto& row : g.table)
      for (int v : row) flat_.push_back(static_cast<std::uint8_t>(v));
    tuples_ = 1;
    for (int i = 0; i < n; ++i) tuples_ *= static_cast<std::uint32_t>(size_);
    digits_.assign(static_cast<std::size_t>(tuples_) * static_cast<std::size_t>(n), 0);
    for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
      std::uint32_t rest = idx;
      for (int pos = n - 1; pos >= 0; --pos) {
        digits_[static_cast<std::size_t>(idx) * n + static_cast<std::size_t>(pos)] =
            static_cast<std::uint8_t>(rest % static_cast<std::uint32_t>(size_));
        rest /= static_cast<std::uint32_t>(size_);
      }
    }
  }

  void begin_bracketing(const TermTree& shape, std::uint64_t) override {
    const int count = shape.node_count();
    vals_.assign(static_cast<std::size_t>(count), {});
    for (int i = 0; i < count; ++i) {
      const TermTree::Node& node = shape.node(i);
      auto& out = vals_[static_cast<std::size_t>(i)];
      out.resize(tuples_);
      if (node.var != 0) {
        const int pos = node.var - 1;  // bracketing: variable v sits at leaf v-1
        for (std::uint32_t idx = 0; idx < tuples_; ++idx)
          out[idx] = digits_[static_cast<std::size_t>(idx) * n_ + static_cast<std::size_t>(pos)];
      } else {
        const auto& l = vals_[static_cast<std::size_t>(node.left)];
        const auto& r = vals_[static_cast<std::size_t>(node.right)];
        for (std::uint32_t idx = 0; idx < tuples_; ++idx)
          out[idx] = flat_[static_cast<std::size_t>(l[idx]) * size_ + r[idx]];
      }
    }
    leaf_table_ = std::move(vals_[static_cast<std::size_t>(shape.root())]);
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    out.push_back('T');
    for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
      const std::uint8_t* d = &digits_[static_cast<std::size_t>(idx) * n_];
      std::uint32_t leaf_idx = 0;
      for (int j = 0; j < n_; ++j)
        leaf_idx = leaf_idx * static_cast<std::uint32_t>(size_) + d[perm[static_cast<std::size_t>(j)] - 1];
      append_uleb(out, leaf_table_[leaf_idx]);
    }
  }

 private:
  int n_;
  int size_;
  std::uint32_t tuples_ = 0;
  std::vector<std::uint8_t> flat_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::vector<std::uint8_t>> vals_;
  std::vector<std::uint8_t> leaf_table_;
};

class LinearEngine final : public detail::KeyEngine {
 public:
  LinearEngine(const Linear& g, int n) : g_(g), n_(n) {}

  void begin_bracketing(const TermTree& shape, std::uint64_t) override {
    std::vector<Scalar> per_var = g_.transform == LinearTransform::none
                                      ? linear_term_coefficients(g_, shape)
                                      : reciprocal_probe_values(g_, shape);
    chunks_.assign(static_cast<std::size_t>(n_), {});
    for (int pos = 0; pos < n_; ++pos) {
      // bracketing: variable pos+1 sits at leaf pos
      chunks_[static_cast<std::size_t>(pos)] = per_var[static_cast<std::size_t>(pos)].to_string();
      chunks_[static_cast<std::size_t>(pos)].push_back('\0');
    }
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    inv_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
      inv_[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]) - 1] = j;
    out.push_back('L');
    for (int v = 0; v < n_; ++v) out += chunks_[static_cast<std::size_t>(inv_[static_cast<std::size_t>(v)])];
  }

 private:
  Linear g_;
  int n_;
  std::vector<std::string> chunks_;
  std::vector<int> inv_;
};

// Holds when every basis product has at most one nonzero integer
// coordinate, as for cross, Join, and sl2; values on basis tuples then stay
// integer multiples of basis vectors.
bool monomial_constants(const Bilinear& g, std::vector<std::int64_t>& coeff,
                        std::vector<int>& basis) {
  const int m = g.dim;
  coeff.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  basis.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int nonzero = -1;
      for (int l = 0; l < m; ++l) {
        const Rational& q = g.constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
        if (q == 0) continue;
        if (nonzero >= 0 || q.get_den() != 1 || !q.get_num().fits_slong_p()) return false;
        nonzero = l;
        coeff[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = q.get_num().get_si();
        basis[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = l;
      }
    }
  }
  return true;
}

class BilinearMonomialEngine final : public detail::KeyEngine {
 public:
  BilinearMonomialEngine(const Bilinear& g, int n, std::vector<std::int64_t> prod_coeff,
                         std::vector<int> prod_basis)
      : n_(n), m_(g.dim), prod_coeff_(std::move(prod_coeff)), prod_basis_(std::move(prod_basis)) {
    tuples_ = 1;
    for (int i = 0; i < n; ++i) tuples_ *= static_cast<std::uint32_t>(m_);
    digits_.assign(static_cast<std::size_t>(tuples_) * static_cast<std::size_t>(n), 0);
    for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
      std::uint32_t rest = idx;
      for (int pos = n - 1; pos >= 0; --pos) {
        digits_[static_cast<std::size_t>(idx) * n + static_cast<std::size_t>(pos)] =
            static_cast<std::uint8_t>(rest % static_cast<std::uint32_t>(m_));
        rest /= static_cast<std::uint32_t>(m_);
      }
    }
  }

  void begin_bracketing(const TermTree& shape, std::uint64_t) override {
    const int count = shape.node_count();
    coeff_.assign(static_cast<std::size_t>(count), {});
    basis_.assign(static_cast<std::size_t>(count), {});
    for (int i = 0; i < count; ++i) {
      const TermTree::Node& node = shape.node(i);
      auto& c = coeff_[static_cast<std::size_t>(i)];
      auto& b = basis_[static_cast<std::size_t>(i)];
      c.resize(tuples_);
      b.resize(tuples_);
      if (node.var != 0) {
        const int pos = node.var - 1;
        for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
          c[idx] = 1;
          b[idx] = static_cast<std::int8_t>(
              digits_[static_cast<std::size_t>(idx) * n_ + static_cast<std::size_t>(pos)]);
        }
      } else {
        const auto& cl = coeff_[static_cast<std::size_t>(node.left)];
        const auto& bl = basis_[static_cast<std::size_t>(node.left)];
        const auto& cr = coeff_[static_cast<std::size_t>(node.right)];
        const auto& br = basis_[static_cast<std::size_t>(node.right)];
        for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
          if (bl[idx] < 0 || br[idx] < 0) {
            c[idx] = 0;
            b[idx] = -1;
            continue;
          }
          const std::size_t pi = static_cast<std::size_t>(bl[idx]) * m_ + static_cast<std::size_t>(br[idx]);
          const std::int64_t k = prod_coeff_[pi];
          if (k == 0) {
            c[idx] = 0;
            b[idx] = -1;
          } else {
            c[idx] = cl[idx] * cr[idx] * k;
            b[idx] = static_cast<std::int8_t>(prod_basis_[pi]);
          }
        }
      }
    }
    root_coeff_ = std::move(coeff_[static_cast<std::size_t>(shape.root())]);
    root_basis_ = std::move(basis_[static_cast<std::size_t>(shape.root())]);
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    out.push_back('M');
    for (std::uint32_t idx = 0; idx < tuples_; ++idx) {
      const std::uint8_t* d = &digits_[static_cast<std::size_t>(idx) * n_];
      std::uint32_t leaf_idx = 0;
      for (int j = 0; j < n_; ++j)
        leaf_idx = leaf_idx * static_cast<std::uint32_t>(m_) + d[perm[static_cast<std::size_t>(j)] - 1];
      const std::int64_t c = root_coeff_[leaf_idx];
      const int b = root_basis_[leaf_idx];
      for (int l = 0; l < m_; ++l) {
        if (l == b && c != 0)
          out += std::to_string(c);
        else
          out.push_back('0');
        out.push_back(',');
      }
    }
  }

 private:
  int n_;
  int m_;
  std::uint32_t tuples_ = 0;
  std::vector<std::int64_t> prod_coeff_;
  std::vector<int> prod_basis_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::vector<std::int64_t>> coeff_;
  std::vector<std::vector<std::int8_t>> basis_;
  std::vector<std::int64_t> root_coeff_;
  std::vector<std::int8_t> root_basis_;
};

// Fallback for bilinear tables outside the monomial-integer family:
// exact rational evaluation per basis tuple.
class BilinearGeneralEngine final : public detail::KeyEngine {
 public:
  explicit BilinearGeneralEngine(const Bilinear& g) : g_(g) {}

  void begin_bracketing(const TermTree& shape, std::uint64_t) override {
    scratch_ = shape;
    leaves_ = scratch_.leaves_in_order();
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    for (std::size_t j = 0; j < leaves_.size(); ++j)
      scratch_.nodes()[static_cast<std::size_t>(leaves_[j])].var = perm[j];
    Fingerprint fp = fingerprint(GroupoidSpec(g_), scratch_);
    out += fp.bytes();
  }

 private:
  Bilinear g_;
  TermTree scratch_;
  std::vector<int> leaves_;
};

class StructuralEngine final : public detail::KeyEngine {
 public:
  explicit StructuralEngine(StructuralKind kind) : kind_(kind) {}

  void begin_bracketing(const TermTree& shape, std::uint64_t) override {
    scratch_ = shape;
    leaves_ = scratch_.leaves_in_order();
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    for (std::size_t j = 0; j < leaves_.size(); ++j)
      scratch_.nodes()[static_cast<std::size_t>(leaves_[j])].var = perm[j];
    out.push_back('X');
    out += structural_code(kind_, scratch_);
  }

 private:
  StructuralKind kind_;
  TermTree scratch_;
  std::vector<int> leaves_;
};

detail::KeyEngineFactory engine_factory(std::shared_ptr<const GroupoidSpec> g, int n) {
  if (const FiniteTable* ft = std::get_if<FiniteTable>(g.get())) {
    return [g, ft, n]() -> std::unique_ptr<detail::KeyEngine> {
      return std::make_unique<TableEngine>(*ft, n);
    };
  }
  if (const Linear* lin = std::get_if<Linear>(g.get())) {
    return [g, lin, n]() -> std::unique_ptr<detail::KeyEngine> {
      return std::make_unique<LinearEngine>(*lin, n);
    };
  }
  if (const Bilinear* bil = std::get_if<Bilinear>(g.get())) {
    std::vector<std::int64_t> pc;
    std::vector<int> pb;
    if (monomial_constants(*bil, pc, pb)) {
      return [g, bil, n, pc, pb]() -> std::unique_ptr<detail::KeyEngine> {
        return std::make_unique<BilinearMonomialEngine>(*bil, n, pc, pb);
      };
    }
    return [g, bil]() -> std::unique_ptr<detail::KeyEngine> {
      return std::make_unique<BilinearGeneralEngine>(*bil);
    };
  }
  const StructuralKind kind = std::get<Structural>(*g).kind;
  return [g, kind]() -> std::unique_ptr<detail::KeyEngine> {
    return std::make_unique<StructuralEngine>(kind);
  };
}

SpectrumEntry run_spectrum(const GroupoidSpec& g, int n, SpectrumKind kind,
                           const SpectrumOptions& options) {
  check_spectrum_cap(g, n);
  const auto t0 = std::chrono::steady_clock::now();
  detail::ClassifyOptions copt;
  copt.jobs = options.jobs;
  auto shared = std::make_shared<const GroupoidSpec>(g);
  detail::ClassifyResult res = detail::classify_terms(n, universe_of(kind),
                                                      engine_factory(shared, n), copt);
  SpectrumEntry entry;
  entry.kind = kind;
  entry.n = n;
  entry.universe_size = res.universe_size;
  entry.class_count = res.class_count;
  if (options.collect_representatives) entry.representatives = std::move(res.firsts);
  entry.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return entry;
}

}  // namespace

SpectrumEntry ac_spectrum(const GroupoidSpec& g, int n, const SpectrumOptions& options) {
  return run_spectrum(g, n, SpectrumKind::ac, options);
}

SpectrumEntry assoc_spectrum(const GroupoidSpec& g, int n, const SpectrumOptions& options) {
  return run_spectrum(g, n, SpectrumKind::assoc, options);
}

FinePartition fine_spectrum(const GroupoidSpec& g, int n, SpectrumKind kind,
                            const SpectrumOptions& options) {
  check_spectrum_cap(g, n);
  detail::ClassifyOptions copt;
  copt.jobs = options.jobs;
  copt.collect_members = true;
  auto shared = std::make_shared<const GroupoidSpec>(g);
  detail::ClassifyResult res = detail::classify_terms(n, universe_of(kind),
                                                      engine_factory(shared, n), copt);
  FinePartition part;
  part.kind = kind;
  part.n = n;
  part.classes = std::move(res.members);
  return part;
}

std::optional<Assignment> separation_witness(const GroupoidSpec& g, const TermTree& s,
                                             const TermTree& t) {
  IdentityCheck check = verify_identity(g, s, t);
  return check.counterexample;
}

// ----- exponentiation sanity -------------------------------------------------

namespace {

// Level-index representation for power towers: value = exp applied `level`
// times to x. Exponentiation over (1,3) inputs overflows doubles (and any
// fixed-exponent float) already at n = 5, so comparisons beyond the double
// range happen on the iterated-log scale.
struct Tower {
  int level = 0;
  double x = 0.0;
};

constexpr double kLevelCut = 1e300;
const double kLnCut = std::log(kLevelCut);

Tower normalize(Tower t) {
  while (t.x >= kLevelCut) {
    t.x = std::log(t.x);
    ++t.level;
  }
  while (t.level > 0 && t.x < kLnCut) {
    t.x = std::exp(t.x);
    --t.level;
  }
  return t;
}

double tower_to_double(const Tower& t) {
  if (t.level == 0) return t.x;
  if (t.level == 1 && t.x < 709.0) return std::exp(t.x);
  return std::numeric_limits<double>::infinity();
}

Tower tower_ln(const Tower& t) {
  if (t.level == 0) return normalize({0, std::log(t.x)});
  return {t.level - 1, t.x};
}

Tower tower_exp(const Tower& t) { return normalize({t.level + 1, t.x}); }

bool tower_less(const Tower& a, const Tower& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.x < b.x;
}

Tower tower_add(const Tower& a, const Tower& b) {
  if (a.level == 0 && b.level == 0) return normalize({0, a.x + b.x});
  Tower big = a;
  Tower small = b;
  if (tower_less(big, small)) std::swap(big, small);
  double ratio;
  if (small.level == 0) {
    double db = tower_to_double(big);
    ratio = std::isfinite(db) ? small.x / db : 0.0;
  } else {
    Tower lb = tower_ln(big);
    Tower ls = tower_ln(small);
    double dlb = tower_to_double(lb);
    double dls = tower_to_double(ls);
    if (std::isfinite(dlb) && std::isfinite(dls))
      ratio = std::exp(dls - dlb);
    else if (lb.level == ls.level && lb.x == ls.x)
      ratio = 1.0;
    else
      ratio = 0.0;
  }
  if (ratio == 0.0) return big;
  return tower_exp(tower_add(tower_ln(big), Tower{0, std::log1p(ratio)}));
}

Tower tower_mul(const Tower& a, const Tower& b) {
  return tower_exp(tower_add(tower_ln(a), tower_ln(b)));
}

// base^e for base > 1.
Tower tower_pow(const Tower& base, const Tower& e) {
  return tower_exp(tower_mul(e, tower_ln(base)));
}

Tower eval_tower(const TermTree& t, int node, std::span<const double> values_by_var) {
  const TermTree::Node& n = t.node(node);
  if (n.var != 0) return {0, values_by_var[static_cast<std::size_t>(n.var) - 1]};
  Tower l = eval_tower(t, n.left, values_by_var);
  Tower r = eval_tower(t, n.right, values_by_var);
  return tower_pow(l, r);
}

// Relative difference on the value scale when both sides fit in a double,
// otherwise on the iterated-log scale at the first representable level.
double tower_rel_diff(Tower a, Tower b) {
  for (int guard = 0; guard < 16; ++guard) {
    double da = tower_to_double(a);
    double db = tower_to_double(b);
    const bool fa = std::isfinite(da);
    const bool fb = std::isfinite(db);
    if (fa && fb)
      return std::fabs(da - db) / std::max({std::fabs(da), std::fabs(db), 1.0});
    if (fa != fb) return std::numeric_limits<double>::infinity();
    a = tower_ln(a);
    b = tower_ln(b);
  }
  return 0.0;
}

}  // namespace

ExponentiationSanity exponentiation_sanity(int n, int trials, std::uint64_t seed) {
  if (n < 1 || n > 5) throw SizeError("exponentiation_sanity: n must be in [1, 5]");
  if (trials < 1) throw SizeError("exponentiation_sanity: trials must be >= 1");
  ExponentiationSanity report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;

  std::vector<TermTree> terms = enumerate_full_linear_terms(n);
  report.term_count = terms.size();

  // Group terms by P-tree code; representatives are enumeration-first.
  std::vector<std::string> codes;
  codes.reserve(terms.size());
  for (const TermTree& t : terms) codes.push_back(p_tree_code(t));
  std::vector<std::size_t> class_of(terms.size(), 0);
  std::vector<std::size_t> reps;
  {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      auto [it, inserted] = index.emplace(codes[i], reps.size());
      if (inserted) reps.push_back(i);
      class_of[i] = it->second;
    }
  }
  report.class_count = reps.size();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1.0, 3.0);
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(trials));
  for (auto& sample : samples) {
    sample.resize(static_cast<std::size_t>(n));
    while (true) {
      for (double& v : sample) v = dist(rng);
      std::vector<double> sorted = sample;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
    }
  }

  // Class representatives evaluated on every sample.
  std::vector<std::vector<Tower>> rep_values(reps.size(),
                                             std::vector<Tower>(samples.size()));
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t s = 0; s < samples.size(); ++s)
      rep_values[c][s] = eval_tower(terms[reps[c]], terms[reps[c]].root(), samples[s]);

  constexpr double kEqualTolerance = 1e-9;
  constexpr double kSeparation = 1e-6;

  report.max_equal_rel_diff = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::size_t c = class_of[i];
    if (reps[c] == i) continue;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      Tower v = eval_tower(terms[i], terms[i].root(), samples[s]);
      double diff = tower_rel_diff(v, rep_values[c][s]);
      report.max_equal_rel_diff = std::max(report.max_equal_rel_diff, diff);
    }
  }
  report.equal_within_tolerance = report.max_equal_rel_diff <= kEqualTolerance;

  report.min_pair_separation = std::numeric_limits<double>::infinity();
  report.distinct_pairs = 0;
  report.separated_pairs = 0;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      ++report.distinct_pairs;
      double best = 0.0;
      for (std::size_t s = 0; s < samples.size(); ++s) {
        best = std::max(best, tower_rel_diff(rep_values[a][s], rep_values[b][s]));
        if (best > kSeparation) break;
      }
      if (best > kSeparation) ++report.separated_pairs;
      report.min_pair_separation = std::min(report.min_pair_separation, best);
    }
  }
  if (report.distinct_pairs == 0) report.min_pair_separation = 0.0;
  report.all_pairs_separated = report.separated_pairs == report.distinct_pairs;
  return report;
}

}  // namespace acspec
