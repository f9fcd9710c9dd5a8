#ifndef ACSPEC_GROUPOID_HPP
#define ACSPEC_GROUPOID_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acspec/scalar.hpp"
#include "acspec/terms.hpp"

namespace acspec {

/// Finite groupoid given by a Cayley table; table[r][c] is the element index
/// of elements[r] * elements[c].
struct FiniteTable {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;

  int size() const { return static_cast<int>(elements.size()); }
  int apply(int a, int b) const {
    return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
};

enum class LinearTransform {
  none,        // a * b = alpha a + beta b
  reciprocal,  // a * b = (alpha/a + beta/b)^{-1}, the conjugate by x -> 1/x
};

/// Linear operation over Q(zeta_k); field_order 1 means plain Q.
struct Linear {
  int field_order = 1;
  Scalar alpha;
  Scalar beta;
  LinearTransform transform = LinearTransform::none;
};

/// Bilinear operation on Q^dim: e_i * e_j = sum_l constants[i][j][l] e_l.
struct Bilinear {
  int dim = 0;
  std::vector<std::vector<std::vector<Rational>>> constants;
};

enum class StructuralKind {
  free_groupoid,
  free_commutative,
  free_semigroup_two_gen,
  exponentiation,
};

/// Groupoid known only through a proven canonical form of its term
/// operations; not pointwise evaluable.
struct Structural {
  StructuralKind kind;
};

using GroupoidSpec = std::variant<FiniteTable, Linear, Bilinear, Structural>;

struct CatalogEntry {
  std::string id;
  std::string description;
  GroupoidSpec spec;
};

/// Built-in groupoids: the two-element catalog, rock-paper-scissors (plain
/// and with identity), the left-zero monoid, means, linear and bilinear
/// operations, and the free structures.
const std::vector<CatalogEntry>& catalog();

/// nullptr when the id is unknown.
const CatalogEntry* catalog_find(const std::string& id);

using QVec = std::vector<Rational>;
using Value = std::variant<int, Scalar, QVec>;

/// Partial assignment of values to variable indices.
using Assignment = std::map<int, Value>;

/// Exact recursive evaluation. Structural groupoids are rejected.
Value eval(const GroupoidSpec& g, const TermTree& t, const Assignment& h);

struct IdentityCheck {
  bool holds = false;
  std::optional<Assignment> counterexample;
};

/// Exhaustive for finite tables, coefficient comparison for linear
/// operations, basis-tuple comparison for bilinear ones.
IdentityCheck verify_identity(const GroupoidSpec& g, const TermTree& lhs,
                              const TermTree& rhs);

GroupoidSpec opposite(const GroupoidSpec& g);

/// Direct product with pairs as elements, componentwise operation.
FiniteTable product(const FiniteTable& a, const FiniteTable& b);

/// Strict parser for the finite groupoid file format:
/// {"elements": [...], "table": [[...], ...]} with exactly those keys.
FiniteTable parse_finite_table_json(const std::string& json_text);
FiniteTable load_finite_table_file(const std::string& path);

// Typed evaluation helpers; values_by_var is indexed by variable - 1.
int eval_finite(const FiniteTable& g, const TermTree& t, std::span<const int> values_by_var);
Scalar eval_linear(const Linear& g, const TermTree& t, std::span<const Scalar> values_by_var);
QVec eval_bilinear(const Bilinear& g, const TermTree& t, std::span<const QVec> values_by_var);

/// Coefficient of each variable in the (underlying) linear term operation:
/// alpha^{left depth} * beta^{right depth}, indexed by variable - 1.
std::vector<Scalar> linear_term_coefficients(const Linear& g, const TermTree& t);

/// Values of a reciprocal-transformed term operation at the probe
/// assignments h_j = (1, ..., 1, x_j = 1/2, 1, ..., 1). The probe vector
/// determines the coefficient vector, so it is a complete fingerprint.
std::vector<Scalar> reciprocal_probe_values(const Linear& g, const TermTree& t);

std::string value_to_string(const Value& v);

}  // namespace acspec

#endif
