#ifndef ACSPEC_SCALAR_HPP
#define ACSPEC_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace acspec {

using Rational = mpq_class;

/// k-th cyclotomic polynomial as integer coefficients, constant term first.
std::vector<mpz_class> cyclotomic_polynomial(int k);

/// Element of Q[x]/Phi_k(x) =~ Q(zeta_k), stored as a reduced coefficient
/// vector of degree < deg Phi_k. k = 1 is plain Q. Equality is exact;
/// reduction modulo Phi_k keeps representations canonical, so values equal
/// as complex numbers compare equal.
class Scalar {
 public:
  Scalar() : k_(1), coeffs_(1, Rational(0)) {}
  explicit Scalar(const Rational& r) : k_(1), coeffs_(1, r) { coeffs_.front().canonicalize(); }
  Scalar(int k, std::vector<Rational> coeffs);

  static Scalar zero(int k = 1);
  static Scalar one(int k = 1);
  /// zeta_k as an element of Q(zeta_k).
  static Scalar zeta(int k);

  int field_order() const { return k_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const;
  /// The rational value; requires all non-constant coefficients zero.
  Rational rational_value() const;

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator-() const;
  /// Multiplicative inverse; throws EvalError on zero.
  Scalar inverse() const;
  Scalar pow(int e) const;
  bool operator==(const Scalar& rhs) const;

  /// Canonical text form, e.g. "1/2" or "z3:{-1/2,1}".
  std::string to_string() const;

 private:
  int k_;
  std::vector<Rational> coeffs_;  // size = deg Phi_k, reduced
  void reduce(std::vector<Rational>& raw) const;
  static const std::vector<Rational>& modulus(int k);
};

}  // namespace acspec

#endif
