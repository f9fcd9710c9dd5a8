#ifndef ACSPEC_FORMULAS_HPP
#define ACSPEC_FORMULAS_HPP

#include <gmpxx.h>

#include <span>
#include <vector>

namespace acspec {

using BigCount = mpz_class;
using Rational = mpq_class;

/// Catalan number C_n = binom(2n, n) / (n + 1).
BigCount catalan(int n);

/// D_n = (2n)!/(2^n n!) = (2n-1)!!; D_{n-1} counts unordered leaf-labeled
/// binary trees with n leaves.
BigCount double_factorial_D(int n);

/// Stirling number of the second kind, S(0,0) = 1.
BigCount stirling2(int n, int k);

BigCount factorial(int n);

/// n^{n-1}, the number of unordered rooted trees with n labeled vertices.
BigCount tree_power(int n);

/// k! S(n,k) + n * sum_{i=0}^{k-2} i! S(n-1,i): the ac-spectrum of a
/// right-k-associative operation with full k-right-depth equivalence.
BigCount ac_right_k(int n, int k);

/// (2^n - (-1)^n) / 3 (Jacobsthal numbers).
BigCount jacobsthal_ac(int n);

/// floor(2^n / 3).
BigCount floor_two_thirds(int n);

/// Number of ordered sequences (d_1..d_n) of nonnegative integers with
/// sum 2^{-d_i} = 1 (compositions of 1 into n powers of 2). Computed by a
/// dynamic program over (slots left, remaining dyadic mass); never touches
/// tree enumeration.
BigCount compositions_of_one(int n);

/// Truncated series with exact rational coefficients. In the egf basis the
/// n-th coefficient is the coefficient of t^n/n!; in the plain basis it is
/// the coefficient of t^n.
class EgfSeries {
 public:
  enum class Basis { egf, plain };

  EgfSeries(Basis basis, int order);

  static EgfSeries zero(int order, Basis basis = Basis::egf);
  static EgfSeries one(int order, Basis basis = Basis::egf);
  /// The series t.
  static EgfSeries t(int order, Basis basis = Basis::egf);
  /// The series e^t - 1 (egf coefficients all 1 from n=1 on).
  static EgfSeries exp_minus_one(int order);

  Basis basis() const { return basis_; }
  int order() const { return order_; }
  const Rational& coeff(int n) const;
  Rational& coeff(int n);
  /// Coefficient of t^n/n! regardless of stored basis.
  Rational egf_coeff(int n) const;

  EgfSeries operator+(const EgfSeries& rhs) const;
  EgfSeries operator*(const EgfSeries& rhs) const;
  EgfSeries pow(int e) const;

 private:
  Basis basis_;
  int order_;
  std::vector<Rational> coeffs_;
};

/// One summand of the shape t^{0|1} * (e^t - 1)^p.
struct EgfTerm {
  int exp_minus_one_power = 0;
  bool times_t = false;
};

/// Expands sum of EgfTerms to the given truncation order (order <= 20).
EgfSeries egf_expand(std::span<const EgfTerm> terms, int order);

/// The EGF of ac_right_k: (e^t-1)^k + sum_{0<=i<=k-2} t (e^t-1)^i.
EgfSeries egf_right_k(int k, int order);

}  // namespace acspec

#endif
