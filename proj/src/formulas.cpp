#include "acspec/formulas.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include "acspec/errors.hpp"

namespace acspec {

BigCount catalan(int n) {
  if (n < 0) throw std::invalid_argument("catalan: n must be >= 0");
  BigCount binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * static_cast<unsigned long>(n),
               static_cast<unsigned long>(n));
  return binom / (n + 1);
}

BigCount double_factorial_D(int n) {
  if (n < 0) throw std::invalid_argument("double_factorial_D: n must be >= 0");
  // (2n)!/(2^n n!) = 1*3*5*...*(2n-1)
  BigCount result = 1;
  for (int i = 1; i <= n; ++i) result *= 2 * i - 1;
  return result;
}

BigCount stirling2(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2: negative argument");
  if (k > n) return 0;
  if (n == 0) return 1;  // S(0,0)
  if (k == 0) return 0;
  std::vector<BigCount> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

BigCount factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
  BigCount result;
  mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
  return result;
}

BigCount tree_power(int n) {
  if (n < 1) throw std::invalid_argument("tree_power: n must be >= 1");
  BigCount result;
  mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(n - 1));
  return result;
}

BigCount ac_right_k(int n, int k) {
  if (n < 1) throw std::invalid_argument("ac_right_k: n must be >= 1");
  if (k < 2) throw std::invalid_argument("ac_right_k: k must be >= 2");
  BigCount total = factorial(k) * stirling2(n, k);
  BigCount tail = 0;
  for (int i = 0; i <= k - 2; ++i) tail += factorial(i) * stirling2(n - 1, i);
  return total + n * tail;
}

BigCount jacobsthal_ac(int n) {
  if (n < 1) throw std::invalid_argument("jacobsthal_ac: n must be >= 1");
  BigCount p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  if (n % 2 == 0) return BigCount((p - 1) / 3);
  return BigCount((p + 1) / 3);
}

BigCount floor_two_thirds(int n) {
  if (n < 1) throw std::invalid_argument("floor_two_thirds: n must be >= 1");
  BigCount p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return p / 3;
}

namespace {

// Ways to write num/2^exp as an ordered sum of `slots` terms 2^{-d}, d >= 1.
// Mass is kept in lowest terms: num odd or exp == 0.
BigCount compositions_rec(int slots, const BigCount& num, int exp,
                          std::map<std::tuple<int, BigCount, int>, BigCount>& memo) {
  if (slots == 0) return (num == 0) ? 1 : 0;
  if (num <= 0) return 0;
  // Each term is at most 1/2 and at least 2^{-exp'} for any fixed bound;
  // remaining mass must satisfy num/2^exp <= slots/2.
  if (num * 2 > BigCount(slots) << exp) return 0;
  auto key = std::make_tuple(slots, num, exp);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  BigCount total = 0;
  // First slot takes 2^{-d}; d beyond exp+slots-1 cannot be completed since
  // the denominator of the remaining mass never exceeds 2^{slots-1} more.
  for (int d = 1; d <= exp + slots; ++d) {
    // num/2^exp - 2^{-d} = (num*2^{d-exp} - 1)/2^d when d >= exp.
    BigCount scaled_num;
    int scaled_exp;
    if (d >= exp) {
      scaled_num = (num << (d - exp)) - 1;
      scaled_exp = d;
    } else {
      scaled_num = num - (BigCount(1) << (exp - d));
      scaled_exp = exp;
    }
    if (scaled_num < 0) continue;  // 2^{-d} still larger than the mass
    while (scaled_exp > 0 && scaled_num % 2 == 0) {
      scaled_num /= 2;
      --scaled_exp;
    }
    total += compositions_rec(slots - 1, scaled_num, scaled_exp, memo);
  }
  memo[key] = total;
  return total;
}

}  // namespace

BigCount compositions_of_one(int n) {
  if (n < 1) throw std::invalid_argument("compositions_of_one: n must be >= 1");
  if (n == 1) return 1;  // the single-leaf solution 2^0
  std::map<std::tuple<int, BigCount, int>, BigCount> memo;
  return compositions_rec(n, 1, 0, memo);
}

EgfSeries::EgfSeries(Basis basis, int order) : basis_(basis), order_(order) {
  if (order < 0 || order > 64) throw SizeError("EgfSeries: order out of range [0, 64]");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
}

EgfSeries EgfSeries::zero(int order, Basis basis) { return EgfSeries(basis, order); }

EgfSeries EgfSeries::one(int order, Basis basis) {
  EgfSeries s(basis, order);
  s.coeff(0) = 1;
  return s;
}

EgfSeries EgfSeries::t(int order, Basis basis) {
  EgfSeries s(basis, order);
  if (order >= 1) s.coeff(1) = 1;
  return s;
}

EgfSeries EgfSeries::exp_minus_one(int order) {
  EgfSeries s(Basis::egf, order);
  for (int n = 1; n <= order; ++n) s.coeff(n) = 1;
  return s;
}

const Rational& EgfSeries::coeff(int n) const {
  if (n < 0 || n > order_) throw std::out_of_range("EgfSeries::coeff");
  return coeffs_[static_cast<std::size_t>(n)];
}

Rational& EgfSeries::coeff(int n) {
  if (n < 0 || n > order_) throw std::out_of_range("EgfSeries::coeff");
  return coeffs_[static_cast<std::size_t>(n)];
}

Rational EgfSeries::egf_coeff(int n) const {
  Rational c = coeff(n);
  if (basis_ == Basis::plain) {
    Rational f(factorial(n));
    c *= f;
  }
  return c;
}

EgfSeries EgfSeries::operator+(const EgfSeries& rhs) const {
  if (basis_ != rhs.basis_) throw std::invalid_argument("EgfSeries: basis mismatch");
  EgfSeries result(basis_, std::min(order_, rhs.order_));
  for (int n = 0; n <= result.order_; ++n) result.coeff(n) = coeff(n) + rhs.coeff(n);
  return result;
}

EgfSeries EgfSeries::operator*(const EgfSeries& rhs) const {
  if (basis_ != rhs.basis_) throw std::invalid_argument("EgfSeries: basis mismatch");
  EgfSeries result(basis_, std::min(order_, rhs.order_));
  for (int n = 0; n <= result.order_; ++n) {
    Rational acc(0);
    for (int i = 0; i <= n; ++i) {
      Rational term = coeff(i) * rhs.coeff(n - i);
      if (basis_ == Basis::egf) {
        // binomial convolution: a_i b_{n-i} binom(n, i)
        BigCount binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(i));
        term *= Rational(binom);
      }
      acc += term;
    }
    result.coeff(n) = acc;
  }
  return result;
}

EgfSeries EgfSeries::pow(int e) const {
  if (e < 0) throw std::invalid_argument("EgfSeries::pow: negative exponent");
  EgfSeries result = EgfSeries::one(order_, basis_);
  EgfSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

EgfSeries egf_expand(std::span<const EgfTerm> terms, int order) {
  if (order > 20) throw SizeError("egf_expand: order capped at 20");
  EgfSeries acc = EgfSeries::zero(order);
  for (const EgfTerm& term : terms) {
    EgfSeries s = EgfSeries::exp_minus_one(order).pow(term.exp_minus_one_power);
    if (term.times_t) s = s * EgfSeries::t(order);
    acc = acc + s;
  }
  return acc;
}

EgfSeries egf_right_k(int k, int order) {
  std::vector<EgfTerm> terms;
  terms.push_back({k, false});
  for (int i = 0; i <= k - 2; ++i) terms.push_back({i, true});
  return egf_expand(terms, order);
}

}  // namespace acspec
