#include "acspec/scalar.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "acspec/errors.hpp"

namespace acspec {

namespace {

// Polynomial long division over Q; both dense, constant term first.
// Returns the remainder of a by b (b monic after normalization).
std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    Rational lead = a.back() / b[db];
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    if (a.size() == db + 1 && a.back() == 0) a.pop_back();
  }
  return a;
}

std::vector<mpz_class> poly_div_exact(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b) {
  std::vector<mpz_class> rem = a;
  std::vector<mpz_class> quot(a.size() - b.size() + 1, mpz_class(0));
  for (std::size_t qi = quot.size(); qi-- > 0;) {
    mpz_class c = rem[qi + b.size() - 1] / b.back();
    quot[qi] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[qi + j] -= c * b[j];
  }
  return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(int k) {
  if (k < 1) throw std::invalid_argument("cyclotomic_polynomial: k must be >= 1");
  // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d.
  std::vector<mpz_class> num(static_cast<std::size_t>(k) + 1, mpz_class(0));
  num.front() = -1;
  num.back() = 1;
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    num = poly_div_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

const std::vector<Rational>& Scalar::modulus(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<Rational>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) {
    std::vector<Rational> phi;
    for (const mpz_class& c : cyclotomic_polynomial(k)) phi.emplace_back(c);
    it = cache.emplace(k, std::move(phi)).first;
  }
  return it->second;
}

Scalar::Scalar(int k, std::vector<Rational> coeffs) : k_(k) {
  if (k < 1) throw std::invalid_argument("Scalar: field order must be >= 1");
  reduce(coeffs);
  coeffs_ = std::move(coeffs);
}

void Scalar::reduce(std::vector<Rational>& raw) const {
  const std::vector<Rational>& phi = modulus(k_);
  const std::size_t deg = phi.size() - 1;
  if (raw.empty()) raw.assign(1, Rational(0));
  if (raw.size() > deg) raw = poly_mod(std::move(raw), phi);
  raw.resize(deg, Rational(0));
  for (Rational& c : raw) c.canonicalize();
}

Scalar Scalar::zero(int k) {
  return Scalar(k, std::vector<Rational>{Rational(0)});
}

Scalar Scalar::one(int k) {
  return Scalar(k, std::vector<Rational>{Rational(1)});
}

Scalar Scalar::zeta(int k) {
  if (k == 1) return one(1);
  std::vector<Rational> x{Rational(0), Rational(1)};
  return Scalar(k, std::move(x));
}

bool Scalar::is_zero() const {
  for (const Rational& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw EvalError("Scalar: value is not rational");
  return coeffs_.front();
}

namespace {

// Embeds a rational constant into the other operand's field when the
// orders differ; mixing two proper cyclotomic fields is rejected.
std::pair<Scalar, Scalar> align(const Scalar& a, const Scalar& b) {
  if (a.field_order() == b.field_order()) return {a, b};
  if (a.field_order() == 1 && a.is_rational())
    return {Scalar(b.field_order(), {a.rational_value()}), b};
  if (b.field_order() == 1 && b.is_rational())
    return {a, Scalar(a.field_order(), {b.rational_value()})};
  throw EvalError("Scalar: mixed cyclotomic field orders " +
                  std::to_string(a.field_order()) + " and " +
                  std::to_string(b.field_order()));
}

}  // namespace

Scalar Scalar::operator+(const Scalar& rhs) const {
  auto [a, b] = align(*this, rhs);
  std::vector<Rational> out = a.coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
  return Scalar(a.k_, std::move(out));
}

Scalar Scalar::operator-(const Scalar& rhs) const { return *this + (-rhs); }

Scalar Scalar::operator-() const {
  std::vector<Rational> out = coeffs_;
  for (Rational& c : out) c = -c;
  return Scalar(k_, std::move(out));
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  auto [a, b] = align(*this, rhs);
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Scalar(a.k_, std::move(out));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw EvalError("Scalar: division by zero");
  if (is_rational()) {
    Rational inv = 1 / rational_value();
    return Scalar(k_, {inv});
  }
  // Solve (this * x = 1) as a linear system over Q: column j of M holds the
  // reduced coefficients of this * zeta^j. Phi_k is irreducible, so M is
  // invertible for nonzero elements.
  const std::size_t deg = coeffs_.size();
  std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg + 1, Rational(0)));
  for (std::size_t j = 0; j < deg; ++j) {
    std::vector<Rational> basis(j + 1, Rational(0));
    basis[j] = 1;
    Scalar col = *this * Scalar(k_, std::move(basis));
    for (std::size_t i = 0; i < deg; ++i) m[i][j] = col.coeffs()[i];
  }
  m[0][deg] = 1;  // right-hand side e_0
  for (std::size_t col = 0; col < deg; ++col) {
    std::size_t pivot = col;
    while (pivot < deg && m[pivot][col] == 0) ++pivot;
    if (pivot == deg) throw EvalError("Scalar: singular multiplication matrix");
    std::swap(m[col], m[pivot]);
    Rational lead = m[col][col];
    for (std::size_t j = col; j <= deg; ++j) m[col][j] /= lead;
    for (std::size_t row = 0; row < deg; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col];
      for (std::size_t j = col; j <= deg; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  std::vector<Rational> inv(deg);
  for (std::size_t i = 0; i < deg; ++i) inv[i] = m[i][deg];
  return Scalar(k_, std::move(inv));
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = Scalar::one(k_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Scalar::operator==(const Scalar& rhs) const {
  if (k_ != rhs.k_) {
    if (is_rational() && rhs.is_rational()) return rational_value() == rhs.rational_value();
    return false;
  }
  return coeffs_ == rhs.coeffs_;
}

std::string Scalar::to_string() const {
  auto q_str = [](const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
  };
  if (k_ == 1 || is_rational()) return q_str(coeffs_.front());
  std::string out = "z" + std::to_string(k_) + ":{";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += q_str(coeffs_[i]);
  }
  out += "}";
  return out;
}

}  // namespace acspec
