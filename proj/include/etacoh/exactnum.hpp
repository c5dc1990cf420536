#pragma once

// Exact rationals and elements of cyclotomic fields Q(zeta_n).

#include <compare>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace etacoh {

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  Rational(long numerator, long denominator) : Rational(mpz_class(numerator), mpz_class(denominator)) {}
  explicit Rational(const mpq_class& q);

  /// Accepts `p`, `-p`, `p/q`; the result is reduced.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Lowest-terms text, `p` for integers and `p/q` otherwise.
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

/// 2^k as an exact rational, k may be negative.
Rational pow2(long k);

unsigned euler_phi(unsigned n);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term
/// first. Computed by dividing x^n - 1 by Phi_d for the proper divisors d.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

/// Element of Q(zeta_n), stored by its coefficients on 1, z, ..., z^(phi(n)-1)
/// modulo Phi_n. Values of different orders are combined in Q(zeta_lcm).
class Cyclotomic {
 public:
  /// Zero of Q(zeta_1) = Q.
  Cyclotomic();
  Cyclotomic(const Rational& r, unsigned order = 1);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long r) : Cyclotomic(Rational(r)) {}     // NOLINT(google-explicit-constructor)

  /// zeta_n^(k mod n).
  static Cyclotomic root_of_unity(unsigned n, long k);

  /// Reduces an arbitrary power-basis polynomial sum c_k z^k modulo Phi_n.
  static Cyclotomic from_powers(unsigned n, const std::vector<Rational>& powers);

  /// Parses `1/2*z^0 + -3/4*z^2 @ n=8`; a bare rational is accepted as order 1.
  static Cyclotomic parse(std::string_view text);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// The same number written in Q(zeta_m); m must be a multiple of order().
  Cyclotomic embed(unsigned m) const;

  bool is_zero() const;
  /// The rational value if every non-constant coefficient vanishes.
  std::optional<Rational> as_rational() const;
  /// Complex conjugation z -> z^(-1).
  Cyclotomic conjugate() const;
  Cyclotomic inverse() const;
  std::complex<double> to_complex() const;
  std::string str() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  Cyclotomic(unsigned order, std::vector<Rational> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}

  unsigned order_ = 1;
  std::vector<Rational> coeffs_;
};

/// z^k for a primitive n-th root z.
inline Cyclotomic root_of_unity(unsigned n, long k) { return Cyclotomic::root_of_unity(n, k); }

}  // namespace etacoh
