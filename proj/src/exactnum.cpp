#include "etacoh/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "etacoh/error.hpp"

namespace etacoh {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::NotASubgroupMap: return "NotASubgroupMap";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::NotFixedPointFree: return "NotFixedPointFree";
    case ErrorCode::NonRationalSum: return "NonRationalSum";
    case ErrorCode::NotVirtualDimensionZero: return "NotVirtualDimensionZero";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorCode::NonConfluentPresentation: return "NonConfluentPresentation";
    case ErrorCode::InconsistentSteenrodData: return "InconsistentSteenrodData";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    std::string digits = part;
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    const std::size_t start = (!digits.empty() && digits[0] == '-') ? 1 : 0;
    if (digits.size() == start ||
        !std::all_of(digits.begin() + static_cast<long>(start), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    }
    return mpz_class(digits);
  };
  if (slash == std::string::npos) return Rational(parse_int(s), 1);
  return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational pow2(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p, 1) : Rational(1, p);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

using Poly = std::vector<Rational>;  // constant term first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Exact division of integer polynomials (divisor monic).
std::vector<mpz_class> divide_monic(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class c = num[i];
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::mutex& phi_mutex() {
  static std::mutex m;
  return m;
}

std::map<unsigned, std::vector<mpz_class>>& phi_cache() {
  static std::map<unsigned, std::vector<mpz_class>> cache;
  return cache;
}

// Reduces p modulo the monic polynomial phi of degree d, in place.
void reduce_mod(Poly& p, const std::vector<mpz_class>& phi) {
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    if (p[i].is_zero()) continue;
    const Rational c = p[i];
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * Rational(phi[j], 1);
  }
  p.resize(d);
}

// Polynomial division with remainder over Q.
void poly_divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  rem = a;
  trim(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational());
  const Rational lead = b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const Rational c = rem.back() / lead;
    quot[shift] += c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] -= c * b[j];
    trim(rem);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  {
    std::lock_guard lock(phi_mutex());
    if (auto it = phi_cache().find(n); it != phi_cache().end()) return it->second;
  }
  std::vector<mpz_class> poly(n + 1);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(phi_mutex());
  phi_cache().emplace(n, poly);
  return poly;
}

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic() : order_(1), coeffs_(1) {}

Cyclotomic::Cyclotomic(const Rational& r, unsigned order) : order_(order), coeffs_(euler_phi(order)) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  coeffs_[0] = r;
}

Cyclotomic Cyclotomic::from_powers(unsigned n, const std::vector<Rational>& powers) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  Poly p(n);
  for (std::size_t k = 0; k < powers.size(); ++k) p[k % n] += powers[k];
  reduce_mod(p, cyclotomic_polynomial(n));
  return Cyclotomic(n, std::move(p));
}

Cyclotomic Cyclotomic::root_of_unity(unsigned n, long k) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "root of unity order must be positive");
  const long nn = static_cast<long>(n);
  const long e = ((k % nn) + nn) % nn;
  std::vector<Rational> powers(static_cast<std::size_t>(e) + 1);
  powers[static_cast<std::size_t>(e)] = 1;
  return from_powers(n, powers);
}

Cyclotomic Cyclotomic::embed(unsigned m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "cannot embed Q(zeta_" + std::to_string(order_) +
                                                ") into Q(zeta_" + std::to_string(m) + ")");
  }
  const unsigned step = m / order_;
  std::vector<Rational> powers(static_cast<std::size_t>(coeffs_.size()) * step);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) powers[k * step] = coeffs_[k];
  return from_powers(m, powers);
}

bool Cyclotomic::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return std::nullopt;
  }
  return coeffs_[0];
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<Rational> powers(order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) powers[(order_ - k) % order_] += coeffs_[k];
  return from_powers(order_, powers);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(order_) + ")");
  // Extended Euclid: find s with s*a = 1 mod Phi_n.
  const auto phi_int = cyclotomic_polynomial(order_);
  Poly phi;
  for (const auto& c : phi_int) phi.emplace_back(c, 1);
  Poly r0 = phi, r1 = coeffs_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since Phi_n is irreducible.
  const Rational g = r0.at(0);
  for (auto& c : s0) c /= g;
  s0.resize(std::max<std::size_t>(s0.size(), 1));
  std::vector<Rational> powers(s0.begin(), s0.end());
  // from_powers folds exponents mod n, which is harmless since deg s0 < phi(n).
  return from_powers(order_, powers);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z{0.0, 0.0};
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
    z += coeffs_[k].to_double() * std::polar(1.0, angle);
  }
  return z;
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    os << coeffs_[k].str() << "*z^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " @ n=" << order_;
  return os.str();
}

Cyclotomic Cyclotomic::parse(std::string_view text) {
  std::string s(text);
  unsigned n = 1;
  if (const auto at = s.find('@'); at != std::string::npos) {
    std::string tail = s.substr(at + 1);
    std::erase_if(tail, [](unsigned char c) { return std::isspace(c); });
    if (tail.rfind("n=", 0) != 0 || tail.size() == 2 ||
        !std::all_of(tail.begin() + 2, tail.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::ParseError, "malformed order suffix in '" + std::string(text) + "'");
    }
    n = static_cast<unsigned>(std::stoul(tail.substr(2)));
    if (n == 0) throw Error(ErrorCode::ParseError, "cyclotomic order must be positive");
    s = s.substr(0, at);
  }
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty cyclotomic literal");
  std::vector<Rational> powers(n);
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    // A '+' directly after '/' or at the start is a sign, not a separator.
    while (next != std::string::npos && (next == pos)) next = s.find('+', next + 1);
    const std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (term.empty()) throw Error(ErrorCode::ParseError, "empty term in '" + std::string(text) + "'");
    Rational coeff(1);
    long exponent = 0;
    const auto zpos = term.find('z');
    if (zpos == std::string::npos) {
      coeff = Rational::parse(term);
    } else {
      std::string c = term.substr(0, zpos);
      if (c == "-") {
        coeff = Rational(-1);
      } else if (!c.empty()) {
        if (c.back() != '*') throw Error(ErrorCode::ParseError, "expected '*' before z in '" + term + "'");
        c.pop_back();
        coeff = (c == "-") ? Rational(-1) : Rational::parse(c);
      }
      const std::string e = term.substr(zpos + 1);
      if (!e.empty()) {
        if (e[0] != '^' || e.size() == 1) throw Error(ErrorCode::ParseError, "malformed exponent in '" + term + "'");
        try {
          exponent = std::stol(e.substr(1));
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "malformed exponent in '" + term + "'");
        }
      } else {
        exponent = 1;
      }
    }
    const long nn = static_cast<long>(n);
    powers[static_cast<std::size_t>(((exponent % nn) + nn) % nn)] += coeff;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return from_powers(n, powers);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {
unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  const unsigned m = lcm_order(order_, o.order_);
  Cyclotomic a = embed(m);
  const Cyclotomic b = o.embed(m);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) a.coeffs_[k] += b.coeffs_[k];
  return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  const unsigned m = lcm_order(order_, o.order_);
  const Cyclotomic a = embed(m);
  const Cyclotomic b = o.embed(m);
  Poly prod = poly_mul(a.coeffs_, b.coeffs_);
  if (prod.empty()) prod.resize(1);
  const auto phi = cyclotomic_polynomial(m);
  if (prod.size() < phi.size()) prod.resize(phi.size());
  reduce_mod(prod, phi);
  return *this = Cyclotomic(m, std::move(prod));
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "cyclotomic division by zero");
  return *this *= o.inverse();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const unsigned m = std::lcm(a.order_, b.order_);
  return a.embed(m).coeffs_ == b.embed(m).coeffs_;
}

}  // namespace etacoh
