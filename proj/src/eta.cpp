#include "etacoh/eta.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "etacoh/error.hpp"

namespace etacoh {

std::string modulus_name(Modulus m) { return m == Modulus::Z ? "Z" : "2Z"; }

mpz_class eta_order(const Rational& v, Modulus modulus) {
  const mpz_class den = v.denominator();
  if (modulus == Modulus::Z) return den;
  const mpz_class twice = 2 * den;
  mpz_class g;
  const mpz_class num = abs(v.numerator());
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), twice.get_mpz_t());
  return twice / g;
}

Rational EtaValue::reduced() const {
  const mpz_class m = modulus == Modulus::Z ? 1 : 2;
  const mpz_class den = value.denominator();
  mpz_class num = value.numerator() % (m * den);
  if (num < 0) num += m * den;
  return Rational(num, den);
}

EtaValue EtaValue::normalized() const {
  if (modulus == Modulus::Z) return *this;
  return EtaValue{value / Rational(2), Modulus::Z};
}

std::string EtaValue::str() const {
  return value.str() + " (order " + order().get_str() + " mod " + modulus_name(modulus) + ")";
}

bool EtaValue::same_class(const EtaValue& other) const {
  if (modulus != other.modulus) return false;
  return EtaValue{value - other.value, modulus}.order() == 1;
}

bool EtaValue::same_class_up_to_sign(const EtaValue& other) const {
  return same_class(other) || same_class(EtaValue{-other.value, other.modulus});
}

Modulus range_for(const VirtualCharacter& chi, int dimension) {
  const int r = ((dimension % 8) + 8) % 8;
  if (r == 3 && is_real_type(chi)) return Modulus::TwoZ;
  if (r == 7 && is_quaternionic_type(chi)) return Modulus::TwoZ;
  return Modulus::Z;
}

// ---------------------------------------------------------------------------
// Donnelly sum

namespace {

void require_group(const VirtualCharacter& rho, const GroupPtr& group) {
  if (rho.table()->group() != group) {
    throw Error(ErrorCode::GroupMismatch, "character on " + rho.table()->group()->name() +
                                              " used with a representation of " + group->name());
  }
}

Rational require_rational(const Cyclotomic& total, const std::string& what) {
  const auto r = total.as_rational();
  if (!r) throw Error(ErrorCode::NonRationalSum, what + " is not rational: " + total.str());
  return *r;
}

}  // namespace

Rational eta_donnelly(const FreeUnitaryRep& tau, const VirtualCharacter& rho) {
  require_group(rho, tau.group());
  const auto& g = *tau.group();
  Cyclotomic total(Rational(0), tau.root_order());
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto& cls = g.classes()[c];
    if (cls.representative == g.identity()) continue;
    const Cyclotomic denom = tau.det_one_minus(c);
    if (denom.is_zero()) {
      throw Error(ErrorCode::NotFixedPointFree, tau.label() + " has eigenvalue 1 at " + cls.name);
    }
    const Cyclotomic trace = rho.value_at_class(c);
    if (trace.is_zero()) continue;
    total += Cyclotomic(static_cast<long>(cls.size())) * trace * tau.det_sqrt()[c] / denom;
  }
  total /= Cyclotomic(static_cast<long>(g.order()));
  return require_rational(total, "Donnelly sum for " + tau.label());
}

double eta_donnelly_float(const FreeUnitaryRep& tau, const VirtualCharacter& rho) {
  require_group(rho, tau.group());
  const auto& g = *tau.group();
  const double n = tau.root_order();
  std::complex<double> total{0.0, 0.0};
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto& cls = g.classes()[c];
    if (cls.representative == g.identity()) continue;
    std::complex<double> denom{1.0, 0.0};
    for (unsigned k : tau.eigenvalues()[c]) denom *= 1.0 - std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    total += static_cast<double>(cls.size()) * rho.value_at_class(c).to_complex() * tau.det_sqrt()[c].to_complex() / denom;
  }
  return total.real() / static_cast<double>(g.order());
}

// ---------------------------------------------------------------------------
// Lens spaces and bundles

LensSpec LensSpec::sphere(unsigned l, std::vector<long> a) {
  LensSpec s;
  s.l = l;
  s.a = std::move(a);
  s.kind = Kind::Sphere;
  s.validate();
  return s;
}

LensSpec LensSpec::bundle(unsigned l, std::vector<long> a, std::vector<long> chern) {
  LensSpec s;
  s.l = l;
  s.a = std::move(a);
  s.kind = Kind::Bundle;
  s.chern = std::move(chern);
  s.validate();
  return s;
}

void LensSpec::validate() const {
  if (l < 2 || l > 64 || (l & (l - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "lens group order must be a power of 2 between 2 and 64, got " + std::to_string(l));
  }
  for (long x : a) {
    if (x % 2 == 0) throw Error(ErrorCode::NotFree, "weight " + std::to_string(x) + " is even");
  }
  if (a.empty() || a.size() % 2 != 0) {
    throw Error(ErrorCode::OddLength, "weight tuple must have even positive length, got " + std::to_string(a.size()));
  }
  if (kind == Kind::Bundle && chern.size() != a.size()) {
    throw Error(ErrorCode::InvalidArgument, "bundle needs one Chern number per weight");
  }
}

int LensSpec::dimension() const {
  const int i = static_cast<int>(a.size()) / 2;
  return kind == Kind::Sphere ? 4 * i - 1 : 4 * i + 1;
}

std::string LensSpec::str() const {
  std::ostringstream os;
  os << (kind == Kind::Sphere ? "L" : "X") << dimension() << "(" << l << ";";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  if (kind == Kind::Bundle) {
    os << ";c=";
    for (std::size_t i = 0; i < chern.size(); ++i) os << (i ? "," : "") << chern[i];
  }
  os << ")";
  return os.str();
}

namespace {

Rational lens_sum(const LensSpec& spec, const VirtualCharacter& rho, bool bundle) {
  spec.validate();
  const GroupPtr g = builtin_group("C" + std::to_string(spec.l));
  require_group(rho, g);
  if (rho.virtual_dimension() != 0) {
    throw Error(ErrorCode::NotVirtualDimensionZero, rho.str() + " has virtual dimension " +
                                                        std::to_string(rho.virtual_dimension()));
  }
  const unsigned l = spec.l;
  const long ll = static_cast<long>(l);
  long half = 0;
  for (long x : spec.a) half += x;
  half /= 2;
  const Cyclotomic one(Rational(1), l);
  const auto& coeffs = rho.coefficients();
  Cyclotomic total(Rational(0), l);
  for (long k = 1; k < ll; ++k) {
    // Tr rho(lambda^k) with rho = sum c_j rho_j and rho_j(lambda) = zeta^j.
    Cyclotomic trace(Rational(0), l);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0) trace += Cyclotomic(static_cast<long>(coeffs[j])) * root_of_unity(l, static_cast<long>(j) * k);
    }
    if (trace.is_zero()) continue;
    Cyclotomic denom = one;
    for (long x : spec.a) denom *= one - root_of_unity(l, k * x);
    Cyclotomic term = trace * root_of_unity(l, k * half) / denom;
    if (bundle) {
      Cyclotomic factor(Rational(0), l);
      for (std::size_t j = 0; j < spec.a.size(); ++j) {
        if (spec.chern[j] == 0) continue;
        const Cyclotomic w = root_of_unity(l, k * spec.a[j]);
        factor += Cyclotomic(Rational(spec.chern[j], 2)) * (one + w) / (one - w);
      }
      term *= factor;
    }
    total += term;
  }
  total /= Cyclotomic(ll);
  return require_rational(total, "lens sum for " + spec.str());
}

}  // namespace

Rational eta_lens_cyclic(const LensSpec& spec, const VirtualCharacter& rho) {
  if (spec.kind != LensSpec::Kind::Sphere) throw Error(ErrorCode::InvalidArgument, spec.str() + " is not a sphere quotient");
  return lens_sum(spec, rho, false);
}

Rational eta_lens_bundle(const LensSpec& spec, const VirtualCharacter& rho) {
  if (spec.kind != LensSpec::Kind::Bundle) throw Error(ErrorCode::InvalidArgument, spec.str() + " is not a bundle");
  return lens_sum(spec, rho, true);
}

Rational eta_lens(const LensSpec& spec, const VirtualCharacter& rho) {
  return spec.kind == LensSpec::Kind::Sphere ? eta_lens_cyclic(spec, rho) : eta_lens_bundle(spec, rho);
}

double eta_lens_float(const LensSpec& spec, const VirtualCharacter& rho) {
  spec.validate();
  require_group(rho, builtin_group("C" + std::to_string(spec.l)));
  const double l = spec.l;
  long half = 0;
  for (long x : spec.a) half += x;
  half /= 2;
  const auto root = [&](long e) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / l); };
  const auto& coeffs = rho.coefficients();
  std::complex<double> total{0.0, 0.0};
  for (long k = 1; k < static_cast<long>(spec.l); ++k) {
    std::complex<double> trace{0.0, 0.0};
    for (std::size_t j = 0; j < coeffs.size(); ++j) trace += static_cast<double>(coeffs[j]) * root(static_cast<long>(j) * k);
    std::complex<double> term = trace * root(k * half);
    for (long x : spec.a) term /= 1.0 - root(k * x);
    if (spec.kind == LensSpec::Kind::Bundle) {
      std::complex<double> factor{0.0, 0.0};
      for (std::size_t j = 0; j < spec.a.size(); ++j) {
        const auto w = root(k * spec.a[j]);
        factor += 0.5 * static_cast<double>(spec.chern[j]) * (1.0 + w) / (1.0 - w);
      }
      term *= factor;
    }
    total += term;
  }
  return total.real() / l;
}

// ---------------------------------------------------------------------------
// Determinants

Rational determinant(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::InvalidArgument, "determinant needs a square matrix");
  }
  if (n == 0) return Rational(1);
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class d = 1;
    for (const auto& x : rows[i]) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.denominator().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[i][j].numerator() * (d / rows[i][j].denominator());
    scale *= d;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return Rational(sign * m[n - 1][n - 1], scale);
}

mpz_class span_order_lower_bound(const std::vector<std::vector<Rational>>& rows) {
  return determinant(rows).denominator();
}

RecursionResult recursion_values(const std::vector<long>& a) {
  const TablePtr t = character_table("C8");
  const VirtualCharacter rho = VirtualCharacter::irreducible(t, "r4") - VirtualCharacter::irreducible(t, "r0");
  std::vector<long> extended = a;
  extended.insert(extended.end(), {1, 1, 5, 5});
  RecursionResult r;
  r.extended = eta_lens_cyclic(LensSpec::sphere(8, extended), rho);
  r.base = eta_lens_cyclic(LensSpec::sphere(8, a), rho);
  r.holds = r.extended == r.base / Rational(2);
  return r;
}

bool recursion_check(const std::vector<long>& a) { return recursion_values(a).holds; }

// ---------------------------------------------------------------------------
// Manifold classes

int ManifoldTerm::dimension() const {
  const int base = std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FreeUnitaryRep>) {
          return m.manifold_dimension();
        } else {
          return m.dimension();
        }
      },
      model);
  return base + 8 * bott;
}

Rational ManifoldTerm::eta(const VirtualCharacter& ambient_rho) const {
  const VirtualCharacter restricted = restrict_virtual(ambient_rho, inclusion);
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FreeUnitaryRep>) {
          return eta_donnelly(m, restricted);
        } else {
          return eta_lens(m, restricted);
        }
      },
      model);
}

ManifoldClass ManifoldClass::single(std::string label, std::variant<FreeUnitaryRep, LensSpec> model,
                                    GroupInclusion inclusion, int bott) {
  ManifoldClass m;
  m.label = std::move(label);
  m.terms.push_back(ManifoldTerm{1, std::move(model), std::move(inclusion), bott});
  m.dimension();
  return m;
}

namespace {

ManifoldClass combine(const ManifoldClass& a, const ManifoldClass& b, long long sign, std::string label) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::GroupMismatch, "manifolds over different groups");
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::InvalidArgument, "manifolds of different dimensions");
  ManifoldClass m = a;
  m.label = std::move(label);
  for (auto t : b.terms) {
    t.coefficient *= sign;
    m.terms.push_back(std::move(t));
  }
  return m;
}

}  // namespace

ManifoldClass ManifoldClass::minus(const ManifoldClass& other, std::string label) const {
  return combine(*this, other, -1, std::move(label));
}

ManifoldClass ManifoldClass::plus(const ManifoldClass& other, std::string label) const {
  return combine(*this, other, 1, std::move(label));
}

int ManifoldClass::dimension() const {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "empty manifold class");
  const int d = terms.front().dimension();
  for (const auto& t : terms) {
    if (t.dimension() != d) throw Error(ErrorCode::InvalidArgument, "terms of " + label + " differ in dimension");
  }
  return d;
}

const GroupPtr& ManifoldClass::ambient() const {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "empty manifold class");
  return terms.front().inclusion.target();
}

Rational ManifoldClass::eta(const VirtualCharacter& ambient_rho) const {
  Rational total(0);
  for (const auto& t : terms) total += Rational(static_cast<long>(t.coefficient)) * t.eta(ambient_rho);
  return total;
}

EtaVector eta_vector(const ManifoldClass& m, const std::vector<VirtualCharacter>& rhos,
                     const std::optional<std::vector<Modulus>>& moduli) {
  if (moduli && moduli->size() != rhos.size()) throw Error(ErrorCode::InvalidArgument, "one modulus per character");
  EtaVector v;
  const int dim = m.dimension();
  for (std::size_t j = 0; j < rhos.size(); ++j) {
    const Modulus mod = moduli ? (*moduli)[j] : range_for(rhos[j], dim);
    v.entries.push_back(EtaValue{m.eta(rhos[j]), mod});
    v.labels.push_back(rhos[j].str());
  }
  return v;
}

}  // namespace etacoh
