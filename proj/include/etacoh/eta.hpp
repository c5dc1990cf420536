#pragma once

// Donnelly eta sums for spherical space forms and lens-space bundles, orders
// in R/Z and R/2Z, eta vectors and determinant order bounds.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etacoh/exactnum.hpp"
#include "etacoh/grouprep.hpp"

namespace etacoh {

enum class Modulus { Z, TwoZ };

std::string modulus_name(Modulus m);

/// Least m >= 1 with m*v in Z (resp. 2Z).
mpz_class eta_order(const Rational& v, Modulus modulus);

struct EtaValue {
  Rational value;
  Modulus modulus = Modulus::Z;

  mpz_class order() const { return eta_order(value, modulus); }
  /// Representative in [0, 1) or [0, 2).
  Rational reduced() const;
  /// The value read in R/Z: R/2Z values are halved.
  EtaValue normalized() const;
  /// `p/q (order N mod Z)`.
  std::string str() const;
  /// Equality in the circle group.
  bool same_class(const EtaValue& other) const;
  /// Equality up to sign in the circle group.
  bool same_class_up_to_sign(const EtaValue& other) const;
};

/// R/2Z exactly when chi is of real type and the dimension is 3 mod 8, or of
/// quaternionic type and the dimension is 7 mod 8.
Modulus range_for(const VirtualCharacter& chi, int dimension);

/// |G|^-1 sum_{g != 1} Tr(rho(g)) det(tau(g))^(1/2) / det(1 - tau(g)).
Rational eta_donnelly(const FreeUnitaryRep& tau, const VirtualCharacter& rho);
/// Double-precision evaluation of the same sum from the eigenvalue data.
double eta_donnelly_float(const FreeUnitaryRep& tau, const VirtualCharacter& rho);

struct LensSpec {
  enum class Kind { Sphere, Bundle };

  unsigned l = 2;
  std::vector<long> a;
  Kind kind = Kind::Sphere;
  std::vector<long> chern;

  static LensSpec sphere(unsigned l, std::vector<long> a);
  static LensSpec bundle(unsigned l, std::vector<long> a, std::vector<long> chern);

  /// 4i-1 for the sphere quotient, 4i+1 for the bundle, where |a| = 2i.
  int dimension() const;
  std::string str() const;
  void validate() const;
};

/// l^-1 sum_{lambda != 1} lambda^(sum a / 2) prod (1 - lambda^a_j)^-1 Tr(rho(lambda)).
Rational eta_lens_cyclic(const LensSpec& spec, const VirtualCharacter& rho);
/// The sphere summand times sum_j (c_j / 2) (1 + lambda^a_j) / (1 - lambda^a_j).
Rational eta_lens_bundle(const LensSpec& spec, const VirtualCharacter& rho);
/// Dispatches on spec.kind.
Rational eta_lens(const LensSpec& spec, const VirtualCharacter& rho);
/// Double-precision evaluation of eta_lens from the weights.
double eta_lens_float(const LensSpec& spec, const VirtualCharacter& rho);

/// Exact determinant: rows are scaled to integers and reduced by Bareiss elimination.
Rational determinant(const std::vector<std::vector<Rational>>& rows);
/// Order of det(rows) in R/Z; 1 when the determinant is an integer.
mpz_class span_order_lower_bound(const std::vector<std::vector<Rational>>& rows);

struct RecursionResult {
  Rational extended;  // eta(L(8, a ++ (1,1,5,5)))(rho4 - rho0)
  Rational base;      // eta(L(8, a))(rho4 - rho0)
  bool holds = false;
};

RecursionResult recursion_values(const std::vector<long>& a);
bool recursion_check(const std::vector<long>& a);

/// One signed summand of a manifold class: a space form S(tau)/H or a lens
/// bundle over C_l, mapped into the ambient group by `inclusion`, times
/// `bott` copies of the Bott manifold.
struct ManifoldTerm {
  long long coefficient = 1;
  std::variant<FreeUnitaryRep, LensSpec> model;
  GroupInclusion inclusion;
  int bott = 0;

  int dimension() const;
  Rational eta(const VirtualCharacter& ambient_rho) const;
};

struct ManifoldClass {
  std::string label;
  std::vector<ManifoldTerm> terms;

  static ManifoldClass single(std::string label, std::variant<FreeUnitaryRep, LensSpec> model, GroupInclusion inclusion,
                              int bott = 0);
  ManifoldClass minus(const ManifoldClass& other, std::string label) const;
  ManifoldClass plus(const ManifoldClass& other, std::string label) const;

  int dimension() const;
  const GroupPtr& ambient() const;
  Rational eta(const VirtualCharacter& ambient_rho) const;
};

struct EtaVector {
  std::vector<EtaValue> entries;
  std::vector<std::string> labels;
};

/// Entry j is eta(m)(rhos[j]) in the range chosen by range_for, unless
/// `moduli` overrides it.
EtaVector eta_vector(const ManifoldClass& m, const std::vector<VirtualCharacter>& rhos,
                     const std::optional<std::vector<Modulus>>& moduli = std::nullopt);

}  // namespace etacoh
