#pragma once

// Finite groups given by multiplication tables, their character tables,
// virtual characters, restriction along inclusions, and fixed-point-free
// unitary representations described by eigenvalue data.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etacoh/exactnum.hpp"

namespace etacoh {

using Element = std::uint32_t;

struct ConjugacyClass {
  std::string name;
  Element representative = 0;
  std::vector<Element> elements;
  std::size_t size() const { return elements.size(); }
};

class FiniteGroup {
 public:
  /// `table[a][b]` is the product ab. `generators` name the presentation's
  /// generators; `class_representatives` fixes the class order (any classes
  /// not listed are appended in order of their smallest element).
  FiniteGroup(std::string name, std::vector<std::vector<Element>> table,
              std::vector<std::pair<std::string, Element>> generators,
              std::vector<std::string> element_names,
              const std::vector<Element>& class_representatives = {});

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  Element identity() const { return identity_; }
  Element multiply(Element a, Element b) const { return table_[a][b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element power(Element a, long k) const;
  std::size_t element_order(Element a) const;

  const std::vector<std::pair<std::string, Element>>& generators() const { return generators_; }
  const std::string& element_name(Element a) const { return element_names_[a]; }
  /// Parses a word such as `t*s^3`, `ts`, `s^2` or an element name.
  Element parse_element(std::string_view word) const;

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::size_t class_of(Element a) const { return class_index_[a]; }

  /// Exhaustive check of associativity, identity and inverses.
  bool verify_axioms() const;

 private:
  std::string name_;
  std::vector<std::vector<Element>> table_;
  std::vector<std::pair<std::string, Element>> generators_;
  std::vector<std::string> element_names_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builtin groups: `C<n>` (n <= 64, also `C_<n>`), `V2`, `D8`, `Q8`, `SD16`.
/// Repeated calls with the same tag return the same object.
GroupPtr builtin_group(std::string_view tag);

/// Class function: one value per conjugacy class, in the group's class order.
using ClassFunction = std::vector<Cyclotomic>;

class CharacterTable {
 public:
  CharacterTable(GroupPtr group, std::vector<std::string> names, std::vector<ClassFunction> irreducibles);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const ClassFunction& irreducible(std::size_t i) const { return irreducibles_[i]; }
  /// Index of a named irreducible; aliases registered with add_alias work too.
  std::size_t index_of(std::string_view name) const;
  void add_alias(std::string alias, std::size_t index);
  const std::vector<std::pair<std::string, std::size_t>>& aliases() const { return aliases_; }

  /// <a, b> = |G|^-1 sum_g a(g) conj(b(g)).
  Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) const;
  /// Integer coordinates of a class function on the irreducibles.
  /// Throws ValidationError when the class function is not a virtual character.
  std::vector<long long> decompose(const ClassFunction& f) const;

  /// Max deviation from orthonormality of rows; zero for a valid table.
  bool rows_orthonormal() const;
  bool columns_orthogonal() const;

  /// Index of the irreducible whose values are the complex conjugates of i.
  std::size_t conjugate_of(std::size_t i) const;

 private:
  GroupPtr group_;
  std::vector<std::string> names_;
  std::vector<ClassFunction> irreducibles_;
  std::vector<std::pair<std::string, std::size_t>> aliases_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

/// Stored character table of a builtin group (validated by orthogonality).
TablePtr character_table(const GroupPtr& group);
TablePtr character_table(std::string_view tag);

class VirtualCharacter {
 public:
  VirtualCharacter(TablePtr table, std::vector<long long> coefficients);

  static VirtualCharacter zero(TablePtr table);
  /// n times the trivial character.
  static VirtualCharacter constant(TablePtr table, long long n);
  static VirtualCharacter irreducible(TablePtr table, std::string_view name);
  static VirtualCharacter from_class_function(TablePtr table, const ClassFunction& f);

  const TablePtr& table() const { return table_; }
  const std::vector<long long>& coefficients() const { return coefficients_; }
  ClassFunction values() const;
  Cyclotomic value_at_class(std::size_t c) const;
  Cyclotomic value_at(Element g) const;
  long long virtual_dimension() const;
  std::string str() const;

  VirtualCharacter operator-() const;
  VirtualCharacter& operator+=(const VirtualCharacter& o);
  VirtualCharacter& operator-=(const VirtualCharacter& o);
  /// Tensor product, re-expressed in the irreducible basis.
  VirtualCharacter& operator*=(const VirtualCharacter& o);
  VirtualCharacter& operator*=(long long n);
  VirtualCharacter pow(unsigned k) const;

  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  friend VirtualCharacter operator*(VirtualCharacter a, const VirtualCharacter& b) { return a *= b; }
  friend VirtualCharacter operator*(long long n, VirtualCharacter a) { return a *= n; }
  friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b);

 private:
  void require_same_table(const VirtualCharacter& o) const;

  TablePtr table_;
  std::vector<long long> coefficients_;
};

long long virtual_dimension(const VirtualCharacter& chi);

/// Parses integer combinations and products of named irreducibles, e.g.
/// `2 - tau`, `(2-tau)^2`, `4 + rho*rho5 - 2*(rho+rho5)`. Integers stand for
/// multiples of the trivial character. Throws ParseError with the column.
VirtualCharacter parse_virtual_character(const TablePtr& table, std::string_view text);

/// (1/|G|) sum_g chi(g^2) for an irreducible chi: +1 real, 0 complex, -1 quaternionic.
int frobenius_schur(const CharacterTable& table, std::size_t irreducible);
int frobenius_schur(const VirtualCharacter& chi);

/// A virtual character is of real type when it is an integer combination of
/// real irreducibles, conjugate pairs psi + conj(psi), and even multiples of
/// quaternionic irreducibles; quaternionic type swaps the roles of real and
/// quaternionic irreducibles.
bool is_real_type(const VirtualCharacter& chi);
bool is_quaternionic_type(const VirtualCharacter& chi);

/// Injective homomorphism H -> G fixed by the images of H's generators.
class GroupInclusion {
 public:
  GroupInclusion(GroupPtr source, GroupPtr target, const std::vector<Element>& generator_images);
  GroupInclusion(GroupPtr source, GroupPtr target, const std::vector<std::string>& generator_images);

  static GroupInclusion identity(const GroupPtr& group);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Element operator()(Element h) const { return map_[h]; }
  const std::vector<Element>& generator_images() const { return generator_images_; }
  /// `this` after `inner`: inner.source -> inner.target = this.source -> this.target.
  GroupInclusion after(const GroupInclusion& inner) const;
  std::string str() const;

 private:
  GroupInclusion(GroupPtr source, GroupPtr target, std::vector<Element> generator_images, std::vector<Element> map);
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> generator_images_;
  std::vector<Element> map_;
};

/// Restriction of chi (on the inclusion's target) to the source, expressed on `source_table`.
VirtualCharacter restrict_virtual(const VirtualCharacter& chi, const GroupInclusion& inclusion,
                                  const TablePtr& source_table);
VirtualCharacter restrict_virtual(const VirtualCharacter& chi, const GroupInclusion& inclusion);

/// Fixed-point-free unitary representation recorded by the eigenvalue
/// exponents k (eigenvalue zeta_n^k) at each class, plus a square root of its
/// determinant. Only the builders below construct one.
class FreeUnitaryRep {
 public:
  const GroupPtr& group() const { return group_; }
  std::size_t dimension() const { return dimension_; }
  unsigned root_order() const { return root_order_; }
  const std::vector<std::vector<unsigned>>& eigenvalues() const { return eigenvalues_; }
  const ClassFunction& det_sqrt() const { return det_sqrt_; }
  /// det(I - tau(g)) at class c.
  Cyclotomic det_one_minus(std::size_t c) const;
  /// det(tau(g)) at class c.
  Cyclotomic determinant(std::size_t c) const;
  /// Dimension 2m-1 of the space form S^(2m-1)/tau(G).
  int manifold_dimension() const { return 2 * static_cast<int>(dimension_) - 1; }
  std::string label() const { return label_; }

  friend FreeUnitaryRep cyclic_free_rep(unsigned l, const std::vector<long>& a);
  friend FreeUnitaryRep quaternion_free_rep(unsigned k);

 private:
  FreeUnitaryRep(GroupPtr group, unsigned root_order, std::vector<std::vector<unsigned>> eigenvalues,
                 ClassFunction det_sqrt, std::string label);

  GroupPtr group_;
  std::size_t dimension_ = 0;
  unsigned root_order_ = 1;
  std::vector<std::vector<unsigned>> eigenvalues_;
  ClassFunction det_sqrt_;
  std::string label_;
};

/// lambda -> diag(lambda^a_1, ..., lambda^a_2i) on C_l, det_sqrt = rho_{sum a / 2}.
FreeUnitaryRep cyclic_free_rep(unsigned l, const std::vector<long>& a);
/// (k+1) copies of the natural 2-dimensional representation of Q8; det_sqrt trivial.
FreeUnitaryRep quaternion_free_rep(unsigned k);

}  // namespace etacoh
