#pragma once

// Finitely presented graded-commutative algebras over F2: Groebner normal
// forms, graded bases, homomorphisms and their duals, Steenrod squares via
// the Cartan formula, Wu and Stiefel-Whitney classes.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etacoh {

using Monomial = std::vector<std::uint16_t>;
/// Sum of distinct monomials, sorted in decreasing monomial order.
using F2Poly = std::vector<Monomial>;

constexpr int kDefaultDegreeBound = 64;

/// Polynomial ring F2[g_1, ..., g_r] with positive generator degrees and a
/// degree-then-lex monomial order whose variable precedence is configurable.
class F2PolyRing {
 public:
  F2PolyRing(std::vector<std::string> names, std::vector<int> degrees, const std::vector<std::string>& precedence = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  /// Generator names from highest to lowest precedence.
  std::vector<std::string> precedence() const;
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  int degree(const Monomial& m) const;
  /// Homogeneous degree of p, or nullopt for zero or mixed degrees.
  std::optional<int> degree(const F2Poly& p) const;
  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  Monomial one() const { return Monomial(names_.size(), 0); }
  Monomial variable(std::size_t i, std::uint16_t power = 1) const;

  F2Poly normalize(std::vector<Monomial> terms) const;
  F2Poly add(const F2Poly& a, const F2Poly& b) const;
  F2Poly multiply(const F2Poly& a, const F2Poly& b) const;
  F2Poly shift(const F2Poly& p, const Monomial& m) const;
  /// All monomials of the given weighted degree, in decreasing order.
  std::vector<Monomial> monomials_of_degree(int degree) const;

  std::string str(const Monomial& m) const;
  std::string str(const F2Poly& p) const;
  /// Infix grammar: sums with `+` (or `-`), products with `*` or juxtaposition,
  /// powers with `^`, parentheses, integer constants read mod 2.
  F2Poly parse(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::vector<std::size_t> order_;  // variable indices, highest precedence first
};

struct PoincareSpec {
  int dimension = 0;
  std::string top;
};

struct AlgebraSpec {
  std::string name;
  std::vector<std::pair<std::string, int>> generators;
  std::vector<std::string> relations;
  std::vector<std::string> precedence;
  std::optional<PoincareSpec> poincare;
  int degree_bound = kDefaultDegreeBound;
  /// Graded dimensions are compared with the brute-force quotient up to this degree at construction.
  int certify_degree = 12;
};

class F2AlgebraElement;
class PresentedF2Algebra;
using AlgebraPtr = std::shared_ptr<const PresentedF2Algebra>;

class PresentedF2Algebra : public std::enable_shared_from_this<PresentedF2Algebra> {
 public:
  /// Completes the relations to a Groebner basis up to the degree bound.
  static AlgebraPtr create(const AlgebraSpec& spec);

  const std::string& name() const { return name_; }
  const F2PolyRing& ring() const { return ring_; }
  const std::vector<F2Poly>& relations() const { return relations_; }
  const std::vector<F2Poly>& groebner_basis() const { return groebner_; }
  int degree_bound() const { return degree_bound_; }

  F2Poly normal_form(const F2Poly& p) const;
  F2AlgebraElement element(const F2Poly& p) const;
  F2AlgebraElement parse(std::string_view text) const;
  F2AlgebraElement generator(std::string_view name) const;
  F2AlgebraElement zero() const;
  F2AlgebraElement one() const;
  F2AlgebraElement monomial(const Monomial& m) const;

  bool is_normal(const Monomial& m) const;
  /// Normal monomials of degree n in decreasing monomial order.
  std::vector<Monomial> graded_basis(int n) const;
  /// dim of degree n of the quotient, by linear algebra over the free ring.
  std::size_t quotient_dimension_oracle(int n) const;
  /// Compares graded_basis sizes with the oracle for degrees 0..max_degree.
  bool certify(int max_degree) const;

  bool has_poincare() const { return poincare_dimension_.has_value(); }
  int poincare_dimension() const;
  const Monomial& top_monomial() const;
  /// Coefficient of the top monomial in the normal form of e.
  bool pairing(const F2AlgebraElement& e) const;

  PresentedF2Algebra(const PresentedF2Algebra&) = delete;
  PresentedF2Algebra& operator=(const PresentedF2Algebra&) = delete;

 private:
  explicit PresentedF2Algebra(const AlgebraSpec& spec, F2PolyRing ring);
  void complete();
  F2Poly reduce_with(const F2Poly& p, const std::vector<F2Poly>& basis) const;
  F2Poly monomial_normal_form(const Monomial& m) const;
  void require_degree(int d) const;

  std::string name_;
  F2PolyRing ring_;
  std::vector<F2Poly> relations_;
  std::vector<F2Poly> groebner_;
  int degree_bound_;
  std::optional<int> poincare_dimension_;
  Monomial top_;

  mutable std::recursive_mutex cache_mutex_;
  mutable std::map<Monomial, F2Poly> nf_cache_;
};

class F2AlgebraElement {
 public:
  F2AlgebraElement() = default;
  F2AlgebraElement(AlgebraPtr algebra, F2Poly normal_terms);

  const AlgebraPtr& algebra() const { return algebra_; }
  const F2Poly& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> degree() const;
  bool contains(const Monomial& m) const;
  /// Degree-d part.
  F2AlgebraElement component(int d) const;
  std::string str() const;

  F2AlgebraElement& operator+=(const F2AlgebraElement& o);
  F2AlgebraElement& operator*=(const F2AlgebraElement& o);
  F2AlgebraElement pow(unsigned k) const;

  friend F2AlgebraElement operator+(F2AlgebraElement a, const F2AlgebraElement& b) { return a += b; }
  friend F2AlgebraElement operator*(F2AlgebraElement a, const F2AlgebraElement& b) { return a *= b; }
  friend bool operator==(const F2AlgebraElement& a, const F2AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
  }

 private:
  void require_same(const F2AlgebraElement& o) const;

  AlgebraPtr algebra_;
  F2Poly terms_;
};

/// Degree-preserving algebra map given by generator images; every source
/// relation must map to zero.
class GradedHom {
 public:
  GradedHom(AlgebraPtr source, AlgebraPtr target, std::vector<F2AlgebraElement> images);
  GradedHom(AlgebraPtr source, AlgebraPtr target, const std::map<std::string, std::string>& images);

  static GradedHom identity(const AlgebraPtr& algebra);
  static GradedHom zero(const AlgebraPtr& source, const AlgebraPtr& target);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const std::vector<F2AlgebraElement>& images() const { return images_; }

  F2AlgebraElement apply(const F2AlgebraElement& e) const;
  F2AlgebraElement apply_raw(const F2Poly& p) const;
  F2AlgebraElement apply_monomial(const Monomial& m) const;
  /// Row s holds f(s) on the target basis, for s in the source basis of degree n.
  std::vector<std::vector<bool>> matrix(int n) const;

 private:
  void check_relations() const;

  struct PowerCache;

  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<F2AlgebraElement> images_;
  std::shared_ptr<PowerCache> powers_;
};

/// Transpose of GradedHom::matrix: row t lists the source basis monomials s
/// with t in f(s), which is f_*(xi(t)) written in the source's dual basis.
std::vector<std::vector<bool>> dual_pushforward(const GradedHom& f, int n);
/// f_*(xi(t)) for one target monomial t, as source monomials.
std::vector<Monomial> pushforward_dual(const GradedHom& f, const Monomial& t);

class SteenrodData {
 public:
  /// values[(generator, i)] = Sq^i(generator) for 0 < i < deg; unspecified
  /// entries are zero, Sq^0 is the identity and Sq^deg is the square.
  SteenrodData(AlgebraPtr algebra, const std::map<std::pair<std::string, int>, F2AlgebraElement>& values);
  SteenrodData(AlgebraPtr algebra, const std::map<std::pair<std::string, int>, std::string>& values);

  const AlgebraPtr& algebra() const { return algebra_; }
  F2AlgebraElement on_generator(std::size_t generator, int i) const;
  F2AlgebraElement sq(int i, const F2AlgebraElement& e) const;
  F2AlgebraElement total(const F2AlgebraElement& e) const;
  F2AlgebraElement sq_raw(int i, const F2Poly& p) const;

  SteenrodData(const SteenrodData& other);
  SteenrodData& operator=(const SteenrodData&) = delete;

 private:
  void validate() const;
  F2Poly sq_monomial(int i, const Monomial& m) const;

  AlgebraPtr algebra_;
  std::vector<std::vector<F2Poly>> table_;  // table_[g][i]
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, Monomial>, F2Poly> cache_;
};

/// v_0 .. v_{floor(d/2)} with pairing(v_j y) = pairing(Sq^j y) for all y of degree d - j.
std::vector<F2AlgebraElement> wu_classes(const SteenrodData& s);
/// w_0 .. w_d with w_k = sum_{i+j=k} Sq^i(v_j).
std::vector<F2AlgebraElement> stiefel_whitney(const SteenrodData& s);

/// Value assignment on generators, used by the Sq^1 branch search.
using SteenrodValues = std::map<std::pair<std::string, int>, F2AlgebraElement>;

struct BranchConstraint {
  std::string label;
  std::function<bool(const SteenrodData&)> holds;
};

/// Every element v of degree deg(generator) + 1 such that the data `base`
/// with Sq^1(generator) = v is consistent, Sq^1 kills each element of
/// `sq1_closed`, and every extra constraint holds. Candidates are visited in
/// the order of subsets of the degree basis.
std::vector<F2AlgebraElement> sq1_branch_enumerate(const AlgebraPtr& algebra, const SteenrodValues& base,
                                                   const std::string& generator,
                                                   const std::vector<F2AlgebraElement>& sq1_closed,
                                                   const std::vector<BranchConstraint>& extra = {});

/// Builtin presentations: `d8`, `v2`, `sd`, `m:<n>` (the total space of the
/// lens bundle over the circle, dimension 2n), `lens:<n>` (its fibre).
AlgebraPtr builtin_algebra(std::string_view tag);
/// Builtin maps: `d8-v2`, `sd-d8`, `sd-m:<n>`, `m-lens:<n>`.
GradedHom builtin_hom(std::string_view tag);
/// Builtin Steenrod data: `sd`, `v2`, `lens:<n>`, `m:<n>:zsigma`, `m:<n>:ztausigma`.
SteenrodData builtin_steenrod(std::string_view tag);

/// Binomial coefficient mod 2 by Lucas' theorem.
bool binomial_mod2(unsigned long n, unsigned long k);

}  // namespace etacoh
