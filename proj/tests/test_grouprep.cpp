#include "doctest.h"
#include "etacoh/error.hpp"
#include "etacoh/grouprep.hpp"

using namespace etacoh;

namespace {

// Element-by-element indicator, independent of the class bookkeeping.
Cyclotomic indicator_by_elements(const TablePtr& t, std::size_t i) {
  const auto& g = *t->group();
  Cyclotomic sum;
  for (Element x = 0; x < g.order(); ++x) sum += t->irreducible(i)[g.class_of(g.multiply(x, x))];
  return sum / Cyclotomic(static_cast<long>(g.order()));
}

std::vector<std::size_t> class_sizes(const GroupPtr& g) {
  std::vector<std::size_t> s;
  for (const auto& c : g->classes()) s.push_back(c.size());
  return s;
}

}  // namespace

TEST_CASE("builtin groups") {
  const auto q8 = builtin_group("Q8");
  CHECK(q8->order() == 8);
  CHECK(class_sizes(q8) == std::vector<std::size_t>{1, 1, 2, 2, 2});
  const auto sd = builtin_group("SD16");
  CHECK(sd->order() == 16);
  CHECK(class_sizes(sd) == std::vector<std::size_t>{1, 1, 2, 2, 2, 4, 4});
  CHECK(sd->classes()[2].name == "s");
  CHECK(sd->classes()[6].name == "ts");
  const auto c8 = builtin_group("C_8");
  CHECK(c8 == builtin_group("C8"));
  CHECK(c8->classes().size() == 8);
  for (const auto& tag : {"C1", "C2", "C8", "C64", "V2", "D8", "Q8", "SD16"}) CHECK(builtin_group(tag)->verify_axioms());
  CHECK(builtin_group("D8")->classes().size() == 5);
  CHECK_THROWS_AS(builtin_group("A5"), Error);
  CHECK_THROWS_AS(builtin_group("C65"), Error);
  try {
    builtin_group("S3");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedGroup);
  }
}

TEST_CASE("semidihedral relations") {
  const auto sd = builtin_group("SD16");
  const Element s = sd->parse_element("s"), t = sd->parse_element("t");
  CHECK(sd->element_order(s) == 8);
  CHECK(sd->element_order(t) == 2);
  CHECK(sd->multiply(sd->multiply(t, s), t) == sd->power(s, 3));
  CHECK(sd->parse_element("t*s^3") == sd->parse_element("ts^3"));
  CHECK(sd->parse_element("s^-1") == sd->parse_element("s^7"));
  CHECK_THROWS_AS(sd->parse_element("q"), ParseError);
  const auto q8 = builtin_group("Q8");
  CHECK(q8->multiply(q8->parse_element("i"), q8->parse_element("j")) == q8->parse_element("k"));
  CHECK(q8->parse_element("i^2") == q8->parse_element("-1"));
}

TEST_CASE("character tables") {
  for (const auto& tag : {"C2", "C4", "C8", "V2", "D8", "Q8", "SD16"}) {
    const auto t = character_table(tag);
    CHECK(t->rows_orthonormal());
    CHECK(t->columns_orthogonal());
    CHECK(t->size() == t->group()->classes().size());
    for (const auto& v : t->irreducible(t->index_of("1"))) CHECK(v == Cyclotomic(1));
  }
  const auto q = character_table("Q8");
  const auto tau = q->irreducible(q->index_of("tau"));
  CHECK(tau[1] == Cyclotomic(-2));
  CHECK(tau[2] == Cyclotomic(0));
  const auto sd = character_table("SD16");
  const Cyclotomic sqrt2i = root_of_unity(8, 1) + root_of_unity(8, 3);
  CHECK(sqrt2i * sqrt2i == Cyclotomic(-2));
  CHECK(sd->irreducible(sd->index_of("rho"))[1] == Cyclotomic(-2));
  CHECK(sd->irreducible(sd->index_of("rho"))[2] == sqrt2i);
  CHECK(sd->irreducible(sd->index_of("rho"))[4] == -sqrt2i);
  CHECK(sd->irreducible(sd->index_of("rho2"))[3] == Cyclotomic(-2));
  CHECK(sd->conjugate_of(sd->index_of("rho")) == sd->index_of("rho5"));
  CHECK(sd->index_of("D8hat") == sd->index_of("chi3"));
}

TEST_CASE("Frobenius-Schur indicators") {
  const auto q = character_table("Q8");
  CHECK(frobenius_schur(*q, q->index_of("tau")) == -1);
  CHECK(indicator_by_elements(q, q->index_of("tau")) == Cyclotomic(-1));
  CHECK(frobenius_schur(*q, 0) == 1);
  const auto c8 = character_table("C8");
  CHECK(frobenius_schur(*c8, 1) == 0);
  CHECK(indicator_by_elements(c8, 1) == Cyclotomic(0));
  CHECK(frobenius_schur(*c8, 4) == 1);
  const auto sd = character_table("SD16");
  for (const auto& name : {"rho0", "chi2", "chi3", "chi4", "rho2"}) CHECK(frobenius_schur(*sd, sd->index_of(name)) == 1);
  CHECK(frobenius_schur(*sd, sd->index_of("rho")) == 0);
  CHECK(frobenius_schur(*sd, sd->index_of("rho5")) == 0);
  for (std::size_t i = 0; i < sd->size(); ++i) CHECK(indicator_by_elements(sd, i) == Cyclotomic(frobenius_schur(*sd, i)));
  const auto two_tau = 2 * VirtualCharacter::irreducible(q, "tau");
  CHECK_THROWS_AS(frobenius_schur(two_tau), Error);
}

TEST_CASE("virtual characters") {
  const auto q = character_table("Q8");
  const auto tau = VirtualCharacter::irreducible(q, "tau");
  const auto two = VirtualCharacter::constant(q, 2);
  CHECK(virtual_dimension(two - tau) == 0);
  CHECK(virtual_dimension(VirtualCharacter::irreducible(q, "rho0") - VirtualCharacter::irreducible(q, "k1")) == 0);
  CHECK(virtual_dimension(tau) == 2);
  const auto tau2 = tau * tau;
  CHECK(tau2.coefficients() == std::vector<long long>{1, 1, 1, 1, 0});
  const auto x = two - tau;
  CHECK(is_quaternionic_type(x));
  CHECK_FALSE(is_real_type(x));
  CHECK(is_real_type(x * x));
  CHECK_FALSE(is_quaternionic_type(x * x));
  CHECK(is_quaternionic_type(x.pow(3)));
  const auto c8 = character_table("C8");
  const auto y = 2 * (VirtualCharacter::irreducible(c8, "r4") - VirtualCharacter::irreducible(c8, "r0"));
  CHECK(is_real_type(y));
  CHECK(is_quaternionic_type(y));
  CHECK_FALSE(is_real_type(VirtualCharacter::irreducible(c8, "r1") - VirtualCharacter::irreducible(c8, "r0")));
  CHECK(x.str() == "2*rho0 - tau");
  CHECK_THROWS_AS(x + VirtualCharacter::constant(c8, 1), Error);
}

TEST_CASE("restriction") {
  const auto sd = builtin_group("SD16");
  const auto st = character_table(sd);
  const auto q8 = builtin_group("Q8");
  const GroupInclusion iq(q8, sd, std::vector<std::string>{"s^2", "ts"});
  const auto r = restrict_virtual(VirtualCharacter::irreducible(st, "rho2"), iq);
  const auto qt = character_table(q8);
  CHECK(r == VirtualCharacter::irreducible(qt, "k1") + VirtualCharacter::irreducible(qt, "k3"));
  const GroupInclusion iq3(q8, sd, std::vector<std::string>{"s^2", "ts^3"});
  CHECK(restrict_virtual(VirtualCharacter::irreducible(st, "rho2"), iq3) == r);
  CHECK(restrict_virtual(VirtualCharacter::irreducible(st, "rho"), iq) == VirtualCharacter::irreducible(qt, "tau"));
  CHECK(restrict_virtual(VirtualCharacter::irreducible(st, "rho5"), iq) == VirtualCharacter::irreducible(qt, "tau"));

  const auto c8 = builtin_group("C8");
  const GroupInclusion ic(c8, sd, std::vector<std::string>{"s"});
  const auto ct = character_table(c8);
  CHECK(restrict_virtual(VirtualCharacter::irreducible(st, "rho"), ic) ==
        VirtualCharacter::irreducible(ct, "r1") + VirtualCharacter::irreducible(ct, "r3"));
  CHECK(restrict_virtual(VirtualCharacter::constant(st, 1), ic) == VirtualCharacter::constant(ct, 1));

  const auto a = VirtualCharacter::irreducible(st, "rho") - VirtualCharacter::irreducible(st, "chi3");
  const auto b = VirtualCharacter::irreducible(st, "rho5") + VirtualCharacter::constant(st, 3);
  CHECK(restrict_virtual(a + b, iq) == restrict_virtual(a, iq) + restrict_virtual(b, iq));
  CHECK(restrict_virtual(a * b, iq) == restrict_virtual(a, iq) * restrict_virtual(b, iq));
  CHECK(restrict_virtual(a * b, ic) == restrict_virtual(a, ic) * restrict_virtual(b, ic));

  const auto c4 = builtin_group("C4");
  const GroupInclusion into_q8(c4, q8, std::vector<std::string>{"i"});
  const auto composed = iq.after(into_q8);
  CHECK(composed.source() == c4);
  CHECK(composed(1) == sd->parse_element("s^2"));
  CHECK(restrict_virtual(a, composed) == restrict_virtual(restrict_virtual(a, iq), into_q8));
}

TEST_CASE("inclusion validation") {
  const auto sd = builtin_group("SD16");
  const auto q8 = builtin_group("Q8");
  const auto c8 = builtin_group("C8");
  CHECK_THROWS_AS(GroupInclusion(c8, sd, std::vector<std::string>{"t"}), Error);
  CHECK_THROWS_AS(GroupInclusion(q8, sd, std::vector<std::string>{"s^2", "t"}), Error);
  CHECK_THROWS_AS(GroupInclusion(q8, sd, std::vector<std::string>{"s^2"}), Error);
  try {
    GroupInclusion(c8, sd, std::vector<std::string>{"s^2"});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubgroupMap);
  }
  CHECK(GroupInclusion(builtin_group("C2"), sd, std::vector<std::string>{"t"}).str() == "C2 -> SD16 (g -> t)");
}

TEST_CASE("free representations") {
  const auto r = cyclic_free_rep(8, {1, 1});
  CHECK(r.dimension() == 2);
  CHECK(r.eigenvalues()[1] == std::vector<unsigned>{1, 1});
  CHECK(r.det_sqrt()[1] == root_of_unity(8, 1));
  CHECK(r.manifold_dimension() == 3);
  const auto r2 = cyclic_free_rep(8, {1, 1, 5, 5});
  CHECK(r2.det_sqrt()[1] == root_of_unity(8, 6));
  for (std::size_t c = 0; c < 8; ++c) CHECK(r2.determinant(c) == root_of_unity(8, 12 * static_cast<long>(c)));
  try {
    cyclic_free_rep(8, {2, 1});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFree);
  }
  try {
    cyclic_free_rep(8, {1, 1, 1});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddLength);
  }
  CHECK_THROWS_AS(cyclic_free_rep(6, {1, 1}), Error);

  for (unsigned k = 0; k < 4; ++k) {
    const auto q = quaternion_free_rep(k);
    CHECK(q.dimension() == 2 * (k + 1));
    for (std::size_t c = 0; c < 5; ++c) {
      CHECK(q.det_sqrt()[c] * q.det_sqrt()[c] == q.determinant(c));
      CHECK(q.determinant(c) == Cyclotomic(1));
    }
  }
  const auto q0 = quaternion_free_rep(0);
  CHECK(q0.det_one_minus(1) == Cyclotomic(4));
  CHECK(q0.det_one_minus(2) == Cyclotomic(2));
  CHECK(q0.det_one_minus(4) == Cyclotomic(2));
}

TEST_CASE("virtual character expressions") {
  const auto sd = character_table("SD16");
  const auto rho = VirtualCharacter::irreducible(sd, "rho");
  const auto rho5 = VirtualCharacter::irreducible(sd, "rho5");
  CHECK(parse_virtual_character(sd, "4 + rho*rho5 - 2*(rho+rho5)") ==
        VirtualCharacter::constant(sd, 4) + rho * rho5 - 2 * (rho + rho5));
  const auto q8 = character_table("Q8");
  const auto tau = VirtualCharacter::irreducible(q8, "tau");
  CHECK(parse_virtual_character(q8, "(2-tau)^2") == (VirtualCharacter::constant(q8, 2) - tau).pow(2));
  CHECK(parse_virtual_character(q8, "-tau + 2") == VirtualCharacter::constant(q8, 2) - tau);
  CHECK(parse_virtual_character(q8, "rho0 - k1") == VirtualCharacter::irreducible(q8, "rho0") - VirtualCharacter::irreducible(q8, "k1"));
  const auto c8 = character_table("C8");
  CHECK(parse_virtual_character(c8, "r4-r0").virtual_dimension() == 0);
  try {
    parse_virtual_character(q8, "2 - tua");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_virtual_character(q8, ""), ParseError);
  CHECK_THROWS_AS(parse_virtual_character(q8, "(2-tau"), ParseError);
  CHECK_THROWS_AS(parse_virtual_character(q8, "2 tau"), ParseError);
}
