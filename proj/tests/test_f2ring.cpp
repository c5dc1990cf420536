#include <random>
#include <set>

#include "doctest.h"
#include "etacoh/error.hpp"
#include "etacoh/f2ring.hpp"

using namespace etacoh;

namespace {

std::vector<std::string> basis_strings(const AlgebraPtr& a, int n) {
  std::vector<std::string> out;
  for (const auto& m : a->graded_basis(n)) out.push_back(a->ring().str(m));
  return out;
}

F2AlgebraElement random_element(const AlgebraPtr& a, int degree, std::mt19937& rng) {
  F2AlgebraElement e = a->zero();
  for (const auto& m : a->ring().monomials_of_degree(degree)) {
    if (rng() & 1u) e += a->monomial(m);
  }
  return e;
}

SteenrodValues m_branch(const AlgebraPtr& m, const std::string& sq1z) {
  return SteenrodValues{{{"Z", 1}, m->parse(sq1z)}};
}

}  // namespace

TEST_CASE("ring order, printing and parsing") {
  const auto sd = builtin_algebra("sd");
  const auto& r = sd->ring();
  CHECK(r.precedence() == std::vector<std::string>{"u", "P", "y", "x"});
  CHECK(r.compare(r.parse("x*y").front(), r.parse("x^2").front()) > 0);
  CHECK(r.str(r.parse("yuP")) == "y*u*P");
  CHECK(r.str(r.parse("(x + y)^2")) == "y^2 + x^2");
  CHECK(r.str(r.parse("3*x - x")) == "0");
  CHECK(r.str(r.parse("1")) == "1");
  CHECK(r.str(r.parse("y^3 u P")) == "y^3*u*P");
  try {
    r.parse("x + w");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }
  CHECK_THROWS_AS(r.parse("x^"), ParseError);
  CHECK_THROWS_AS(r.parse("(x"), ParseError);
  CHECK_THROWS_AS(r.parse(""), ParseError);
}

TEST_CASE("normal forms in the SD algebra") {
  const auto sd = builtin_algebra("sd");
  CHECK(sd->parse("x*y").str() == "x^2");
  CHECK(sd->parse("u*u").str() == "y^2*P + x^2*P");
  CHECK(sd->parse("y*u^3").str() == "y^3*u*P");
  CHECK(sd->parse("x*u").is_zero());
  CHECK(sd->parse("x^3").is_zero());
  const auto e = sd->parse("y^2*u^2 + x*y*P");
  CHECK(sd->element(e.terms()) == e);
}

TEST_CASE("graded bases") {
  const auto d8 = builtin_algebra("d8");
  CHECK(basis_strings(d8, 3) == std::vector<std::string>{"alpha^3", "alpha*delta", "beta^3", "beta*delta"});
  const auto v2 = builtin_algebra("v2");
  CHECK(basis_strings(v2, 2) == std::vector<std::string>{"p^2", "p*q", "q^2"});
  const auto sd = builtin_algebra("sd");
  CHECK(sd->graded_basis(3).size() == 2);
  for (int n = 0; n <= 30; ++n) {
    CHECK(d8->graded_basis(n).size() == static_cast<std::size_t>(n + 1));
    CHECK(v2->graded_basis(n).size() == static_cast<std::size_t>(n + 1));
    CHECK(sd->graded_basis(n).size() == sd->quotient_dimension_oracle(n));
  }
  CHECK_THROWS_AS(d8->graded_basis(65), Error);
}

TEST_CASE("SD basis matches an independent enumeration") {
  const auto sd = builtin_algebra("sd");
  for (int n = 0; n <= 30; ++n) {
    std::size_t count = 0;
    for (int e = 0; e <= 1; ++e) {
      for (int c = 0; 3 * e + 4 * c <= n; ++c) {
        const int rest = n - 3 * e - 4 * c;
        ++count;  // y^rest u^e P^c
        if (e == 0 && rest >= 1 && rest <= 2) ++count;  // x^rest P^c
      }
    }
    CHECK(sd->graded_basis(n).size() == count);
  }
}

TEST_CASE("confluence oracle up to degree 40") {
  for (const char* tag : {"d8", "v2", "sd", "m:4", "m:8", "lens:4", "lens:8"}) {
    CHECK_MESSAGE(builtin_algebra(tag)->certify(40), tag);
  }
}

TEST_CASE("presentation validation") {
  AlgebraSpec bad;
  bad.name = "bad";
  bad.generators = {{"a", 1}, {"b", 2}};
  bad.relations = {"a + b"};
  CHECK_THROWS_AS(PresentedF2Algebra::create(bad), Error);
  AlgebraSpec dup;
  dup.name = "dup";
  dup.generators = {{"a", 1}, {"a", 1}};
  CHECK_THROWS_AS(PresentedF2Algebra::create(dup), Error);
  AlgebraSpec notop;
  notop.name = "notop";
  notop.generators = {{"a", 1}};
  notop.relations = {"a^3"};
  notop.poincare = PoincareSpec{1, "a"};
  CHECK_THROWS_AS(PresentedF2Algebra::create(notop), Error);
  notop.poincare = PoincareSpec{2, "a^2"};
  CHECK(PresentedF2Algebra::create(notop)->poincare_dimension() == 2);
}

TEST_CASE("multiplication is associative and commutative") {
  std::mt19937 rng(7);
  const auto sd = builtin_algebra("sd");
  for (int t = 0; t < 30; ++t) {
    const auto a = random_element(sd, 1 + static_cast<int>(rng() % 5), rng);
    const auto b = random_element(sd, 1 + static_cast<int>(rng() % 5), rng);
    const auto c = random_element(sd, 1 + static_cast<int>(rng() % 5), rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("homomorphisms") {
  const auto f = builtin_hom("sd-d8");
  const auto sd = f.source();
  CHECK(f.apply(sd->parse("y*u*P")).str() == "alpha^2*delta^3");
  const auto g = builtin_hom("d8-v2");
  CHECK(g.apply(g.source()->generator("delta")).str() == "p*q + q^2");
  const auto id = GradedHom::identity(sd);
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_element(sd, 1 + static_cast<int>(rng() % 6), rng);
    const auto b = random_element(sd, 1 + static_cast<int>(rng() % 6), rng);
    CHECK(id.apply(a) == a);
    CHECK(f.apply(a * b) == f.apply(a) * f.apply(b));
    CHECK(g.apply(f.apply(a) * f.apply(b)) == g.apply(f.apply(a)) * g.apply(f.apply(b)));
  }
  const auto d8 = builtin_algebra("d8");
  const auto v2 = builtin_algebra("v2");
  CHECK_THROWS_AS(GradedHom(d8, v2, std::map<std::string, std::string>{{"alpha", "p"}, {"beta", "q"}}), Error);
}

TEST_CASE("F* from SD to M is well defined") {
  for (int n : {4, 8, 12}) {
    const auto f = builtin_hom("sd-m:" + std::to_string(n));
    const auto m = f.target();
    for (const auto& r : f.source()->relations()) CHECK(f.apply_raw(r).is_zero());
    CHECK(m->parse("tau^3").is_zero());
    CHECK(f.apply(f.source()->parse("u")).str() == "Z*sigma + Z*tau");
  }
}

TEST_CASE("dual pushforward is the transpose") {
  for (const char* tag : {"d8-v2", "sd-d8", "sd-m:8"}) {
    const auto f = builtin_hom(tag);
    for (int n = 0; n <= 14; ++n) {
      const auto fwd = f.matrix(n);
      const auto dual = dual_pushforward(f, n);
      const auto src = f.source()->graded_basis(n);
      const auto tgt = f.target()->graded_basis(n);
      REQUIRE(dual.size() == tgt.size());
      for (std::size_t t = 0; t < tgt.size(); ++t) {
        const auto pushed = pushforward_dual(f, tgt[t]);
        for (std::size_t s = 0; s < src.size(); ++s) {
          CHECK(dual[t][s] == f.apply(f.source()->monomial(src[s])).contains(tgt[t]));
          CHECK(dual[t][s] == (std::find(pushed.begin(), pushed.end(), src[s]) != pushed.end()));
        }
      }
    }
  }
  const auto z = GradedHom::zero(builtin_algebra("d8"), builtin_algebra("v2"));
  for (const auto& row : dual_pushforward(z, 5)) {
    for (bool b : row) CHECK_FALSE(b);
  }
}

TEST_CASE("pushforward examples") {
  const auto g = builtin_hom("d8-v2");
  const auto v2 = g.target();
  const auto p33 = pushforward_dual(g, v2->parse("p^3*q^3").terms().front());
  REQUIRE(p33.size() == 1);
  CHECK(g.source()->ring().str(p33.front()) == "delta^3");
  const auto f = builtin_hom("sd-d8");
  const auto d8 = f.target();
  for (int i = 2; i <= 8; i += 2) {
    for (int j = 1; j <= 7; j += 2) {
      const auto t = d8->parse("alpha^" + std::to_string(i) + "*delta^" + std::to_string(j)).terms().front();
      const auto pushed = pushforward_dual(f, t);
      REQUIRE(pushed.size() == 1);
      const auto expect = f.source()->parse("y^" + std::to_string(i - 1) + "*u*P^" + std::to_string((j - 1) / 2));
      CHECK(pushed.front() == expect.terms().front());
    }
  }
}

TEST_CASE("Steenrod squares") {
  const auto s = builtin_steenrod("sd");
  const auto sd = s.algebra();
  CHECK(s.sq(2, sd->generator("P")).str() == "y^2*P + x^2*P");
  CHECK(s.sq(1, sd->generator("u")).is_zero());
  CHECK(s.sq(1, sd->generator("x")).str() == "x^2");
  CHECK(s.sq(1, sd->generator("y")).str() == "y^2");
  for (const char* g : {"x", "y", "u", "P"}) {
    const auto e = sd->generator(g);
    CHECK(s.sq(*e.degree(), e) == e * e);
    CHECK(s.sq(0, e) == e);
    CHECK(s.sq(*e.degree() + 1, e).is_zero());
  }
  const auto m = builtin_algebra("m:8");
  const SteenrodData ms(m, m_branch(m, "Z*sigma"));
  CHECK(ms.sq(1, m->parse("Z*(tau + sigma)")).is_zero());
  const SteenrodData bad(m, m_branch(m, "Z*tau"));
  CHECK_FALSE(bad.sq(1, m->parse("Z*(tau + sigma)")).is_zero());
  CHECK_THROWS_AS(SteenrodData(m, SteenrodValues{{{"Z", 1}, m->parse("Z")}}), Error);
  CHECK_THROWS_AS(SteenrodData(m, SteenrodValues{{{"Z", 2}, m->parse("Z")}}), Error);
}

TEST_CASE("Steenrod squares commute with F*") {
  const auto f = builtin_hom("sd-m:8");
  const auto s = builtin_steenrod("sd");
  const SteenrodData ms(f.target(), m_branch(f.target(), "Z*sigma"));
  for (const char* g : {"x", "y", "u", "P"}) {
    const auto e = f.source()->generator(g);
    for (int i = 0; i <= 4; ++i) CHECK(f.apply(s.sq(i, e)) == ms.sq(i, f.apply(e)));
  }
}

TEST_CASE("Wu and Stiefel-Whitney classes") {
  for (int n : {4, 8}) {
    const auto tag = "m:" + std::to_string(n);
    const auto spin = builtin_steenrod(tag + ":zsigma");
    const auto v = wu_classes(spin);
    CHECK(v[0].str() == "1");
    CHECK(v[1].is_zero());
    CHECK(v[2].is_zero());
    const auto w = stiefel_whitney(spin);
    CHECK(w[0].str() == "1");
    CHECK(w[1].is_zero());
    CHECK(w[2].is_zero());
    const auto other = builtin_steenrod(tag + ":ztausigma");
    CHECK(wu_classes(other)[1].str() == "tau");
    CHECK(stiefel_whitney(other)[1].str() == "tau");
  }
  const auto lens = builtin_steenrod("lens:4");
  CHECK(wu_classes(lens)[0].str() == "1");
  CHECK_THROWS_AS(wu_classes(builtin_steenrod("sd")), Error);
}

TEST_CASE("Sq1 branch enumeration") {
  for (int n : {4, 8}) {
    const auto f = builtin_hom("sd-m:" + std::to_string(n));
    const auto m = f.target();
    const auto u = f.apply(f.source()->generator("u"));
    const auto branches = sq1_branch_enumerate(m, {}, "Z", {u});
    std::set<std::string> got;
    for (const auto& b : branches) got.insert(b.str());
    CHECK(got == std::set<std::string>{"Z*sigma", "Z*sigma + Z*tau"});
    const BranchConstraint orientable{"w1 = 0", [](const SteenrodData& s) { return wu_classes(s)[1].is_zero(); }};
    const auto spin = sq1_branch_enumerate(m, {}, "Z", {u}, {orientable});
    REQUIRE(spin.size() == 1);
    CHECK(spin.front().str() == "Z*sigma");
  }
}

TEST_CASE("binomial parity") {
  CHECK(binomial_mod2(5, 1));
  CHECK_FALSE(binomial_mod2(4, 1));
  CHECK_FALSE(binomial_mod2(3, 4));
  for (unsigned long J = 0; J <= 32; ++J) {
    for (unsigned long I = 0; I <= J; ++I) {
      CHECK(binomial_mod2(4 * J + 3, 4 * I + 3) == binomial_mod2(4 * J + 3, 4 * I + 1));
    }
  }
  unsigned long long row[20] = {1};
  for (unsigned long n = 1; n < 20; ++n) {
    for (unsigned long k = n; k >= 1; --k) row[k] += row[k - 1];
    for (unsigned long k = 0; k <= n; ++k) CHECK(binomial_mod2(n, k) == (row[k] % 2 == 1));
  }
}
