#include <random>

#include "doctest.h"
#include "etacoh/error.hpp"
#include "etacoh/exactnum.hpp"

using namespace etacoh;

namespace {

Cyclotomic random_cyclotomic(std::mt19937& rng, unsigned n, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<Rational> powers(n);
  for (auto& p : powers) p = Rational(coef(rng), den(rng));
  return Cyclotomic::from_powers(n, powers);
}

}  // namespace

TEST_CASE("rational normal form") {
  const Rational r(mpz_class(6), mpz_class(-4));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational::parse("1/x"), Error);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2(5) == Rational(32));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(64) == 32);
  for (unsigned k = 1; k <= 6; ++k) {
    const unsigned n = 1u << k;
    auto phi = cyclotomic_polynomial(n);
    REQUIRE(phi.size() == n / 2 + 1);
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(phi[i] == ((i == 0 || i == n / 2) ? 1 : 0));
  }
  // Phi_12 = x^4 - x^2 + 1, Phi_9 = x^6 + x^3 + 1
  CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<mpz_class>{1, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("roots of unity") {
  CHECK(root_of_unity(8, 0) == Cyclotomic(1));
  CHECK(root_of_unity(8, 4) == Cyclotomic(-1));
  CHECK(root_of_unity(8, 2) * root_of_unity(8, 6) == Cyclotomic(1));
  CHECK(root_of_unity(8, -1) == root_of_unity(8, 7));
  CHECK(root_of_unity(4, 1) == root_of_unity(8, 2));
  CHECK(root_of_unity(8, 1).coeffs().size() == 4);
}

TEST_CASE("cyclotomic arithmetic") {
  const Cyclotomic one(1);
  const Cyclotomic z = root_of_unity(8, 1);
  CHECK((one - z) * (one - z).inverse() == one);
  Cyclotomic prod(1);
  for (long k : {1, 3, 5, 7}) prod *= one - root_of_unity(8, k);
  CHECK(prod == Cyclotomic(2));
  const Cyclotomic i = root_of_unity(8, 2);
  const Cyclotomic sq = (one - i) * (one - i);
  CHECK(sq == Cyclotomic(-2) * i);
  CHECK(sq.str() == "-2*z^2 @ n=8");
  CHECK_THROWS_AS(one / Cyclotomic(0), Error);
  try {
    (void)(one / Cyclotomic(Rational(0), 8));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("conjugation and rationality") {
  const Cyclotomic z = root_of_unity(8, 1);
  CHECK(z.conjugate() == root_of_unity(8, 7));
  CHECK(Cyclotomic(Rational(3, 2)).conjugate() == Cyclotomic(Rational(3, 2)));
  const Cyclotomic re = z + root_of_unity(8, 7);
  CHECK(re.conjugate() == re);
  const auto zero = (root_of_unity(8, 2) + root_of_unity(8, 6)).as_rational();
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());
  CHECK(Cyclotomic(Rational(3, 2)).as_rational() == std::optional<Rational>(Rational(3, 2)));
  CHECK_FALSE(z.as_rational().has_value());
}

TEST_CASE("float evaluation") {
  CHECK(std::abs(Cyclotomic(1).to_complex() - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(root_of_unity(4, 1).to_complex() - std::complex<double>(0, 1)) < 1e-12);
  const double h = std::sqrt(0.5);
  CHECK(std::abs(root_of_unity(8, 1).to_complex() - std::complex<double>(h, h)) < 1e-12);
}

TEST_CASE("text format round trip") {
  const Cyclotomic a = Cyclotomic::parse("1/2*z^0 + -3/4*z^2 @ n=8");
  CHECK(a.order() == 8);
  CHECK(a.coeffs()[0] == Rational(1, 2));
  CHECK(a.coeffs()[2] == Rational(-3, 4));
  CHECK(a.str() == "1/2*z^0 + -3/4*z^2 @ n=8");
  CHECK(Cyclotomic::parse(a.str()) == a);
  CHECK(Cyclotomic::parse("z^4 @ n=8") == Cyclotomic(-1));
  CHECK(Cyclotomic::parse("-z @ n=4") == -root_of_unity(4, 1));
  CHECK(Cyclotomic::parse("5/3") == Cyclotomic(Rational(5, 3)));
  CHECK(Cyclotomic(Rational(0), 8).str() == "0 @ n=8");
  CHECK_THROWS_AS(Cyclotomic::parse("1*y^2 @ n=8"), Error);
  CHECK_THROWS_AS(Cyclotomic::parse("1*z^2 @ m=8"), Error);
}

TEST_CASE("field laws on random elements") {
  std::mt19937 rng(20240611);
  for (unsigned n : {1u, 2u, 4u, 8u, 12u, 16u, 9u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Cyclotomic a = random_cyclotomic(rng, n, 1 << 4);
      const Cyclotomic b = random_cyclotomic(rng, n, 1 << 4);
      const Cyclotomic c = random_cyclotomic(rng, n, 1 << 4);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!b.is_zero()) CHECK((a * b) / b == a);
      CHECK(a.conjugate().conjugate() == a);
      CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
      CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
      const auto fa = a.to_complex(), fb = b.to_complex();
      CHECK(std::abs((a * b).to_complex() - fa * fb) < 1e-9 * (1 + std::abs(fa * fb)));
      CHECK(std::abs((a + b).to_complex() - (fa + fb)) < 1e-9);
    }
  }
}

TEST_CASE("mixed orders embed into the lcm") {
  const Cyclotomic i = root_of_unity(4, 1);
  const Cyclotomic w = root_of_unity(3, 1);
  const Cyclotomic p = i * w;
  CHECK(p.order() == 12);
  CHECK(p == root_of_unity(12, 3 + 4));
  CHECK(i + Cyclotomic(1) == Cyclotomic::parse("1*z^0 + 1*z^1 @ n=4"));
}
