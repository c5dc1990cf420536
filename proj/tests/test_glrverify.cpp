#include <algorithm>

#include "doctest.h"
#include "etacoh/error.hpp"
#include "etacoh/glrverify.hpp"
#include "json.hpp"

using namespace etacoh;

namespace {

const ClaimResult& find(const std::vector<ClaimResult>& claims, const std::string& id) {
  const auto it = std::find_if(claims.begin(), claims.end(), [&](const ClaimResult& c) { return c.id == id; });
  REQUIRE_MESSAGE(it != claims.end(), id);
  return *it;
}

bool all_pass(const std::vector<ClaimResult>& claims) {
  for (const auto& c : claims) {
    if (!c.pass) {
      MESSAGE(c.id << ": expected " << c.expected << ", computed " << c.computed);
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("claim status is exact string equality") {
  CHECK(make_claim("a", "x", "1/2", "1/2").pass);
  CHECK_FALSE(make_claim("a", "x", "1/2", "2/4").pass);
}

TEST_CASE("order strings") {
  CHECK(parse_order("2", 0) == 2);
  CHECK(parse_order("[2^{k-1}]", 3) == 4);
  CHECK(parse_order("[8*16^k]", 2) == 2048);
  CHECK(parse_order("2*16^{k+1}", 0) == 32);
  CHECK(parse_order("2^2", 7) == 4);
  CHECK_THROWS_AS(parse_order("2^", 0), ParseError);
  CHECK_THROWS_AS(parse_order("[4", 0), ParseError);
}

TEST_CASE("ker(Ap) rows") {
  const auto r11 = kerap_lookup(11);
  REQUIRE(r11.one_column.size() == 4);
  CHECK(r11.one_column[0].order == 8);
  CHECK(r11.one_column[3].order == 128);
  CHECK(r11.one_column[3].bracketed);
  CHECK(r11.two_column_rank == 0);
  const auto r20 = kerap_lookup(20);
  CHECK(r20.pattern == "8k+4");
  CHECK(r20.one_column.empty());
  CHECK(r20.two_column_rank == 3);
  CHECK(kerap_lookup(2).one_column.empty());
  CHECK(kerap_lookup(2).two_column_rank == 0);
  CHECK(kerap_lookup(4).two_column_rank == 1);
  CHECK(kerap_lookup(12).two_column_rank == 2);
  CHECK(kerap_lookup(3).one_column_order() == 256);
  CHECK(kerap_lookup(19).one_column_order() == mpz_class(1) << 34);
  CHECK_THROWS_AS(kerap_lookup(-1), Error);
  CHECK(all_pass(verify_kerap_table()));
}

TEST_CASE("Q8 space form values and orders") {
  const auto claims = verify_q8_orders(3);
  CHECK(all_pass(claims));
  CHECK(find(claims, "q8.eta.k0.a1").computed == "7/8");
  CHECK(find(claims, "q8.order.k0.2Z").computed == "2^4");
  CHECK(find(claims, "q8.det.m1.d11").computed == "2^9");
  CHECK(find(claims, "q8.det.m0.d7").computed == "2^6");
  CHECK_THROWS_AS(verify_q8_orders(9), Error);
}

TEST_CASE("SD16 odd dimensions") {
  const auto claims = verify_sd16_odd(2, 0);
  CHECK(all_pass(claims));
  CHECK(find(claims, "sd16.m0.d3.total").computed == "2^8");
  CHECK(find(claims, "sd16.m1.d15.total").computed == "2^25");
  CHECK(find(claims, "sd16.m1.d11.kappa").computed == "2^4");
  CHECK(find(claims, "sd16.m0.d7.subtotal").computed == "2^11");
  CHECK(find(claims, "sd16.m2.identity").computed == "2^32");
  CHECK_THROWS_AS(verify_sd16_odd(5, 0), Error);
  CHECK_THROWS_AS(verify_sd16_odd(1, 2), Error);
}

TEST_CASE("dimensions 5 and 13") {
  const auto claims = verify_sd16_dim5_13();
  CHECK(all_pass(claims));
  CHECK(find(claims, "dim5-13.L5.r1").computed == "-7/8");
  CHECK(find(claims, "dim5-13.L13.r3").computed == "-67/32");
  CHECK(find(claims, "dim5-13.L13.sum").computed == "-17/4; order 4");
}

TEST_CASE("lens bundle over the circle") {
  for (int n : {4, 8}) {
    const auto claims = verify_circle_bundle(n);
    CHECK(all_pass(claims));
  }
  const auto c8 = verify_circle_bundle(8);
  CHECK(find(c8, "circle-bundle.n8.top").computed == "Z^7*tau^2");
  CHECK(find(c8, "circle-bundle.n8.pushforward").computed == "xi(y*u*P^3)");
  CHECK(find(c8, "circle-bundle.n8.spin.w").computed == "0, 0");
  CHECK(all_pass(verify_circle_bundle(12)));
  CHECK_THROWS_AS(verify_circle_bundle(6), Error);
}

TEST_CASE("homology spans") {
  const auto s51 = verify_v2_spans(40);
  CHECK(all_pass(s51));
  CHECK(find(s51, "v2-span.n6.span").computed == "xi(delta^3)");
  CHECK(find(s51, "v2-span.n4.span").computed == "xi(alpha^2*delta)");
  CHECK(find(s51, "v2-span.n12.M95").computed == "xi(alpha^2*delta^5)");
  CHECK(find(s51, "v2-span.n40.count").computed == "5");
  const auto s53 = verify_two_column(40);
  CHECK(all_pass(s53));
  CHECK(find(s53, "two-column.n12.rank").computed == "2");
  CHECK(find(s53, "two-column.n8.rank").computed == "1");
  CHECK(find(s53, "two-column.n14.delta").computed == "0");
  CHECK(all_pass(verify_v2_spans(64)));
}

TEST_CASE("report") {
  CHECK(run_report({}).claims.empty());
  const auto q8 = run_report({"q8"});
  REQUIRE_FALSE(q8.claims.empty());
  CHECK(std::all_of(q8.claims.begin(), q8.claims.end(), [](const ClaimResult& c) { return c.id.rfind("q8.", 0) == 0; }));
  CHECK_THROWS_AS(run_report({"nope"}), Error);

  const auto all = run_report({"all"});
  CHECK(all.claims.size() >= 40);
  CHECK(all.all_pass());
  CHECK(all.q8_labeling == "Q8 -> SD16 (i -> s^2, j -> ts)");
  for (const auto& c : all.claims) CHECK_FALSE(c.anchor.empty());

  const auto doc = nlohmann::json::parse(report_json(all));
  REQUIRE(doc.is_array());
  CHECK(doc.size() == all.claims.size());
  CHECK(doc[0].contains("anchor"));
  CHECK(doc[0]["status"] == "pass");
  CHECK(report_json(all) == report_json(run_report({"all"})));
  const auto text = report_text(all);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find(std::to_string(all.claims.size()) + " claims, 0 failed") != std::string::npos);
}
