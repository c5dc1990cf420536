#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "etacoh/config.hpp"
#include "etacoh/error.hpp"

using namespace etacoh;

namespace {

const char* kProjective = R"({
  "degree_bound": 40,
  "algebras": [
    {
      "name": "rp3",
      "generators": [{"name": "x", "degree": 1}],
      "relations": ["x^4"],
      "poincare": {"dimension": 3, "top": "x^3"},
      "steenrod": []
    }
  ],
  "homs": [
    {"name": "self", "source": "custom:rp3", "target": "custom:rp3", "images": {"x": "x"}}
  ]
})";

}  // namespace

TEST_CASE("empty config gives defaults") {
  for (const char* text : {"", "  \n", "{}"}) {
    const Config c = parse_config(text);
    CHECK(c.degree_bound == 64);
    CHECK(c.root_order_cap == 64);
    CHECK(c.algebras.empty());
  }
}

TEST_CASE("custom algebra round trip") {
  const Config c = parse_config(kProjective);
  CHECK(c.degree_bound == 40);
  const AlgebraPtr a = c.algebra("custom:rp3");
  CHECK(a->degree_bound() == 40);
  CHECK(a->parse("x^5").is_zero());
  CHECK(a->graded_basis(2).size() == 1);
  const SteenrodData s = c.steenrod("custom:rp3");
  CHECK(s.sq(1, a->parse("x^2")).is_zero());
  CHECK(s.sq(1, a->parse("x")).str() == "x^2");
  const auto w = stiefel_whitney(s);
  CHECK(w[1].is_zero());
  CHECK(c.hom("custom:self").apply(a->parse("x^3")).str() == "x^3");
  CHECK(c.algebra("sd")->name() == builtin_algebra("sd")->name());
  CHECK_THROWS_AS(c.algebra("custom:none"), Error);
}

TEST_CASE("malformed relation reports its position") {
  const std::string text =
      "{\n"
      "  \"algebras\": [\n"
      "    {\"name\": \"bad\", \"generators\": [{\"name\": \"x\", \"degree\": 1}],\n"
      "     \"relations\": [\"x^3 + )\"]}\n"
      "  ]\n"
      "}\n";
  try {
    parse_config(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    const std::string line = "     \"relations\": [\"x^3 + )\"]}";
    CHECK(e.column() == line.find(')') + 1);
  }
}

TEST_CASE("JSON syntax errors carry line and column") {
  try {
    parse_config("{\n  \"degree_bound\": 12,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("validation errors name the failing field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ParseError&) {
      return std::string("parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidationError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"degree_bound": 0})").find("degree_bound") != std::string::npos);
  CHECK(message(R"({"colour": 1})").find("unknown key 'colour'") != std::string::npos);
  CHECK(message(R"({"algebras": [{"name": "a", "generators": [{"name": "x", "degree": 1}], "relations": ["x^2 + x"]}]})")
            .find("not homogeneous") != std::string::npos);
  CHECK(message(R"({"algebras": [{"name": "a", "generators": [{"name": "x", "degree": 1}], "poincare": {"dimension": 2, "top": "x^2"}}]})")
            .find("algebras[0]") != std::string::npos);
  CHECK(message(R"({"homs": [{"name": "h", "source": "d8", "target": "v2", "images": {"alpha": "p^2"}}]})")
            .find("homs[0]") != std::string::npos);
}

TEST_CASE("user character tables") {
  const std::string c2 = R"({
  "character_tables": [
    {
      "group": "C2",
      "classes": [{"name": "1", "size": 1}, {"name": "g", "size": 1}],
      "irreducibles": [
        {"name": "triv", "values": ["1", "1"]},
        {"name": "sign", "values": ["1", "-1"]}
      ]
    },
    {
      "group": "C4",
      "classes": [{"name": "1", "size": 1}, {"name": "g^2", "size": 1}, {"name": "g", "size": 1}, {"name": "g^3", "size": 1}],
      "irreducibles": [
        {"name": "a", "values": ["1", "1", "1", "1"]},
        {"name": "b", "values": ["1", "-1", "1*z^1 @ n=4", "-1*z^1 @ n=4"]},
        {"name": "c", "values": ["1", "1", "-1", "-1"]},
        {"name": "d", "values": ["1", "-1", "-1*z^1 @ n=4", "1*z^1 @ n=4"]}
      ],
      "inclusions": [{"name": "sq", "source": "C2", "images": ["g^2"]}]
    }
  ]
})";
  const Config c = parse_config(c2);
  const TablePtr t4 = c.table("C4");
  CHECK(t4->name(1) == "b");
  const VirtualCharacter b = VirtualCharacter::irreducible(t4, "b");
  const auto r = restrict_virtual(b, c.inclusion("sq"), c.table("C2"));
  CHECK(r.str() == "sign");
  CHECK(c.table("Q8")->size() == 5);

  const std::string bad_row = R"({"character_tables": [{"group": "C2",
    "classes": [{"name": "1", "size": 1}, {"name": "g", "size": 1}],
    "irreducibles": [{"name": "t", "values": ["1", "1"]}, {"name": "s", "values": ["1", "1"]}]}]})";
  CHECK_THROWS_WITH_AS(parse_config(bad_row), doctest::Contains("character rows 0 and 1"), Error);
  const std::string bad_size = R"({"character_tables": [{"group": "C2",
    "classes": [{"name": "1", "size": 1}, {"name": "g", "size": 2}], "irreducibles": []}]})";
  CHECK_THROWS_WITH_AS(parse_config(bad_size), doctest::Contains("classes[1].size"), Error);
  const std::string bad_value = R"({"character_tables": [{"group": "C2",
    "classes": [{"name": "1", "size": 1}, {"name": "g", "size": 1}],
    "irreducibles": [{"name": "t", "values": ["1", "1 +* z"]}, {"name": "s", "values": ["1", "-1"]}]}]})";
  CHECK_THROWS_AS(parse_config(bad_value), ParseError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"root_order_cap": 4, "character_tables": [{"group": "C8", "classes": [], "irreducibles": []}]})"),
                       doctest::Contains("root order cap"), Error);
}

TEST_CASE("config file and environment") {
  const std::string path = "etacoh_test_config.json";
  {
    std::ofstream f(path);
    f << kProjective;
  }
  CHECK(load_config(path).algebras.count("rp3") == 1);
  ::setenv(kConfigEnvironment, path.c_str(), 1);
  CHECK(resolve_config("").algebras.count("rp3") == 1);
  ::unsetenv(kConfigEnvironment);
  CHECK(resolve_config("").algebras.empty());
  CHECK_THROWS_AS(load_config("no/such/file.json"), Error);
  std::remove(path.c_str());
}
