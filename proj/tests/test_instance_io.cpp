#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace infhom;

TEST_CASE("bundled instances parse") {
  const auto flat = parse_instance(testsupport::instance_path("flat_e2"));
  CHECK(flat.dimension == 2);
  CHECK(flat.h_basis.size() == 1);
  CHECK(flat.lambda.is_zero());
  CHECK(flat.R0.is_zero());
  CHECK(flat.T0.is_zero());

  const auto lie = parse_instance(testsupport::instance_path("liegroup_so3_minus_connection"));
  CHECK(lie.h_basis.empty());
  CHECK(lie.T0.component(0, 1) == Vector{0, 0, -1});
}

TEST_CASE("validation rules") {
  const auto parse = [](const char* text) { return instance_from_json(Json::parse(text)); };

  SECTION("i<j required") {
    const char* bad = R"({"dimension": 2, "R0": [{"i": 1, "j": 1, "matrix": [[0,0],[0,0]]}]})";
    try {
      parse(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("i<j required") != std::string::npos);
      CHECK(e.path == "R0[0]");
    }
  }
  SECTION("zero denominators are rejected") {
    const char* bad = R"({"dimension": 1, "lambda": [[["3/0"]]]})";
    try {
      parse(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("zero denominator") != std::string::npos);
    }
  }
  SECTION("floats are rejected") {
    CHECK_THROWS_AS(parse(R"({"dimension": 1, "lambda": [[[0.5]]]})"), ParseError);
  }
  SECTION("dimension is mandatory and positive") {
    CHECK_THROWS_AS(parse(R"({"lambda": []})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"dimension": 0})"), ParseError);
  }
  SECTION("lambda must have n entries") {
    CHECK_THROWS_AS(parse(R"({"dimension": 2, "lambda": [[[0,0],[0,0]]]})"), ParseError);
  }
  SECTION("duplicate pairs are rejected") {
    const char* bad =
        R"({"dimension": 2, "T0": [{"i":0,"j":1,"vector":[1,0]},{"i":0,"j":1,"vector":[0,1]}]})";
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
  SECTION("out-of-range indices are rejected") {
    CHECK_THROWS_AS(parse(R"({"dimension": 2, "T0": [{"i":0,"j":2,"vector":[0,0]}]})"),
                    ParseError);
  }
  SECTION("dependent h_basis is rejected with its index") {
    const char* bad =
        R"({"dimension": 2, "h_basis": [[[0,-1],[1,0]], [[0,-2],[2,0]]]})";
    try {
      parse(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.path == "h_basis[1]");
    }
  }
  SECTION("singular generators are rejected") {
    const char* bad =
        R"({"dimension": 2, "group_generators": [[[1,0],[0,0]]]})";
    try {
      parse(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("singular") != std::string::npos);
    }
  }
  SECTION("missing files are reported") {
    CHECK_THROWS_AS(parse_instance("/nonexistent/file.json"), ParseError);
  }
  SECTION("malformed documents never get past the validator") {
    for (const char* junk : {
             "[]",
             "42",
             R"({"dimension": "two"})",
             R"({"dimension": 2, "h_basis": 7})",
             R"({"dimension": 2, "h_basis": [[[0,-1],[1,0],[0,0]]]})",
             R"({"dimension": 2, "R0": [{"i":0,"j":1}]})",
             R"({"dimension": 2, "R0": [{"i":0,"j":1,"matrix":[[0,1],[1]]}]})",
             R"({"dimension": 2, "T0": [{"i":-1,"j":1,"vector":[0,0]}]})",
             R"({"dimension": 2, "lambda": [[[true,0],[0,0]],[[0,0],[0,0]]]})",
         }) {
      INFO(junk);
      CHECK_THROWS_AS(parse(junk), ParseError);
    }
  }
}

TEST_CASE("the one-dimensional edge case goes through the whole pipeline") {
  const auto inst = instance_from_json(Json::parse(R"({"dimension": 1})"));
  const auto report = run_certificate(inst.subalgebra(), inst.triple());
  CHECK(report.pass());
  const auto a = build_bracket(inst.subalgebra(), inst.R0, inst.lambda);
  CHECK(a.dim() == 1);
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{0, 0, 1});
}

TEST_CASE("rational JSON encoding") {
  CHECK(rational_to_json(Rational(5)) == Json(5));
  CHECK(rational_to_json(Rational(-1, 3)) == Json("-1/3"));
  // beyond int64: becomes a string
  const Rational big = Rational(BigInt("123456789012345678901234567890"));
  CHECK(rational_to_json(big).is_string());
  CHECK(rational_from_json(rational_to_json(big), "x") == big);
  CHECK(rational_from_json(Json("4/6"), "x") == Rational(2, 3));
  // an unsigned value beyond int64 must not wrap
  CHECK(rational_from_json(Json::parse("18446744073709551615"), "x") ==
        Rational(BigInt("18446744073709551615")));
}

TEST_CASE("round trip: parse, serialize, parse is the identity on the corpus") {
  auto names = testsupport::passing_corpus_names();
  for (const auto& extra : testsupport::corrupted_corpus_names()) names.push_back(extra);
  names.push_back("sphere_s2_generators");
  for (const auto& name : names) {
    INFO(name);
    const auto first = parse_instance(testsupport::instance_path(name));
    const Json serialized = instance_to_json(first);
    const auto second = instance_from_json(serialized);
    CHECK(first == second);
    CHECK(instance_to_json(second) == serialized);
  }
}

TEST_CASE("certificate reports serialize deterministically") {
  const auto inst = parse_instance(testsupport::instance_path("corrupted_hyperbolic_h2"));
  const auto report = run_certificate(inst.subalgebra(), inst.triple());
  const Json j = certificate_to_json(report);
  CHECK(j["verdict"] == "fail");
  REQUIRE(j["checks"].is_array());
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "curvature_relation") {
      found = true;
      CHECK(c["pass"] == false);
      CHECK(c["witness"]["indices"]["i"] == 0);
      CHECK(c["witness"]["indices"]["j"] == 1);
      CHECK(c["witness"]["value"].is_array());
    }
  CHECK(found);
  CHECK(certificate_to_json(run_certificate(inst.subalgebra(), inst.triple())) == j);

  const std::string text = certificate_to_text(report);
  CHECK(text.find("verdict: fail") != std::string::npos);
  CHECK(text.find("curvature_relation: fail") != std::string::npos);
}
