#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "qgraph/errors.hpp"
#include "qgraph/json_io.hpp"

using namespace qgraph;

namespace {

const char* kWireSpec = R"({
  "vertices": 2,
  "bonds": [
    {"from": 1, "to": 2, "length": 1, "magnetic": 0, "potential": {"kind": "zero"}}
  ],
  "conditions": {"kind": "dirichlet"}
})";

}  // namespace

TEST_CASE("graph spec parsing captures numbers exactly") {
  const auto spec = parse_graph_spec_text(R"({
    "vertices": 3,
    "bonds": [
      {"from": 1, "to": 2, "length": 0.1,
       "potential": {"kind": "poly", "coeffs": ["0", "1/2", 0.25]}},
      {"from": 2, "to": 3, "length": "3/2", "magnetic": 0.5,
       "potential": {"kind": "susy", "phi": {"coeffs": ["0", "2"]}}}
    ],
    "conditions": {"kind": "delta", "coupling": {"1": 1.5, "2": "0", "3": -2}}
  })");
  CHECK(spec.graph.vertex_count() == 3);
  // 0.1 parses to exactly 1/10, not the nearest double
  CHECK(spec.graph.bond(0).length == Rational(1, 10));
  CHECK(spec.graph.bond(0).potential.expanded().coeff(1) == Rational(1, 2));
  CHECK(spec.graph.bond(0).potential.expanded().coeff(2) == Rational(1, 4));
  CHECK(spec.graph.bond(1).length == Rational(3, 2));
  // susy phi = 2x expands to 4x^2 + 2
  CHECK(spec.graph.bond(1).potential.expanded().coeff(0) == Rational(2));
  CHECK(spec.graph.bond(1).potential.expanded().coeff(2) == Rational(4));
  CHECK(validate_self_adjoint(spec.conditions, spec.graph).valid);
}

TEST_CASE("explicit conditions with complex [re, im] entries") {
  const auto spec = parse_graph_spec_text(R"({
    "vertices": 2,
    "bonds": [{"from": 1, "to": 2, "length": 1}],
    "conditions": {"kind": "explicit",
      "matrix_a": [[1, 0], [0, [0, 1]]],
      "matrix_b": [[0, 0], [0, 0]]}
  })");
  CHECK(spec.conditions.a[1][1] == GaussianRational(Rational(0), Rational(1)));
  // i * psi(L) = 0 is still Dirichlet-like and self-adjoint
  CHECK(validate_self_adjoint(spec.conditions, spec.graph).valid);
}

TEST_CASE("parse errors carry context") {
  CHECK_THROWS_AS(parse_graph_spec_text("{"), ParseError);
  CHECK_THROWS_AS(parse_graph_spec_text(R"({"vertices": 1.5, "bonds": [],
    "conditions": {"kind": "dirichlet"}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_graph_spec_text(R"({"vertices": 2,
    "bonds": [{"from": 1, "to": 2, "length": 1}],
    "conditions": {"kind": "frobnicate"}})"),
                  ParseError);
}

TEST_CASE("emitted specs re-parse to identical structures") {
  const auto spec = parse_graph_spec_text(R"({
    "vertices": 2,
    "bonds": [{"from": 1, "to": 2, "length": "4/3", "magnetic": 0.25,
               "potential": {"kind": "poly", "coeffs": ["1/3", "-2"]}}],
    "conditions": {"kind": "delta", "coupling": {"1": 1.0}}
  })");
  const auto round = parse_graph_spec_text(dump_fixed(emit_graph_spec(spec)));
  CHECK(round.graph.vertex_count() == spec.graph.vertex_count());
  CHECK(round.graph.bond(0).length == spec.graph.bond(0).length);
  CHECK(round.graph.bond(0).magnetic == spec.graph.bond(0).magnetic);
  CHECK(round.graph.bond(0).potential == spec.graph.bond(0).potential);
  CHECK(round.conditions.a == spec.conditions.a);
  CHECK(round.conditions.b == spec.conditions.b);
}

TEST_CASE("dump_fixed output is deterministic with %.12e floats") {
  nlohmann::json j;
  j["beta"] = 0.1;
  j["alpha"] = 3;
  const std::string once = dump_fixed(j);
  CHECK(once == dump_fixed(j));
  CHECK(once.find("1.000000000000e-01") != std::string::npos);
  // keys are sorted
  CHECK(once.find("alpha") < once.find("beta"));
}

#ifdef QGRAPH_BIN
TEST_CASE("CLI end-to-end: det on the free Dirichlet wire") {
  const std::string dir = "/tmp/qgraph_cli_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  {
    std::ofstream f(dir + "/wire.json");
    f << kWireSpec;
  }
  const std::string cmd = std::string(QGRAPH_BIN) + " det --input " + dir +
                          "/wire.json --gamma 1 --format json > " + dir + "/out.json";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in(dir + "/out.json");
  nlohmann::json out;
  in >> out;
  CHECK(std::fabs(out["value"].get<double>() - 2.0 * std::sinh(1.0)) < 1e-7);

  // validate on a rank-deficient explicit pair exits with code 3
  {
    std::ofstream f(dir + "/bad.json");
    f << R"({"vertices": 2, "bonds": [{"from":1,"to":2,"length":1}],
         "conditions": {"kind":"explicit","matrix_a":[[1,0],[0,0]],
                        "matrix_b":[[0,0],[0,0]]}})";
  }
  const int rc = std::system((std::string(QGRAPH_BIN) + " validate --input " + dir +
                              "/bad.json > /dev/null 2>/dev/null")
                                 .c_str());
  CHECK(WEXITSTATUS(rc) == 3);

  // selftest runs the oracle corpus
  const int rc2 =
      std::system((std::string(QGRAPH_BIN) + " selftest > /dev/null 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(rc2) == 0);
}
#endif
