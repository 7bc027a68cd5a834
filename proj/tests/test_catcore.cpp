// Copyright 2026 The fusionlw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "fusionlw/category_io.hpp"
#include "fusionlw/complex_expr.hpp"
#include "fusionlw/gauge.hpp"
#include "fusionlw/verify.hpp"

using namespace fusionlw;
using Catch::Matchers::WithinAbs;

namespace {

std::string data(const std::string& name) { return std::string(FUSIONLW_DATA_DIR) + "/" + name; }

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

GaugeTransform random_gauge(const CategoryData& cat, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0), phase(-M_PI, M_PI);
  auto g = GaugeTransform::identity(cat);
  for (auto [a, b, c] : g.free_vertices()) {
    int k = cat.N(a, b, c);
    CMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = std::polar(mod(rng), phase(rng));
    m += 2.0 * CMatrix::Identity(k, k);  // keep it comfortably invertible
    g.set(a, b, c, m);
  }
  return g;
}

}  // namespace

TEST_CASE("expressions evaluate the forms used in data files", "[expr]") {
  CHECK_THAT(evaluate_expression("1 + sqrt(3)").real(), WithinAbs(1.0 + std::sqrt(3.0), 1e-15));
  cplx e = evaluate_expression("exp(i*pi*7/12)/sqrt(2)");
  CHECK(std::abs(e - std::polar(1.0 / std::sqrt(2.0), 7.0 * M_PI / 12.0)) < 1e-15);
  CHECK(std::abs(evaluate_expression("-(exp(pi*i/6)-1)/2") - (-(std::polar(1.0, M_PI / 6) - 1.0) / 2.0)) < 1e-15);
  CHECK(evaluate_expression("2e-3").real() == 2e-3);
  CHECK(evaluate_expression("d*d", {{"d", 3.0}}).real() == 9.0);
  CHECK_THROWS_AS(evaluate_expression("sqrt(2"), ExprError);
  CHECK_THROWS_AS(evaluate_expression("1 +"), ExprError);
  CHECK_THROWS_AS(evaluate_expression("q"), ExprError);
  CHECK_THROWS_AS(evaluate_expression("1/0"), ExprError);
}

TEST_CASE("E_raw loads with the listed fusion rules and F-matrices", "[catcore]") {
  auto cat = load_category(data("E_raw.cat"));
  Label one = cat.label("1"), x = cat.label("x"), y = cat.label("y");
  CHECK(cat.rank() == 3);
  CHECK(cat.unit() == one);
  CHECK(hom_dim(cat, x, x, x) == 2);
  CHECK(hom_dim(cat, x, y, x) == 1);
  CHECK(hom_dim(cat, y, x, x) == 1);
  CHECK(hom_dim(cat, x, x, y) == 1);
  CHECK(hom_dim(cat, y, y, one) == 1);
  CHECK(hom_dim(cat, y, y, x) == 0);
  for (Label a = 0; a < 3; ++a)
    for (Label b = 0; b < 3; ++b) CHECK(hom_dim(cat, one, a, b) == (a == b ? 1 : 0));

  CMatrix fxyx(2, 2);
  fxyx << 1, 0, 0, -1;
  CHECK(max_diff(cat.F(x, y, x, x), fxyx) == 0.0);
  CHECK(cat.F(x, x, x, x).rows() == 6);
  CHECK_THAT(cat.dim(x), WithinAbs(1.0 + std::sqrt(3.0), 1e-15));
  // Unit legs default to the identity.
  CHECK(max_diff(cat.F(one, x, x, x), CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_diff(cat.F(x, x, one, x), CMatrix::Identity(2, 2)) == 0.0);
  // Row (1) of the 6x6 matrix starts with (-1+sqrt 3)/2.
  CHECK_THAT(cat.F(x, x, x, x)(0, 0).real(), WithinAbs((std::sqrt(3.0) - 1.0) / 2.0, 1e-15));
  CHECK(cat.rows({x, x, x, x})[1] == TreeIndex{y, 0, 0});
  CHECK(cat.listed_inverses().count({x, x, x, x}) == 1);
}

TEST_CASE("Z2 and the trivial category", "[catcore]") {
  auto z2 = load_category(data("Z2.cat"));
  CHECK(z2.rank() == 2);
  CHECK(z2.dim(0) == 1.0);
  CHECK(z2.dim(1) == 1.0);
  CHECK(total_dim_sq(z2) == 2.0);
  auto triv = load_category(data("trivial.cat"));
  CHECK(triv.rank() == 1);
  CHECK(total_dim_sq(triv) == 1.0);
  auto e = load_category(data("E_normalized.cat"));
  CHECK_THAT(total_dim_sq(e), WithinAbs(6.0 + 2.0 * std::sqrt(3.0), 1e-12));
  CHECK_THAT(total_dim_sq(e), WithinAbs(9.4641016, 1e-7));
}

TEST_CASE("Perron-Frobenius dimensions agree with the listed ones", "[catcore]") {
  for (auto name : {"E_raw.cat", "Z2.cat", "trivial.cat"}) {
    auto cat = load_category(data(name));
    auto pf = perron_frobenius_dims(cat.rules());
    double pf_d2 = 0.0;
    for (Label a = 0; a < cat.rank(); ++a) {
      CHECK_THAT(pf[static_cast<std::size_t>(a)], WithinAbs(cat.dim(a), 1e-9));
      pf_d2 += pf[static_cast<std::size_t>(a)] * pf[static_cast<std::size_t>(a)];
    }
    CHECK_THAT(total_dim_sq(cat), WithinAbs(pf_d2, 1e-9));
  }
}

namespace {
const char* kSmallE = R"(
name: broken
[constants]
d = 1 + sqrt(3)
[labels]
1 unit
y
x
[fusion]
x y x 1
y x x 1
x x 1 1
x x x 2
x x y 1
y y 1 1
[dims]
y = 1
x = d
)";
}

TEST_CASE("loader reports shape and missing-matrix errors", "[catcore]") {
  SECTION("5x5 where 6x6 is required") {
    std::string text = kSmallE;
    text += "[fmatrix x x x x]\n";
    for (int i = 0; i < 5; ++i) text += "1, 0, 0, 0, 0\n";
    try {
      parse_category_string(text, "small");
      FAIL("expected a shape error");
    } catch (const ShapeError& e) {
      std::string msg = e.what();
      CHECK(msg.find("(x,x,x;x)") != std::string::npos);
      CHECK(msg.find("expected 6x6") != std::string::npos);
      CHECK(msg.find("small:19") != std::string::npos);
    }
  }
  SECTION("missing F-matrices") {
    CHECK_THROWS_AS(parse_category_string(kSmallE), MissingFMatrixError);
  }
  SECTION("parse errors carry the line") {
    try {
      parse_category_string("name: a\n[labels]\n1 unit\n[fusion]\n1 q 1 1\n", "bad");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
      CHECK(std::string(e.what()).find("unknown label 'q'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_category_string("[labels]\na\n"), ParseError);  // no unit
    CHECK_THROWS_AS(parse_category_string("[labels]\n1 unit\n[dims]\n1 = sqrt(\n"), ParseError);
  }
  SECTION("ragged rows") {
    CHECK_THROWS_AS(parse_category_string("[labels]\n1 unit\ne\n[fusion]\ne e 1 1\n[dims]\ne=1\n"
                                          "[fmatrix e e e e]\n1, 2\n3\n"),
                    ParseError);
  }
  SECTION("non self-dual objects are rejected") {
    // Z3 fusion: a*a = b, a*b = 1.
    CHECK_THROWS_AS(parse_category_string("[labels]\n1 unit\na\nb\n[fusion]\na a b 1\na b 1 1\nb a 1 1\nb b a 1\n"
                                          "[dims]\na=1\nb=1\n"),
                    ValidationError);
  }
  SECTION("non-identity matrix on a unit leg") {
    CHECK_THROWS_AS(parse_category_string("[labels]\n1 unit\ne\n[fusion]\ne e 1 1\n[dims]\ne=1\n"
                                          "[fmatrix e e e e]\n1\n[fmatrix 1 e e 1]\n-1\n"),
                    ValidationError);
  }
  SECTION("missing file") { CHECK_THROWS_AS(load_category(data("no_such.cat")), Error); }
}

TEST_CASE("write_category round trips", "[catcore]") {
  auto cat = load_category(data("E_normalized.cat"));
  std::stringstream ss;
  write_category(ss, cat);
  auto back = parse_category(ss, "roundtrip");
  for (const Quad& q : cat.quads()) CHECK(max_diff(cat.F(q), back.F(q)) < 1e-15);
}

TEST_CASE("identity gauge changes nothing", "[gauge]") {
  auto cat = load_category(data("E_raw.cat"));
  auto out = apply_gauge(cat, GaugeTransform::identity(cat));
  for (const Quad& q : cat.quads()) CHECK(max_diff(cat.F(q), out.F(q)) == 0.0);
}

TEST_CASE("gauge round trip and pentagon invariance", "[gauge]") {
  std::mt19937_64 rng(7);
  for (auto name : {"E_raw.cat", "E_normalized.cat", "Z2.cat"}) {
    auto cat = load_category(data(name));
    for (int trial = 0; trial < 3; ++trial) {
      auto g = random_gauge(cat, rng);
      auto moved = apply_gauge(cat, g);
      auto back = apply_gauge(moved, g.inverse());
      for (const Quad& q : cat.quads()) CHECK(max_diff(cat.F(q), back.F(q)) < 1e-12);
      CHECK(check_pentagon(moved).residual < 1e-8);
      Label one = cat.unit();
      for (const Quad& q : moved.quads())
        if (q.u == one || q.v == one || q.w == one)
          CHECK(max_diff(moved.F(q), CMatrix::Identity(moved.F(q).rows(), moved.F(q).cols())) == 0.0);
      // The listed inverse follows the gauge.
      for (auto& [q, inv] : moved.listed_inverses())
        CHECK(max_diff(moved.F(q) * inv, CMatrix::Identity(inv.rows(), inv.cols())) < 1e-9);
    }
  }
}

TEST_CASE("a scalar gauge on Z2 leaves F^e_{eee} fixed and round trips", "[gauge]") {
  auto z2 = load_category(data("Z2.cat"));
  auto g = GaugeTransform::identity(z2);
  CMatrix a(1, 1);
  a(0, 0) = cplx(2.0, 1.0);
  g.set(1, 1, 0, a);  // Hom(e e, 1)
  auto moved = apply_gauge(z2, g);
  // Columns carry A^{e e}_1, rows (A^{e e}_1)^-1 for F^e_{eee}: here the
  // vertex (e,e;1) appears once on each side, so F is unchanged.
  CHECK(std::abs(moved.F(1, 1, 1, 1)(0, 0) - 1.0) < 1e-15);
  auto back = apply_gauge(moved, g.inverse());
  CHECK(std::abs(back.F(1, 1, 1, 1)(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("gauge rejects frozen and singular matrices", "[gauge]") {
  auto cat = load_category(data("E_raw.cat"));
  auto g = GaugeTransform::identity(cat);
  Label one = cat.label("1"), x = cat.label("x");
  CHECK_THROWS(g.set(one, x, x, 2.0 * CMatrix::Identity(1, 1)));
  CHECK_THROWS(g.set(x, x, x, CMatrix::Zero(2, 2)));
  CHECK_THROWS(g.set(x, x, x, CMatrix::Identity(1, 1)));
  CHECK(g.free_vertices().size() == 6);
}
