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
#include <sstream>

#include "fusionlw/category_io.hpp"
#include "fusionlw/diagram.hpp"
#include "fusionlw/honeycomb.hpp"
#include "fusionlw/levinwen.hpp"
#include "oracles.hpp"

using namespace fusionlw;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::string data(const std::string& name) { return std::string(FUSIONLW_DATA_DIR) + "/" + name; }

const CategoryData& e_norm() {
  static const CategoryData cat = load_category(data("E_normalized.cat"));
  return cat;
}
const CategoryData& e_raw() {
  static const CategoryData cat = load_category(data("E_raw.cat"));
  return cat;
}
const CategoryData& z2() {
  static const CategoryData cat = load_category(data("Z2.cat"));
  return cat;
}
const CategoryData& trivial() {
  static const CategoryData cat = load_category(data("trivial.cat"));
  return cat;
}

// Minus table replaced by the mirrored plus table without complex conjugation.
SixJTable unconjugated_minus(const CategoryData& cat, const SixJTable& plus) {
  SixJTable out(SixJSign::minus, cat.rules());
  plus.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx val) {
    out.set(w, x, y, u, v, z, b, a, d, g, val);
  });
  return out;
}

HoneycombPatch single_vertex(Label a, Label b, Label c) {
  HoneycombPatch p;
  p.name = "vertex";
  int ea = p.add_edge("a", true, a), eb = p.add_edge("b", true, b), ec = p.add_edge("c", true, c);
  p.add_vertex("I", VertexKind::fusion, {ea, eb, ec});
  return p;
}

}  // namespace

TEST_CASE("strand diagrams evaluate loops, snakes and bubbles", "[diagram]") {
  const auto& cat = e_norm();
  MoveEngine eng(cat);
  for (Label s = 0; s < cat.rank(); ++s) {
    auto loop = eng.diagram({});
    loop.cup(0, s).cap(0);
    CHECK_THAT(std::abs(loop.scalar() - cat.dim(s)), WithinAbs(0.0, 1e-13));
    auto snake = eng.diagram({s});
    snake.cup(1, s).cap(0);
    CHECK_THAT(std::abs(snake.strand_coefficient() - 1.0), WithinAbs(0.0, 1e-13));
  }
  Label x = cat.label("x");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto bubble = eng.diagram({x});
      bubble.split(0, x, x, a).fuse(0, x, b);
      double want = a == b ? std::sqrt(cat.dim(x)) : 0.0;
      CHECK_THAT(std::abs(bubble.strand_coefficient() - want), WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("fusing after splitting recovers the fusion basis", "[diagram]") {
  const auto& cat = e_norm();
  MoveEngine eng(cat);
  Label x = cat.label("x"), y = cat.label("y");
  auto d = eng.diagram({x, y});
  d.fuse(0, x, 0);
  auto c = d.fusion_coefficients();
  REQUIRE(c.size() == 1);
  CHECK_THAT(std::abs(c[0] - 1.0), WithinAbs(0.0, 1e-13));
  CHECK_THROWS_AS(d.splitting_coefficients(), Error);
}

TEST_CASE("hexagon generator produces a closed plaquette", "[patch]") {
  auto p = single_hexagon(0);
  CHECK(p.edges().size() == 12);
  CHECK(p.inner_edges().size() == 6);
  CHECK(p.vertices().size() == 6);
  REQUIRE(p.plaquettes().size() == 1);
  auto t = honeycomb_torus(2, 2);
  CHECK(t.edges().size() == 12);
  CHECK(t.vertices().size() == 8);
  CHECK(t.plaquettes().size() == 4);
  CHECK(t.boundary_edges().empty());
  auto two = two_hexagons(std::vector<Label>(8, 0));
  CHECK(two.inner_edges().size() == 11);
  CHECK(two.boundary_edges().size() == 8);
}

TEST_CASE("shipped patch files match the generators", "[patch]") {
  const auto& cat = e_norm();
  Label x = cat.label("x"), one = cat.unit();
  auto render = [&](const HoneycombPatch& p) {
    std::ostringstream out;
    write_patch(out, p, cat);
    return out.str();
  };
  CHECK(render(load_patch(data("patches/hexagon_x.patch"), cat)) == render(single_hexagon(x)));
  CHECK(render(load_patch(data("patches/hexagon_1.patch"), cat)) == render(single_hexagon(one)));
  CHECK(render(load_patch(data("patches/two_hexagons.patch"), cat)) ==
        render(two_hexagons({x, x, x, x, one, one, one, one})));
  CHECK(render(load_patch(data("patches/torus_2x2.patch"), z2())) == render(honeycomb_torus(2, 2)));
}

TEST_CASE("patch parser reports the offending line", "[patch]") {
  const auto& cat = z2();
  auto parse = [&](const std::string& text) {
    std::istringstream in(text);
    return parse_patch(in, "p", cat);
  };
  CHECK_THROWS_WITH(parse("edge a inner\nvertex I fusion a b c\n"), ContainsSubstring("p:2") &&
                                                                         ContainsSubstring("unknown edge 'b'"));
  CHECK_THROWS_WITH(parse("edge a boundary q\n"), ContainsSubstring("p:1") && ContainsSubstring("'q'"));
  CHECK_THROWS_WITH(parse("edge a inner\nedge b boundary e\nedge c boundary e\nvertex I fusion a b c\n"),
                    ContainsSubstring("inner edge 'a'"));
  CHECK_THROWS_WITH(parse("frobnicate\n"), ContainsSubstring("cannot parse"));

  std::ostringstream good;
  write_patch(good, single_hexagon(0), cat);
  std::string text = good.str();
  auto pos = text.find("vertex Am1_0 fusion");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 19, "vertex Am1_0 split ");
  CHECK_THROWS_WITH(parse(text), ContainsSubstring("must be a fusion vertex"));
}

TEST_CASE("state enumeration matches brute-force counts", "[levinwen]") {
  Label x = e_norm().label("x");
  CHECK(enumerate_states(single_hexagon(0), z2()).size() == 2);
  CHECK(enumerate_states(single_hexagon(0), e_norm()).size() == 3);
  auto hx = single_hexagon(x);
  CHECK(static_cast<long>(enumerate_states(hx, e_norm()).size()) == oracle::brute_force_state_count(e_norm(), hx));
  CHECK(enumerate_states(hx, e_norm()).size() == 416);
  auto two = two_hexagons({x, x, x, x, 0, 0, 0, 0});
  CHECK(static_cast<long>(enumerate_states(two, e_norm()).size()) ==
        oracle::brute_force_state_count(e_norm(), two));
  CHECK(enumerate_states(honeycomb_torus(2, 2), z2()).size() == 32);
}

TEST_CASE("state enumeration is lexicographic", "[levinwen]") {
  auto hx = single_hexagon(e_norm().label("x"));
  auto states = enumerate_states(hx, e_norm());
  auto inner = hx.inner_edges();
  auto key = [&](const StateLabeling& s) {
    std::vector<int> k;
    for (int e : inner) k.push_back(s.edges[static_cast<std::size_t>(e)]);
    k.insert(k.end(), s.vertices.begin(), s.vertices.end());
    return k;
  };
  for (std::size_t i = 1; i < states.size(); ++i) CHECK(key(states[i - 1]) < key(states[i]));
}

TEST_CASE("Z2 hexagon loop operator swaps the two loop states", "[levinwen]") {
  StringNet net(z2(), single_hexagon(0));
  const auto& b = net.admissible_basis();
  REQUIRE(b.size() == 2);
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(max_abs(net.build_BsP(0, z2().label("e")).matrix - swap) == 0.0);
  CHECK(max_abs(net.build_BsP(0, 0).matrix - CMatrix::Identity(2, 2)) == 0.0);
  CMatrix half = (CMatrix::Identity(2, 2) + swap) / 2.0;
  CHECK(max_abs(net.build_BP(0).matrix - half) < 1e-15);

  CMatrix h = net.build_H().matrix;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CHECK_THAT(es.eigenvalues()(0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(es.eigenvalues()(1), WithinAbs(1.0, 1e-14));
  CHECK_THAT(std::abs(es.eigenvectors()(0, 0)), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
  CHECK_THAT(std::abs(es.eigenvectors()(1, 0)), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
}

TEST_CASE("rank-one category gives trivial operators", "[levinwen]") {
  StringNet net(trivial(), single_hexagon(0));
  REQUIRE(net.admissible_basis().size() == 1);
  CHECK(max_abs(net.build_BP(0).matrix - CMatrix::Identity(1, 1)) < 1e-15);
  CHECK(max_abs(net.build_H().matrix) < 1e-15);
}

TEST_CASE("unit loop acts as the identity", "[levinwen]") {
  StringNet net(e_norm(), single_hexagon(e_norm().label("x")));
  CMatrix b1 = net.build_BsP(0, e_norm().unit()).matrix;
  CHECK(max_abs(b1 - CMatrix::Identity(b1.rows(), b1.cols())) < 1e-13);
}

TEST_CASE("E hexagon plaquette is a hermitian projector of the expected rank", "[levinwen]") {
  const auto& cat = e_norm();
  Label x = cat.label("x");
  for (Label leg : {cat.unit(), x}) {
    StringNet net(cat, single_hexagon(leg));
    CMatrix bp = net.build_BP(0).matrix;
    CHECK(max_abs(bp * bp - bp) < 1e-8);
    CHECK(max_abs(bp - bp.adjoint()) < 1e-8);
    int rank = oracle::invariant_count(cat, std::vector<Label>(6, leg));
    CHECK_THAT(bp.trace().real(), WithinAbs(rank, 1e-9));
  }
  CHECK(oracle::invariant_count(cat, std::vector<Label>(6, x)) == 44);
}

TEST_CASE("6j contraction agrees with the move sequence element by element", "[levinwen]") {
  const auto& cat = e_norm();
  StringNet net(cat, single_hexagon(cat.label("x")));
  for (Label s = 0; s < cat.rank(); ++s) {
    CMatrix a = net.build_BsP(0, s).matrix, b = net.build_BsP_moves(0, s).matrix;
    CHECK(max_abs(a - b) <= 1e-10);
    CHECK(max_abs(a) > 0.1);
  }
  CHECK(max_abs(net.build_BP(0).matrix - net.build_BP_trace(0).matrix) <= 1e-10);
}

TEST_CASE("mixed boundary hexagon passes every certification", "[levinwen]") {
  const auto& cat = e_norm();
  Label x = cat.label("x"), y = cat.label("y");
  auto p = single_hexagon(x);
  p.set_boundary_labels({x, y, x, x, 0, y});
  StringNet net(cat, p);
  REQUIRE(net.admissible_basis().size() > 0);
  auto c = certify(net);
  for (const auto& r : c.reports) {
    INFO(r.name << " " << r.residual);
    CHECK(r.passed);
  }
  CHECK_THAT(c.bp[0].trace().real(), WithinAbs(oracle::invariant_count(cat, {x, y, x, x, 0, y}), 1e-9));
}

TEST_CASE("adjacent plaquettes commute and share the disk ground space", "[levinwen]") {
  const auto& cat = e_norm();
  Label x = cat.label("x");
  StringNet net(cat, two_hexagons({x, x, x, x, 0, 0, 0, 0}));
  auto c = certify(net);
  for (const auto& r : c.reports) {
    INFO(r.name << " " << r.residual);
    CHECK(r.passed);
  }
  CMatrix both = c.bp[0] * c.bp[1];
  CHECK(max_abs(c.bp[0] * c.bp[1] - c.bp[1] * c.bp[0]) <= 1e-8);
  CHECK(max_abs(c.bp[0] - c.bp[1]) > 0.1);
  CHECK_THAT(both.trace().real(), WithinAbs(oracle::invariant_count(cat, {x, x, x, x}), 1e-9));
  CHECK(c.spectrum.ground_degeneracy() == oracle::invariant_count(cat, {x, x, x, x}));
}

TEST_CASE("Z2 torus spectrum matches the Jacobi oracle", "[levinwen]") {
  StringNet net(z2(), honeycomb_torus(2, 2));
  auto c = certify(net, {1e-12});
  for (const auto& r : c.reports) {
    INFO(r.name << " " << r.residual);
    CHECK(r.passed);
  }
  REQUIRE(max_abs(c.hamiltonian.imag()) == 0.0);
  auto ev = oracle::jacobi_eigenvalues(c.hamiltonian.real());
  REQUIRE(ev.size() == c.spectrum.eigenvalues.size());
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK_THAT(ev[i] - c.spectrum.eigenvalues[i], WithinAbs(0.0, 1e-10));
  CHECK(c.spectrum.ground_degeneracy() == oracle::count_below(ev, 1e-8));
  CHECK(c.spectrum.ground_degeneracy() == 4);
  CHECK(ev.front() >= -1e-12);
}

TEST_CASE("full-space vertex projectors", "[levinwen]") {
  Label e = z2().label("e");
  StringNet ok(z2(), single_vertex(e, e, 0), {true});
  CHECK(ok.build_EI(0).matrix(0, 0) == cplx(1.0));
  StringNet bad(z2(), single_vertex(e, 0, 0), {true});
  CHECK(bad.build_EI(0).matrix(0, 0) == cplx(0.0));
  CHECK(ok.build_EI(0).matrix.rows() == 1);

  StringNet net(z2(), single_hexagon(0), {true});
  CHECK(net.basis()->size() == 64);
  auto c = certify(net, {1e-12});
  for (const auto& r : c.reports) {
    INFO(r.name << " " << r.residual);
    CHECK(r.passed);
  }
  CHECK(c.spectrum.ground_degeneracy() == 1);

  StringNet adm(z2(), single_hexagon(0));
  for (int v = 0; v < 6; ++v) CHECK(max_abs(adm.build_EI(v).matrix - CMatrix::Identity(2, 2)) == 0.0);
  CHECK_THROWS_WITH(StringNet(e_norm(), single_hexagon(0), {true}), ContainsSubstring("too large"));
}

TEST_CASE("non-unitary data is refused", "[levinwen]") {
  CHECK_THROWS_WITH(StringNet(e_raw(), single_hexagon(0)), ContainsSubstring("not unitary"));
  CHECK_NOTHROW(StringNet(e_raw(), single_hexagon(0), {false, true}));
}

TEST_CASE("unconjugated mirror table breaks hermiticity", "[levinwen]") {
  const auto& cat = e_norm();
  auto plus = compute_plus(cat);
  StringNet net(cat, single_hexagon(cat.label("x")), plus, unconjugated_minus(cat, plus));
  auto c = certify(net, {kPlaquetteTol, false, false});
  auto find = [&](const std::string& n) {
    for (const auto& r : c.reports)
      if (r.name == n) return r;
    FAIL("missing report " << n);
    return VerificationReport{};
  };
  CHECK_FALSE(find("hermitian(B_P)").passed);
  CHECK(find("hermitian(B_P)").residual > 1e-3);
  CHECK_FALSE(c.passed());
}

TEST_CASE("operator dump lists the basis and the matrix", "[levinwen]") {
  StringNet net(z2(), single_hexagon(0));
  std::ostringstream out;
  write_operator(out, net.build_BP(0), net.patch(), z2());
  std::string s = out.str();
  CHECK_THAT(s, ContainsSubstring("dimension 2\n"));
  CHECK_THAT(s, ContainsSubstring("state 1 edges"));
  CHECK_THAT(s, ContainsSubstring("row 0 0.5 0 0.5 0\n"));
}
