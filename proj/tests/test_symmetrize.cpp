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

#include "fusionlw/category_io.hpp"
#include "fusionlw/symmetrize.hpp"
#include "fusionlw/verify.hpp"

using namespace fusionlw;
using Catch::Matchers::WithinAbs;

namespace {

std::string data(const std::string& name) { return std::string(FUSIONLW_DATA_DIR) + "/" + name; }

const CategoryData& e_raw() {
  static const CategoryData cat = load_category(data("E_raw.cat"));
  return cat;
}
const CategoryData& e_norm() {
  static const CategoryData cat = load_category(data("E_normalized.cat"));
  return cat;
}

}  // namespace

TEST_CASE("normalizing E_raw reproduces the unitary list", "[symmetrize]") {
  auto out = normalize_E(e_raw());
  double worst = 0.0;
  for (const Quad& q : e_norm().quads()) worst = std::max(worst, (out.F(q) - e_norm().F(q)).cwiseAbs().maxCoeff());
  CHECK(worst <= 1e-10);
  CHECK(check_unitarity(out).residual <= 1e-10);
  CHECK(check_pentagon(out).residual <= 1e-9);

  Label one = out.label("1"), x = out.label("x"), y = out.label("y");
  double d = 1.0 + std::sqrt(3.0);
  CHECK(std::abs(out.F(x, x, x, x)(0, 0) - 1.0 / d) < 1e-12);
  CHECK((out.F(x, x, x, one) - e_raw().F(x, x, x, one)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((out.F(x, y, x, x) - e_raw().F(x, y, x, x)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS(normalize_E(load_category(data("Z2.cat"))));
}

TEST_CASE("the analytic obstruction for E", "[symmetrize]") {
  auto w = e_obstruction(e_raw());
  Eigen::Matrix2cd m1, m2;
  const cplx i(0.0, 1.0);
  m1 << 1.0, 1.0, 1.0, -1.0;
  m2 << 1.0, -i, -i, 1.0;
  CHECK((w.m1 - m1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((w.m2 - m2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(w.residual >= 0.5);
  CHECK_THAT(w.residual, WithinAbs(std::sqrt(3.0) / 2.0, 1e-12));
  CHECK(std::abs(w.lambda - i / 2.0) < 1e-12);
  CHECK(w.certified);
  // The normalized basis only rescales the (x,x;x) vertex, so the witness is unchanged.
  CHECK_THAT(e_obstruction(e_norm()).residual, WithinAbs(w.residual, 1e-12));
  CHECK_THROWS(e_obstruction(load_category(data("Z2.cat"))));
}

TEST_CASE("proportionality residual is scale free", "[symmetrize]") {
  Eigen::Matrix2cd m1, m2;
  const cplx i(0.0, 1.0);
  m1 << 1.0, 1.0, 1.0, -1.0;
  m2 << 1.0, -i, -i, 1.0;
  CHECK(proportionality_witness(m1, m1).residual < 1e-15);
  auto twice = proportionality_witness(m1, 2.0 * m1);
  CHECK(twice.residual < 1e-15);
  CHECK(std::abs(twice.lambda - 0.5) < 1e-15);
  CHECK_FALSE(twice.certified);
  double base = proportionality_witness(m1, m2).residual;
  CHECK_THAT(proportionality_witness(cplx(3.0, -2.0) * m1, m2).residual, WithinAbs(base, 1e-12));
  CHECK_THAT(proportionality_witness(m1, cplx(0.0, 5.0) * m2).residual, WithinAbs(base, 1e-12));
}

TEST_CASE("tetrahedral objective at the identity gauge", "[symmetrize]") {
  // Reference values from an independent prototype.
  auto id_norm = GaugeTransform::identity(e_norm());
  CHECK_THAT(gauged_tetrahedral_objective(e_norm(), id_norm), WithinAbs(49.7979589711327, 1e-9));
  CHECK_THAT(gauged_tetrahedral_objective(e_raw(), GaugeTransform::identity(e_raw())),
             WithinAbs(82.72426644016255, 1e-9));
}

TEST_CASE("fast objective matches the full recomputation", "[symmetrize]") {
  detail::GaugeParams params(e_norm(), GaugeClass::block);
  detail::FastObjective fast(e_norm());
  CHECK(params.size() == 5 * 2 + 9);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 0.5);
  for (int t = 0; t < 4; ++t) {
    std::vector<double> p(static_cast<std::size_t>(params.size()));
    for (double& v : p) v = nd(rng);
    auto g = params.build(p);
    CHECK_THAT(fast(g), WithinAbs(gauged_tetrahedral_objective(e_norm(), g), 1e-9));
  }
  std::vector<double> zero(static_cast<std::size_t>(params.size()), 0.0);
  CHECK_THAT(fast(params.build(zero)), WithinAbs(49.7979589711327, 1e-9));
}

TEST_CASE("gauge search on Z2 finds zero at the identity", "[symmetrize]") {
  auto z2 = load_category(data("Z2.cat"));
  auto res = search_symmetric_gauge(z2, {});
  CHECK(res.identity_objective == 0.0);
  CHECK(res.objective == 0.0);
  CHECK(res.converged);
}

TEST_CASE("gauge search on E stays away from zero and is deterministic", "[symmetrize]") {
  GaugeSearchOptions opt;
  opt.restarts = 3;
  opt.iterations = 40;
  opt.seed = 11;
  auto a = search_symmetric_gauge(e_norm(), opt);
  auto b = search_symmetric_gauge(e_norm(), opt);
  CHECK(a.objective > 1e-3);
  CHECK(a.objective < a.identity_objective);
  CHECK(a.objective == b.objective);
  CHECK(a.restart_objectives == b.restart_objectives);
  // The reported gauge really attains the reported objective.
  CHECK_THAT(gauged_tetrahedral_objective(e_norm(), a.best), WithinAbs(a.objective, 1e-8));

  opt.gauge_class = GaugeClass::scalar;
  auto s = search_symmetric_gauge(e_norm(), opt);
  CHECK(s.parameters == 6 * 2);
  CHECK(s.objective > 1e-3);
}

TEST_CASE("no restarts reports the identity without convergence", "[symmetrize]") {
  GaugeSearchOptions opt;
  opt.restarts = 0;
  auto res = search_symmetric_gauge(e_norm(), opt);
  CHECK_FALSE(res.converged);
  CHECK(res.objective == res.identity_objective);
  CHECK(res.iterations == 0);
}
