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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/gauge.hpp"
#include "fusionlw/sixj.hpp"

namespace fusionlw {

// Label ids of the category E (x*x = 1 + 2x + y, x*y = y*x = x, y*y = 1).
struct ELabels {
  Label one, x, y;
};

inline ELabels identify_E(const CategoryData& cat) {
  auto fail = [&] { return Error("category " + cat.name() + " does not have the fusion rules of E"); };
  if (cat.rank() != 3) throw fail();
  ELabels e{cat.unit(), -1, -1};
  for (Label a = 0; a < 3; ++a)
    if (a != e.one) (cat.N(a, a, a) == 2 ? e.x : e.y) = a;
  if (e.x < 0 || e.y < 0) throw fail();
  FusionRules want(3);
  for (Label a = 0; a < 3; ++a) {
    want.set(e.one, a, a, 1);
    want.set(a, e.one, a, 1);
  }
  want.set(e.x, e.y, e.x, 1);
  want.set(e.y, e.x, e.x, 1);
  want.set(e.x, e.x, e.one, 1);
  want.set(e.x, e.x, e.x, 2);
  want.set(e.x, e.x, e.y, 1);
  want.set(e.y, e.y, e.one, 1);
  if (!(want == cat.rules())) throw fail();
  return e;
}

// Basis normalization of E: with d = dim(x) and v = sqrt(d), rescale the
// (x,x;x) vertices by sqrt(v) and the (x,x;1), (x,x;y) vertices by sqrt(2) d.
// The matching splitting vectors are the dual basis and follow implicitly.
inline GaugeTransform e_normalization_gauge(const CategoryData& raw) {
  ELabels e = identify_E(raw);
  const double d = raw.dim(e.x);
  if (std::abs(d - (1.0 + std::sqrt(3.0))) > 1e-9) throw Error("dim(x) is not 1+sqrt(3)");
  const double v = std::sqrt(d);
  auto g = GaugeTransform::identity(raw);
  g.set(e.x, e.x, e.x, std::sqrt(v) * CMatrix::Identity(2, 2));
  g.set(e.x, e.x, e.one, std::sqrt(2.0) * d * CMatrix::Identity(1, 1));
  g.set(e.x, e.x, e.y, std::sqrt(2.0) * d * CMatrix::Identity(1, 1));
  return g;
}

inline CategoryData normalize_E(const CategoryData& raw) {
  CategoryData out = apply_gauge(raw, e_normalization_gauge(raw));
  CategorySpec spec = out.spec();
  spec.name = raw.name() + "+normalized";
  return CategoryData(std::move(spec));
}

struct ObstructionWitness {
  Eigen::Matrix2cd m1, m2;  // each scaled so that its (0,0) entry is 1
  cplx lambda;              // best fit m1 ~ lambda * m2
  double residual = 0.0;    // ||m1 - lambda m2||_F / ||m1||_F
  bool certified = false;   // residual above the 0.1 threshold
};

inline constexpr double kObstructionThreshold = 0.1;

inline ObstructionWitness proportionality_witness(const Eigen::Matrix2cd& m1, const Eigen::Matrix2cd& m2) {
  ObstructionWitness w;
  w.m1 = m1;
  w.m2 = m2;
  cplx num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      num += std::conj(m2(i, j)) * m1(i, j);
      den += std::norm(m2(i, j));
    }
  w.lambda = den > 0.0 ? num / den : cplx(0.0);
  w.residual = (m1 - w.lambda * m2).norm() / m1.norm();
  w.certified = w.residual > kObstructionThreshold;
  return w;
}

// The two constraints on the (x,x;x) basis change that a symmetrized 6j-symbol
// would impose. Both come from (F^x_{xxx})^-1: the column through the (1)
// channel restricted to the x-channel rows gives m1, and the (1) row restricted
// to the x-channel columns gives m2. A symmetric basis needs m1 proportional to
// m2 (the free scalars absorb the vertex normalizations), so a positive
// residual is an obstruction.
inline ObstructionWitness e_obstruction(const CategoryData& cat) {
  ELabels e = identify_E(cat);
  Quad q{e.x, e.x, e.x, e.x};
  CMatrix inv = guarded_inverse(cat.F(q), quad_name(cat, q));
  int c1 = position_of(cat.rows(q), {e.one, 0, 0});
  int r1 = position_of(cat.cols(q), {e.one, 0, 0});
  Eigen::Matrix2cd m1, m2;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      m1(a, b) = inv(position_of(cat.cols(q), {e.x, a, b}), c1);
      m2(a, b) = inv(r1, position_of(cat.rows(q), {e.x, a, b}));
    }
  if (std::abs(m1(0, 0)) == 0.0 || std::abs(m2(0, 0)) == 0.0) throw Error("degenerate obstruction data");
  m1 /= m1(0, 0);
  m2 /= m2(0, 0);
  return proportionality_witness(m1, m2);
}

enum class GaugeClass { scalar, block };

struct GaugeSearchOptions {
  GaugeClass gauge_class = GaugeClass::block;
  int restarts = 20;
  int iterations = 500;  // coordinate sweeps per restart
  std::uint64_t seed = 1;
  double initial_step = 0.5;
  double min_step = 1e-9;
};

struct GaugeSearchResult {
  GaugeTransform best;
  double objective = 0.0;
  double identity_objective = 0.0;
  int iterations = 0;   // sweeps over all restarts
  long evaluations = 0;
  bool converged = false;  // the best restart stopped on the step criterion
  int parameters = 0;
  std::vector<double> restart_objectives;
};

namespace detail {

// Real coordinates of a gauge in the chosen class. One-dimensional vertex
// spaces get (log modulus, phase). Two-dimensional ones get either the same
// two numbers times the identity (scalar class) or U * diag(e^s1, e^s2) * V
// with U in U(2) (4 numbers) and V in SU(2) (3 numbers), which reaches every
// invertible 2x2 matrix.
class GaugeParams {
 public:
  GaugeParams(const CategoryData& cat, GaugeClass cls) : cls_(cls), base_(GaugeTransform::identity(cat)) {
    for (auto v : base_.free_vertices()) {
      int k = cat.N(v[0], v[1], v[2]);
      int width = 2;
      if (k == 2 && cls == GaugeClass::block) width = 9;
      if (k > 2 && cls == GaugeClass::block)
        throw Error("block gauge search supports multiplicities up to 2");
      slots_.push_back({v, k, offset_, width});
      offset_ += width;
    }
  }

  int size() const { return offset_; }

  GaugeTransform build(const std::vector<double>& p) const {
    GaugeTransform g = base_;
    for (const auto& s : slots_) {
      const double* q = p.data() + s.offset;
      if (s.width == 2) {
        g.set(s.v[0], s.v[1], s.v[2], std::exp(cplx(q[0], q[1])) * CMatrix::Identity(s.dim, s.dim));
      } else {
        g.set(s.v[0], s.v[1], s.v[2], unitary(q[0], q[1], q[2], q[3]) *
                                          Eigen::Vector2cd(std::exp(q[4]), std::exp(q[5])).asDiagonal() *
                                          unitary(0.0, q[6], q[7], q[8]));
      }
    }
    return g;
  }

 private:
  struct Slot {
    std::array<Label, 3> v;
    int dim, offset, width;
  };
  GaugeClass cls_;
  GaugeTransform base_;
  std::vector<Slot> slots_;
  int offset_ = 0;

  static CMatrix unitary(double phi, double theta, double psi, double chi) {
    CMatrix u(2, 2);
    u << std::cos(theta) * std::polar(1.0, psi), std::sin(theta) * std::polar(1.0, chi),
        -std::sin(theta) * std::polar(1.0, -chi), std::cos(theta) * std::polar(1.0, -psi);
    return std::polar(1.0, phi) * u;
  }
};

// Tetrahedral objective as a function of the gauge, with the (+)/(-) entries
// traced back to fixed positions of F and F^-1 once. A gauge then only needs
// F' = L F R and F'^-1 = R^-1 F^-1 L^-1 per block.
class FastObjective {
 public:
  explicit FastObjective(const CategoryData& cat) : cat_(cat) {
    quads_ = cat.quads();
    for (const Quad& q : quads_) {
      finv_.push_back(guarded_inverse(cat.F(q), quad_name(cat, q)));
      slot_[key(q)] = static_cast<int>(finv_.size()) - 1;
    }
    SixJTable plus(SixJSign::plus, cat.rules());
    plus.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx) {
      Term t;
      Quad qp{u, y, x, z};
      t.plus_block = slot_.at(key(qp));
      t.plus_row = position_of(cat.rows(qp), {w, a, g});
      t.plus_col = position_of(cat.cols(qp), {v, b, d});
      t.plus_scale = std::sqrt(cat.dim(y) * cat.dim(z) / (cat.dim(v) * cat.dim(w)));
      // Matching (-) entry {u v y(ba); w x z(gd)}_- = scale (F^z_{wyv})^-1[(x,b,g),(u,a,d)].
      Quad qm{w, y, v, z};
      auto it = slot_.find(key(qm));
      if (it != slot_.end()) {
        int r = position_of(cat.cols(qm), {x, b, g});
        int c = position_of(cat.rows(qm), {u, a, d});
        if (r >= 0 && c >= 0) {
          t.minus_block = it->second;
          t.minus_row = r;
          t.minus_col = c;
          t.minus_scale = std::sqrt(cat.dim(y) * cat.dim(z) / (cat.dim(u) * cat.dim(x)));
        }
      }
      terms_.push_back(t);
    });
  }

  double operator()(const GaugeTransform& g) const {
    GaugeTransform ginv = g.inverse();
    std::vector<CMatrix> f(quads_.size()), fi(quads_.size());
    for (std::size_t i = 0; i < quads_.size(); ++i) {
      auto [L, R] = gauge_sides(cat_, g, ginv, quads_[i]);
      auto [Ri, Li] = gauge_sides(cat_, ginv, g, quads_[i]);
      f[i] = L * cat_.F(quads_[i]) * R;
      fi[i] = Li * finv_[i] * Ri;
    }
    double s = 0.0;
    for (const Term& t : terms_) {
      cplx p = t.plus_scale * f[static_cast<std::size_t>(t.plus_block)](t.plus_row, t.plus_col);
      cplx m = t.minus_block < 0 ? cplx(0.0)
                                 : t.minus_scale * fi[static_cast<std::size_t>(t.minus_block)](t.minus_row, t.minus_col);
      s += std::norm(p - m);
    }
    return s;
  }

 private:
  struct Term {
    int plus_block = -1, plus_row = -1, plus_col = -1;
    int minus_block = -1, minus_row = -1, minus_col = -1;
    double plus_scale = 0.0, minus_scale = 0.0;
  };
  const CategoryData& cat_;
  std::vector<Quad> quads_;
  std::vector<CMatrix> finv_;
  std::map<long, int> slot_;
  std::vector<Term> terms_;

  long key(Quad q) const {
    const long n = cat_.rank();
    return ((q.u * n + q.v) * n + q.w) * n + q.x;
  }
};

}  // namespace detail

// Tetrahedral objective of the category after a gauge, via the full tables.
inline double gauged_tetrahedral_objective(const CategoryData& cat, const GaugeTransform& g) {
  CategoryData moved = apply_gauge(cat, g);
  return tetrahedral_objective(compute_plus(moved), compute_minus(moved));
}

// Multi-start coordinate search over the gauge class. Restart 0 starts at the
// identity, later ones at seeded random points. Each coordinate keeps its own
// step, doubled after a successful move and halved after a failed one; a
// restart stops when every step is below min_step or the sweep budget is used.
inline GaugeSearchResult search_symmetric_gauge(const CategoryData& cat, const GaugeSearchOptions& opt = {}) {
  detail::GaugeParams params(cat, opt.gauge_class);
  detail::FastObjective objective(cat);
  const int n = params.size();

  GaugeSearchResult result;
  result.parameters = n;
  result.best = GaugeTransform::identity(cat);
  result.identity_objective = objective(result.best);
  result.objective = result.identity_objective;
  result.converged = false;
  ++result.evaluations;
  if (opt.restarts <= 0) return result;

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> start(0.0, 0.7);
  double best = std::numeric_limits<double>::infinity();

  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    if (r > 0)
      for (double& v : p) v = start(rng);
    double fx = objective(params.build(p));
    ++result.evaluations;
    std::vector<double> step(static_cast<std::size_t>(n), opt.initial_step);
    bool stopped = fx == 0.0 || n == 0;
    int sweep = 0;
    for (; sweep < opt.iterations && !stopped; ++sweep) {
      for (int i = 0; i < n; ++i) {
        auto si = static_cast<std::size_t>(i);
        bool moved = false;
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = p;
          trial[si] += dir * step[si];
          double ft = objective(params.build(trial));
          ++result.evaluations;
          if (ft < fx) {
            p = std::move(trial);
            fx = ft;
            moved = true;
            break;
          }
        }
        step[si] = moved ? std::min(2.0 * step[si], 4.0) : 0.5 * step[si];
      }
      stopped = fx == 0.0 || step.empty() || *std::max_element(step.begin(), step.end()) < opt.min_step;
    }
    result.iterations += sweep;
    result.restart_objectives.push_back(fx);
    if (fx < best) {
      best = fx;
      result.best = params.build(p);
      result.objective = fx;
      result.converged = stopped;
    }
  }
  return result;
}

}  // namespace fusionlw
