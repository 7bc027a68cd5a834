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

// Vertex basis changes. A gauge assigns an invertible N x N matrix A^{ab}_c to
// every vertex space Hom(a b, c); the new basis vectors are A applied to the
// old ones. F-matrices transform as
//
//   F'[(z,g',d'),(y,a',b')] = sum A^{vw}_y[a',a] A^{uy}_x[b',b]
//                                 F[(z,g,d),(y,a,b)]
//                                 (A^{uv}_z)^-1[g,g'] (A^{zw}_x)^-1[d,d'].
//
// Vertices with the unit as one of the two inputs are frozen to the identity,
// which keeps the F-matrices with a unit leg equal to the identity.

#include <array>
#include <utility>
#include <vector>

#include "fusionlw/category.hpp"

namespace fusionlw {

class GaugeTransform {
 public:
  static GaugeTransform identity(const CategoryData& cat) {
    GaugeTransform g;
    g.rules_ = cat.rules();
    g.unit_ = cat.unit();
    const int n = cat.rank();
    g.m_.resize(static_cast<std::size_t>(n * n * n));
    for (Label a = 0; a < n; ++a)
      for (Label b = 0; b < n; ++b)
        for (Label c = 0; c < n; ++c) {
          int k = cat.N(a, b, c);
          g.m_[g.index(a, b, c)] = CMatrix::Identity(k, k);
        }
    return g;
  }

  bool frozen(Label a, Label b) const { return a == unit_ || b == unit_; }

  // Non-frozen vertex spaces with N >= 1, in (a,b,c) order.
  std::vector<std::array<Label, 3>> free_vertices() const {
    std::vector<std::array<Label, 3>> out;
    const int n = rules_.rank();
    for (Label a = 0; a < n; ++a)
      for (Label b = 0; b < n; ++b)
        for (Label c = 0; c < n; ++c)
          if (!frozen(a, b) && rules_(a, b, c) > 0) out.push_back({a, b, c});
    return out;
  }

  const CMatrix& at(Label a, Label b, Label c) const { return m_[index(a, b, c)]; }

  void set(Label a, Label b, Label c, const CMatrix& m) {
    int k = rules_(a, b, c);
    if (m.rows() != k || m.cols() != k)
      throw Error("gauge matrix has the wrong size for vertex space of dimension " + std::to_string(k));
    if (frozen(a, b)) {
      if (k > 0 && (m - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > 0.0)
        throw Error("gauge on a vertex with a unit input is frozen to the identity");
      return;
    }
    if (k > 0 && !Eigen::FullPivLU<CMatrix>(m).isInvertible()) throw Error("singular gauge matrix");
    m_[index(a, b, c)] = m;
  }

  GaugeTransform inverse() const {
    GaugeTransform g = *this;
    for (auto& m : g.m_)
      if (m.size() > 0) m = m.inverse().eval();
    return g;
  }

  const FusionRules& rules() const { return rules_; }

 private:
  FusionRules rules_;
  Label unit_ = 0;
  std::vector<CMatrix> m_;

  std::size_t index(Label a, Label b, Label c) const {
    const int n = rules_.rank();
    return static_cast<std::size_t>((a * n + b) * n + c);
  }
};

// Matrices L, R with F' = L * F * R for the block at q; ginv must be
// g.inverse(). Swapping the two gauges gives R^-1 and L^-1 instead, so the
// inverse matrix transforms as F'^-1 = R^-1 F^-1 L^-1 without a new solve.
inline std::pair<CMatrix, CMatrix> gauge_sides(const CategoryData& cat, const GaugeTransform& g,
                                               const GaugeTransform& ginv, Quad q) {
  const auto& rows = cat.rows(q);
  const auto& cols = cat.cols(q);
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix L = CMatrix::Zero(n, n), R = CMatrix::Zero(n, n);
  // L[r', r] = (A^{uv}_z)^-1[g, g'] (A^{zw}_x)^-1[d, d'] for matching z.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const TreeIndex& rp = rows[static_cast<std::size_t>(i)];
      const TreeIndex& r = rows[static_cast<std::size_t>(j)];
      if (rp.mid != r.mid) continue;
      L(i, j) = ginv.at(q.u, q.v, r.mid)(r.first, rp.first) * ginv.at(r.mid, q.w, q.x)(r.second, rp.second);
    }
  // R[c, c'] = A^{vw}_y[a', a] A^{uy}_x[b', b] for matching y.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const TreeIndex& c = cols[static_cast<std::size_t>(i)];
      const TreeIndex& cp = cols[static_cast<std::size_t>(j)];
      if (cp.mid != c.mid) continue;
      R(i, j) = g.at(q.v, q.w, c.mid)(cp.first, c.first) * g.at(q.u, c.mid, q.x)(cp.second, c.second);
    }
  return {L, R};
}

inline std::pair<CMatrix, CMatrix> gauge_sides(const CategoryData& cat, const GaugeTransform& g, Quad q) {
  return gauge_sides(cat, g, g.inverse(), q);
}

inline CategoryData apply_gauge(const CategoryData& cat, const GaugeTransform& g) {
  if (!(g.rules() == cat.rules())) throw Error("gauge does not match the category's fusion rules");
  CategorySpec spec = cat.spec();
  GaugeTransform ginv = g.inverse();
  const Label one = cat.unit();
  spec.f.clear();
  for (const Quad& q : cat.quads()) {
    if (q.u == one || q.v == one || q.w == one) continue;
    auto [L, R] = gauge_sides(cat, g, ginv, q);
    spec.f[q] = L * cat.F(q) * R;
  }
  for (auto& [q, inv] : spec.inverses) {
    auto [Li, Ri] = gauge_sides(cat, ginv, g, q);
    inv = (Ri * inv * Li).eval();
  }
  return CategoryData(std::move(spec));
}

}  // namespace fusionlw
