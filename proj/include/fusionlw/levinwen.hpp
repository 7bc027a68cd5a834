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

// Levin-Wen plaquette operators on honeycomb patches. States label every inner
// edge with a simple object and every vertex with a basis index of its
// Hom-space; boundary legs keep their fixed labels.
//
// The loop operator B^s_P fuses a loop s into the six inner edges of P. Its
// matrix element between S and S' is
//
//   <S'|B^s_P|S> = sqrt(prod e'/e) / s^3 * sum_eta prod_v T_v(eta)[mu'_v],
//
// where eta runs over the six fusion channels (e s; e') or (s e; e') on the
// inner edges and T_v is the local factor at vertex v. The primary evaluation
// writes each T_v as a closed 6j contraction; MoveEngine provides the same
// factors by explicit F-moves on strand diagrams. B_P = sum_s s/D^2 B^s_P has
// a third, global evaluation as a trace pairing of the two hexagon diagrams.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "fusionlw/diagram.hpp"
#include "fusionlw/honeycomb.hpp"
#include "fusionlw/report.hpp"
#include "fusionlw/sixj.hpp"
#include "fusionlw/verify.hpp"

namespace fusionlw {

inline constexpr double kPlaquetteTol = 1e-8;
inline constexpr double kDualTol = 1e-10;
inline constexpr int kFullSpaceMaxEdges = 8;
inline constexpr int kFullSpaceMaxDim = 4096;

struct StateLabeling {
  std::vector<Label> edges;  // every patch edge, boundary legs included
  std::vector<int> vertices;
  auto operator<=>(const StateLabeling&) const = default;
};

using StateBasis = std::vector<StateLabeling>;

struct PlaquetteOperator {
  std::shared_ptr<const StateBasis> basis;
  CMatrix matrix;
};

inline int vertex_space(const CategoryData& cat, const HoneycombPatch& patch, int v, const std::vector<Label>& edges) {
  auto t = patch.vertices()[static_cast<std::size_t>(v)].triple();
  return cat.N(edges[static_cast<std::size_t>(t[0])], edges[static_cast<std::size_t>(t[1])],
               edges[static_cast<std::size_t>(t[2])]);
}

inline bool is_admissible(const CategoryData& cat, const HoneycombPatch& patch, const StateLabeling& s) {
  for (std::size_t v = 0; v < patch.vertices().size(); ++v)
    if (s.vertices[v] >= vertex_space(cat, patch, static_cast<int>(v), s.edges)) return false;
  return true;
}

namespace detail {

inline std::vector<Label> boundary_template(const HoneycombPatch& patch) {
  std::vector<Label> e(patch.edges().size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (patch.edges()[i].boundary) e[i] = patch.edges()[i].label;
  return e;
}

// Calls fn for every vertex index tuple, lexicographically, with the given
// per-vertex ranges.
template <class Fn>
void for_each_index_tuple(const std::vector<int>& ranges, Fn&& fn) {
  std::vector<int> idx(ranges.size(), 0);
  for (int r : ranges)
    if (r <= 0) return;
  while (true) {
    fn(idx);
    int k = static_cast<int>(idx.size()) - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == ranges[static_cast<std::size_t>(k)]) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) return;
  }
}

}  // namespace detail

// Admissible states in lexicographic order of inner edge labels (edge id
// order, label id order) and then of vertex indices.
inline StateBasis enumerate_states(const HoneycombPatch& patch, const CategoryData& cat) {
  const auto inner = patch.inner_edges();
  const auto nv = patch.vertices().size();
  // Vertices are tested as soon as their last inner edge is assigned.
  std::vector<std::vector<int>> ready(inner.size() + 1);
  for (std::size_t v = 0; v < nv; ++v) {
    int last = 0;
    for (int e : patch.vertices()[v].edges) {
      auto pos = std::find(inner.begin(), inner.end(), e);
      if (pos != inner.end()) last = std::max(last, static_cast<int>(pos - inner.begin()) + 1);
    }
    ready[static_cast<std::size_t>(last)].push_back(static_cast<int>(v));
  }
  StateBasis out;
  std::vector<Label> edges = detail::boundary_template(patch);
  auto admissible_now = [&](std::size_t k) {
    for (int v : ready[k])
      if (vertex_space(cat, patch, v, edges) == 0) return false;
    return true;
  };
  if (!admissible_now(0)) return out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == inner.size()) {
      std::vector<int> ranges(nv);
      for (std::size_t v = 0; v < nv; ++v) ranges[v] = vertex_space(cat, patch, static_cast<int>(v), edges);
      detail::for_each_index_tuple(ranges, [&](const std::vector<int>& idx) { out.push_back({edges, idx}); });
      return;
    }
    for (Label a = 0; a < cat.rank(); ++a) {
      edges[static_cast<std::size_t>(inner[k])] = a;
      if (admissible_now(k + 1)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Every labeling of the inner edges with every vertex index below the
// largest multiplicity of the category, admissible or not.
inline StateBasis enumerate_full_space(const HoneycombPatch& patch, const CategoryData& cat) {
  const auto inner = patch.inner_edges();
  const int m = cat.rules().max_multiplicity();
  double dim = std::pow(static_cast<double>(cat.rank()), static_cast<double>(inner.size())) *
               std::pow(static_cast<double>(m), static_cast<double>(patch.vertices().size()));
  if (static_cast<int>(inner.size()) > kFullSpaceMaxEdges || dim > kFullSpaceMaxDim)
    throw Error("full tensor space of patch '" + patch.name + "' is too large (" +
                std::to_string(inner.size()) + " inner edges, dimension " + format_double(dim, 6) + ")");
  StateBasis out;
  std::vector<Label> edges = detail::boundary_template(patch);
  std::vector<int> edge_ranges(inner.size(), cat.rank());
  std::vector<int> vertex_ranges(patch.vertices().size(), m);
  detail::for_each_index_tuple(edge_ranges, [&](const std::vector<int>& labels) {
    for (std::size_t k = 0; k < inner.size(); ++k) edges[static_cast<std::size_t>(inner[k])] = labels[k];
    detail::for_each_index_tuple(vertex_ranges, [&](const std::vector<int>& idx) { out.push_back({edges, idx}); });
  });
  return out;
}

// Arguments of the local factor at one vertex of the plaquette. The vertex
// with role r sits between inner edges r and r+1 (mod 6) in the order
// BL L TL TR R BR; e1/e2 are their labels before the loop is fused in,
// e1p/e2p after, eta1/eta2 the fusion channels, mu the old vertex index.
struct VertexArgs {
  int role;
  Label s, leg, e1, e2, e1p, e2p;
  int eta1, eta2, mu;
};

// Returns the local factor as a vector over the new vertex index.
using VertexFactorFn = std::function<std::vector<cplx>(const VertexArgs&)>;

// New-index range of the vertex with the given role.
inline int vertex_out_range(const CategoryData& cat, const VertexArgs& a) {
  switch (a.role) {
    case kLL: return cat.N(a.leg, a.e1p, a.e2p);
    case kUL: return cat.N(a.leg, a.e2p, a.e1p);
    case kT: return cat.N(a.e1p, a.e2p, a.leg);
    case kUR: return cat.N(a.e1p, a.leg, a.e2p);
    case kLR: return cat.N(a.e2p, a.leg, a.e1p);
    default: return cat.N(a.e2p, a.e1p, a.leg);
  }
}

inline VertexFactorFn sixj_vertex_factors(const CategoryData& cat, const SixJTable& plus, const SixJTable& minus) {
  return [&cat, &plus, &minus](const VertexArgs& a) {
    std::vector<cplx> out(static_cast<std::size_t>(vertex_out_range(cat, a)), 0.0);
    const Label s = a.s, leg = a.leg, one = cat.unit();
    auto d = [&](Label x) { return cat.dim(x); };
    for (int k = 0; k < static_cast<int>(out.size()); ++k) {
      cplx v = 0.0;
      switch (a.role) {
        case kLL: {  // e1 = bl, e2 = l
          v = std::sqrt(d(s) * d(a.e2) / d(a.e2p)) *
              minus(a.e2, s, a.e1, leg, a.e1p, a.e2p, a.eta1, a.mu, k, a.eta2);
          break;
        }
        case kUL: {  // e1 = l, e2 = tl
          v = std::sqrt(d(s) * d(a.e1) / d(a.e1p)) *
              plus(leg, a.e2p, a.e2, a.e1, s, a.e1p, a.mu, a.eta2, a.eta1, k);
          break;
        }
        case kT: {  // e1 = tl, e2 = tr
          for (int b = 0; b < cat.N(s, a.e2, a.e2p); ++b)
            v += minus(one, a.e2, s, s, a.e2p, a.e2, a.eta2, 0, b, 0) *
                 plus(a.e1, a.e2, s, a.e1p, a.e2p, leg, a.eta1, b, k, a.mu);
          v *= std::sqrt(d(a.e1) * d(a.e2) / d(leg));
          break;
        }
        case kUR: {  // e1 = tr, e2 = r
          v = std::sqrt(d(s) * d(a.e2) / d(a.e2p)) *
              minus(a.e1p, leg, a.e1, s, a.e2, a.e2p, a.mu, a.eta1, a.eta2, k);
          break;
        }
        case kLR: {  // e1 = r, e2 = br
          v = std::sqrt(d(s) * d(a.e1) / d(a.e1p)) *
              plus(s, a.e1, a.e2, a.e2p, leg, a.e1p, a.eta2, a.mu, k, a.eta1);
          break;
        }
        default: {  // B: e1 = br, e2 = bl
          const Label bl = a.e2, br = a.e1, blp = a.e2p, brp = a.e1p;
          for (int g = 0; g < cat.N(blp, s, bl); ++g)
            v += plus(blp, brp, s, bl, br, leg, g, a.eta1, a.mu, k) * minus(blp, s, s, bl, one, bl, 0, a.eta2, 0, g);
          v *= std::sqrt(d(bl) * d(br) / d(leg));
          break;
        }
      }
      out[static_cast<std::size_t>(k)] = v;
    }
    return out;
  };
}

inline VertexFactorFn move_vertex_factors(const MoveEngine& engine) {
  return [&engine](const VertexArgs& a) {
    const Label s = a.s, leg = a.leg;
    switch (a.role) {
      case kLL: {
        auto D = engine.diagram({leg, a.e1p});
        D.split(1, a.e1, s, a.eta1).fuse(0, a.e2, a.mu).fuse(0, a.e2p, a.eta2);
        return D.fusion_coefficients();
      }
      case kUL: {
        auto D = engine.diagram({a.e1p});
        D.split(0, a.e1, s, a.eta1).split(0, leg, a.e2, a.mu).fuse(1, a.e2p, a.eta2);
        return D.splitting_coefficients();
      }
      case kT: {
        auto D = engine.diagram({a.e1p, a.e2p});
        D.split(0, a.e1, s, a.eta1).split(2, s, a.e2, a.eta2).cap(1).fuse(0, leg, a.mu);
        return D.fusion_coefficients();
      }
      case kUR: {
        auto D = engine.diagram({a.e2p});
        D.split(0, s, a.e2, a.eta2).split(1, a.e1, leg, a.mu).fuse(0, a.e1p, a.eta1);
        return D.splitting_coefficients();
      }
      case kLR: {
        auto D = engine.diagram({a.e2p, leg});
        D.split(0, s, a.e2, a.eta2).fuse(1, a.e1, a.mu).fuse(0, a.e1p, a.eta1);
        return D.fusion_coefficients();
      }
      default: {
        auto D = engine.diagram({leg});
        D.split(0, a.e2, a.e1, a.mu).cup(1, s).fuse(0, a.e2p, a.eta2).fuse(1, a.e1p, a.eta1);
        return D.splitting_coefficients();
      }
    }
  };
}

namespace detail {

// Groups state indices by everything outside the plaquette: all edge labels
// except the six inner ones and all vertex indices except the six around it.
inline std::vector<std::vector<int>> plaquette_sectors(const HoneycombPatch& patch, const StateBasis& basis, int p) {
  const Plaquette& pl = patch.plaquettes()[static_cast<std::size_t>(p)];
  std::vector<bool> inner_edge(patch.edges().size(), false), inner_vertex(patch.vertices().size(), false);
  for (int e : pl.inner) inner_edge[static_cast<std::size_t>(e)] = true;
  for (int v : pl.vertices) inner_vertex[static_cast<std::size_t>(v)] = true;
  std::map<std::vector<int>, std::vector<int>> groups;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<int> key;
    for (std::size_t e = 0; e < inner_edge.size(); ++e)
      if (!inner_edge[e]) key.push_back(basis[i].edges[e]);
    for (std::size_t v = 0; v < inner_vertex.size(); ++v)
      if (!inner_vertex[v]) key.push_back(basis[i].vertices[v]);
    groups[key].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> out;
  for (auto& [k, g] : groups) out.push_back(std::move(g));
  return out;
}

inline bool fuses_on_left(int k) { return k == kBL || k == kL || k == kTL; }

// Dense B^s_P on the admissible basis from the given vertex factors.
inline CMatrix loop_operator(const HoneycombPatch& patch, const CategoryData& cat, const StateBasis& basis, int p,
                             Label s, const VertexFactorFn& factor) {
  const Plaquette& pl = patch.plaquettes()[static_cast<std::size_t>(p)];
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix out = CMatrix::Zero(n, n);
  std::map<std::array<int, 11>, std::vector<cplx>> memo;
  auto cached = [&](const VertexArgs& a) -> const std::vector<cplx>& {
    std::array<int, 11> key{a.role, a.s, a.leg, a.e1, a.e2, a.e1p, a.e2p, a.eta1, a.eta2, a.mu, 0};
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, factor(a)).first;
    return it->second;
  };
  using Small = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
  const double ds3 = std::pow(cat.dim(s), 3);

  for (const auto& sector : plaquette_sectors(patch, basis, p)) {
    // Sub-sectors by inner edge labels.
    std::map<std::array<Label, 6>, std::vector<int>> by_labels;
    for (int i : sector) {
      std::array<Label, 6> e{};
      for (int k = 0; k < 6; ++k) e[k] = basis[static_cast<std::size_t>(i)].edges[static_cast<std::size_t>(pl.inner[k])];
      by_labels[e].push_back(i);
    }
    const StateLabeling& any = basis[static_cast<std::size_t>(sector.front())];
    std::array<Label, 6> leg{};
    for (int r = 0; r < 6; ++r) leg[r] = any.edges[static_cast<std::size_t>(pl.legs[r])];

    for (const auto& [E, from] : by_labels)
      for (const auto& [Ep, to] : by_labels) {
        std::array<int, 6> neta{};
        bool ok = true;
        double ratio = 1.0;
        for (int k = 0; k < 6; ++k) {
          neta[k] = fuses_on_left(k) ? cat.N(E[k], s, Ep[k]) : cat.N(s, E[k], Ep[k]);
          ok = ok && neta[k] > 0;
          ratio *= cat.dim(Ep[k]) / cat.dim(E[k]);
        }
        if (!ok) continue;
        const double pref = std::sqrt(ratio) / ds3;
        // fac[r][eta1][eta2][mu] -> vector over mu'
        std::array<std::vector<const std::vector<cplx>*>, 6> fac;
        std::array<int, 6> nmu{};
        for (int r = 0; r < 6; ++r) {
          const int k1 = r, k2 = (r + 1) % 6;
          nmu[r] = vertex_space(cat, patch, pl.vertices[r], basis[static_cast<std::size_t>(from.front())].edges);
          for (int a = 0; a < neta[k1]; ++a)
            for (int b = 0; b < neta[k2]; ++b)
              for (int mu = 0; mu < nmu[r]; ++mu)
                fac[r].push_back(&cached({r, s, leg[r], E[k1], E[k2], Ep[k1], Ep[k2], a, b, mu}));
        }
        for (int j : from) {
          const auto& sj = basis[static_cast<std::size_t>(j)];
          for (int i : to) {
            const auto& si = basis[static_cast<std::size_t>(i)];
            Small prod = Small::Identity(neta[0], neta[0]);
            for (int r = 0; r < 6; ++r) {
              const int k1 = r, k2 = (r + 1) % 6;
              const int mu = sj.vertices[static_cast<std::size_t>(pl.vertices[r])];
              const int mup = si.vertices[static_cast<std::size_t>(pl.vertices[r])];
              Small m(neta[k1], neta[k2]);
              for (int a = 0; a < neta[k1]; ++a)
                for (int b = 0; b < neta[k2]; ++b)
                  m(a, b) = (*fac[r][static_cast<std::size_t>((a * neta[k2] + b) * nmu[r] + mu)])[static_cast<std::size_t>(mup)];
              prod = (prod * m).eval();
            }
            out(i, j) = pref * prod.trace();
          }
        }
      }
  }
  return out;
}

}  // namespace detail

struct StringNetOptions {
  bool full_space = false;
  bool allow_nonunitary = false;
};

// A category on a patch together with its 6j tables and state basis.
class StringNet {
 public:
  StringNet(const CategoryData& cat, HoneycombPatch patch, StringNetOptions opt = {})
      : StringNet(cat, std::move(patch), compute_plus(cat), compute_minus(cat), opt) {}

  StringNet(const CategoryData& cat, HoneycombPatch patch, SixJTable plus, SixJTable minus,
            StringNetOptions opt = {})
      : cat_(cat), patch_(std::move(patch)), plus_(std::move(plus)), minus_(std::move(minus)), opt_(opt),
        engine_(cat) {
    if (!opt.allow_nonunitary) {
      auto u = check_unitarity(cat);
      if (!u.passed)
        throw Error("category " + cat.name() + " is not unitary (residual " + format_double(u.residual, 3) +
                    "); plaquette operators are only hermitian for unitary F-matrices");
    }
    patch_.validate(&cat);
    admissible_ = std::make_shared<const StateBasis>(enumerate_states(patch_, cat));
    if (opt.full_space) {
      full_ = std::make_shared<const StateBasis>(enumerate_full_space(patch_, cat));
      std::map<StateLabeling, int> where;
      for (std::size_t i = 0; i < full_->size(); ++i) where[(*full_)[i]] = static_cast<int>(i);
      for (const auto& st : *admissible_) embed_.push_back(where.at(st));
    }
  }

  const CategoryData& category() const { return cat_; }
  const HoneycombPatch& patch() const { return patch_; }
  const SixJTable& plus() const { return plus_; }
  const SixJTable& minus() const { return minus_; }
  bool full_space() const { return opt_.full_space; }
  const std::shared_ptr<const StateBasis>& basis() const { return opt_.full_space ? full_ : admissible_; }
  const StateBasis& admissible_basis() const { return *admissible_; }
  int plaquette_count() const { return static_cast<int>(patch_.plaquettes().size()); }

  PlaquetteOperator build_EI(int vertex) const {
    const auto& b = *basis();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(b.size()), static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i].vertices[static_cast<std::size_t>(vertex)] < vertex_space(cat_, patch_, vertex, b[i].edges))
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return {basis(), m};
  }

  // Loop operator from closed 6j contractions.
  PlaquetteOperator build_BsP(int p, Label s) const {
    return {basis(), embed(detail::loop_operator(patch_, cat_, *admissible_, p, s,
                                                 sixj_vertex_factors(cat_, plus_, minus_)))};
  }

  // Loop operator from explicit F-moves on strand diagrams.
  PlaquetteOperator build_BsP_moves(int p, Label s) const {
    return {basis(), embed(detail::loop_operator(patch_, cat_, *admissible_, p, s, move_vertex_factors(engine_)))};
  }

  PlaquetteOperator build_BP(int p) const {
    const double D2 = total_dim_sq(cat_);
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(admissible_->size()),
                              static_cast<Eigen::Index>(admissible_->size()));
    for (Label s = 0; s < cat_.rank(); ++s)
      m += cat_.dim(s) / D2 *
           detail::loop_operator(patch_, cat_, *admissible_, p, s, sixj_vertex_factors(cat_, plus_, minus_));
    return {basis(), embed(m)};
  }

  // B_P as the trace pairing tr(Phi(S')^dagger Phi(S)) / (D^2 sqrt(abcdef)) of
  // the diagrams Phi that grow the hexagon out of its six legs.
  PlaquetteOperator build_BP_trace(int p) const {
    const Plaquette& pl = patch_.plaquettes()[static_cast<std::size_t>(p)];
    const auto& b = *admissible_;
    const double D2 = total_dim_sq(cat_);
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(b.size()), static_cast<Eigen::Index>(b.size()));
    for (const auto& sector : detail::plaquette_sectors(patch_, b, p)) {
      std::vector<StrandDiagram> phi;
      std::array<Label, 6> a{};
      for (int r = 0; r < 6; ++r) a[r] = b[static_cast<std::size_t>(sector.front())].edges[static_cast<std::size_t>(pl.legs[r])];
      double legs = 1.0;
      for (Label x : a) legs *= cat_.dim(x);
      for (int i : sector) {
        const auto& st = b[static_cast<std::size_t>(i)];
        auto e = [&](int k) { return st.edges[static_cast<std::size_t>(pl.inner[k])]; };
        auto mu = [&](int r) { return st.vertices[static_cast<std::size_t>(pl.vertices[r])]; };
        auto D = engine_.diagram({a[kLL], a[kB], a[kLR]});
        D.split(1, e(kBL), e(kBR), mu(kB)).fuse(0, e(kL), mu(kLL)).fuse(1, e(kR), mu(kLR));
        D.split(0, a[kUL], e(kTL), mu(kUL)).split(2, e(kTR), a[kUR], mu(kUR)).fuse(1, a[kT], mu(kT));
        phi.push_back(std::move(D));
      }
      for (std::size_t x = 0; x < sector.size(); ++x)
        for (std::size_t y = 0; y < sector.size(); ++y)
          m(sector[x], sector[y]) = trace_pairing(phi[x], phi[y]) / (D2 * std::sqrt(legs));
    }
    return {basis(), embed(m)};
  }

  // Sum_P (1 - B_P), plus Sum_I (1 - E_I) in full-space mode.
  CMatrix hamiltonian(const std::vector<CMatrix>& bp) const {
    const auto n = static_cast<Eigen::Index>(basis()->size());
    CMatrix h = CMatrix::Zero(n, n);
    for (const auto& m : bp) h += CMatrix::Identity(n, n) - m;
    if (opt_.full_space)
      for (int v = 0; v < static_cast<int>(patch_.vertices().size()); ++v)
        h += CMatrix::Identity(n, n) - build_EI(v).matrix;
    return h;
  }

  PlaquetteOperator build_H() const {
    std::vector<CMatrix> bp;
    for (int p = 0; p < plaquette_count(); ++p) bp.push_back(build_BP(p).matrix);
    return {basis(), hamiltonian(bp)};
  }

 private:
  const CategoryData& cat_;
  HoneycombPatch patch_;
  SixJTable plus_, minus_;
  StringNetOptions opt_;
  MoveEngine engine_;
  std::shared_ptr<const StateBasis> admissible_, full_;
  std::vector<int> embed_;

  CMatrix embed(const CMatrix& m) const {
    if (!opt_.full_space) return m;
    const auto n = static_cast<Eigen::Index>(full_->size());
    CMatrix out = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < embed_.size(); ++i)
      for (std::size_t j = 0; j < embed_.size(); ++j)
        out(embed_[i], embed_[j]) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
  }
};

struct SpectrumLevel {
  double value;
  int degeneracy;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<SpectrumLevel> levels;
  int ground_degeneracy() const { return levels.empty() ? 0 : levels.front().degeneracy; }
};

// Levels group consecutive eigenvalues closer than tol.
inline Spectrum spectrum_from_eigenvalues(std::vector<double> ev, double tol = kPlaquetteTol) {
  std::sort(ev.begin(), ev.end());
  Spectrum sp;
  sp.eigenvalues = ev;
  for (double v : ev) {
    if (!sp.levels.empty() && v - sp.levels.back().value <= tol)
      ++sp.levels.back().degeneracy;
    else
      sp.levels.push_back({v, 1});
  }
  return sp;
}

// Eigenvalues of (H + H^dagger)/2.
inline Spectrum compute_spectrum(const CMatrix& h, double tol = kPlaquetteTol) {
  if (h.rows() == 0) return {};
  CMatrix herm = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return spectrum_from_eigenvalues(std::vector<double>(v.data(), v.data() + v.size()), tol);
}

struct CertifyOptions {
  double tol = kPlaquetteTol;
  bool dual_evaluation = true;  // compare 6j contraction against F-moves
  bool trace_route = true;      // compare B_P against the trace pairing
};

struct Certification {
  std::vector<VerificationReport> reports;
  std::vector<CMatrix> bp;
  CMatrix hamiltonian;
  Spectrum spectrum;
  bool passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
  }
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Certification certify(const StringNet& net, const CertifyOptions& opt = {}) {
  Certification c;
  const auto& patch = net.patch();
  const auto& cat = net.category();
  const int np = net.plaquette_count();
  auto pname = [&](int p) { return patch.plaquettes()[static_cast<std::size_t>(p)].name; };
  for (int p = 0; p < np; ++p) c.bp.push_back(net.build_BP(p).matrix);

  {
    Stopwatch sw;
    ResidualMax idem, herm, spec;
    for (int p = 0; p < np; ++p) {
      const CMatrix& b = c.bp[static_cast<std::size_t>(p)];
      idem.add(max_abs(b * b - b), [&] { return pname(p); });
      herm.add(max_abs(b - b.adjoint()), [&] { return pname(p); });
      for (double e : compute_spectrum(b).eigenvalues)
        spec.add(std::min(std::abs(e), std::abs(e - 1.0)), [&] { return pname(p); });
    }
    c.reports.push_back(make_report("projector(B_P)", idem, opt.tol, sw));
    c.reports.push_back(make_report("hermitian(B_P)", herm, opt.tol, sw));
    c.reports.push_back(make_report("spectrum(B_P)", spec, opt.tol, sw));
  }
  {
    Stopwatch sw;
    ResidualMax com;
    int pairs = 0;
    for (int p = 0; p < np; ++p)
      for (int q = p + 1; q < np; ++q, ++pairs) {
        const CMatrix& a = c.bp[static_cast<std::size_t>(p)];
        const CMatrix& b = c.bp[static_cast<std::size_t>(q)];
        com.add(max_abs(a * b - b * a), [&] { return pname(p) + "," + pname(q); });
      }
    auto rep = make_report("commute(B_P)", com, opt.tol, sw);
    rep.notes.push_back(std::to_string(pairs) + " plaquette pairs");
    c.reports.push_back(rep);
  }
  if (net.full_space()) {
    Stopwatch sw;
    ResidualMax com;
    for (int v = 0; v < static_cast<int>(patch.vertices().size()); ++v) {
      CMatrix e = net.build_EI(v).matrix;
      for (int p = 0; p < np; ++p) {
        const CMatrix& b = c.bp[static_cast<std::size_t>(p)];
        com.add(max_abs(b * e - e * b),
                [&] { return pname(p) + "," + patch.vertices()[static_cast<std::size_t>(v)].name; });
      }
    }
    c.reports.push_back(make_report("commute(B_P,E_I)", com, opt.tol, sw));
  }
  {
    Stopwatch sw;
    ResidualMax loc;
    const auto& b = *net.basis();
    for (int p = 0; p < np; ++p) {
      const Plaquette& pl = patch.plaquettes()[static_cast<std::size_t>(p)];
      std::vector<bool> inside_e(patch.edges().size(), false), inside_v(patch.vertices().size(), false);
      for (int e : pl.inner) inside_e[static_cast<std::size_t>(e)] = true;
      for (int v : pl.vertices) inside_v[static_cast<std::size_t>(v)] = true;
      const CMatrix& m = c.bp[static_cast<std::size_t>(p)];
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
          bool differs = false;
          for (std::size_t e = 0; e < inside_e.size() && !differs; ++e)
            differs = !inside_e[e] && b[i].edges[e] != b[j].edges[e];
          for (std::size_t v = 0; v < inside_v.size() && !differs; ++v)
            differs = !inside_v[v] && b[i].vertices[v] != b[j].vertices[v];
          if (differs)
            loc.add(std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))), [&] { return pname(p); });
        }
    }
    c.reports.push_back(make_report("locality(B_P)", loc, opt.tol, sw));
  }
  if (opt.dual_evaluation) {
    Stopwatch sw;
    ResidualMax dual;
    for (int p = 0; p < np; ++p)
      for (Label s = 0; s < cat.rank(); ++s)
        dual.add(max_abs(net.build_BsP(p, s).matrix - net.build_BsP_moves(p, s).matrix),
                 [&] { return pname(p) + ",s=" + cat.label_name(s); });
    c.reports.push_back(make_report("dual-evaluation(B^s_P)", dual, kDualTol, sw));
  }
  if (opt.trace_route) {
    Stopwatch sw;
    ResidualMax tr;
    for (int p = 0; p < np; ++p)
      tr.add(max_abs(c.bp[static_cast<std::size_t>(p)] - net.build_BP_trace(p).matrix), [&] { return pname(p); });
    c.reports.push_back(make_report("trace-route(B_P)", tr, kDualTol, sw));
  }
  c.hamiltonian = net.hamiltonian(c.bp);
  {
    Stopwatch sw;
    ResidualMax herm;
    herm.add(max_abs(c.hamiltonian - c.hamiltonian.adjoint()), [] { return std::string("H"); });
    c.reports.push_back(make_report("hermitian(H)", herm, opt.tol, sw));
  }
  c.spectrum = compute_spectrum(c.hamiltonian);
  return c;
}

// Operator dump: dimension, basis manifest over inner edges and vertices,
// then the matrix row by row as re/im pairs.
inline void write_operator(std::ostream& out, const PlaquetteOperator& op, const HoneycombPatch& patch,
                           const CategoryData& cat) {
  const auto& b = *op.basis;
  out << "dimension " << b.size() << "\n";
  const auto inner = patch.inner_edges();
  for (std::size_t i = 0; i < b.size(); ++i) {
    out << "state " << i << " edges";
    for (int e : inner)
      out << " " << patch.edges()[static_cast<std::size_t>(e)].name << "="
          << cat.label_name(b[i].edges[static_cast<std::size_t>(e)]);
    out << " vertices";
    for (std::size_t v = 0; v < b[i].vertices.size(); ++v)
      out << " " << patch.vertices()[v].name << "=" << b[i].vertices[v];
    out << "\n";
  }
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    out << "row " << i;
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j)
      out << " " << format_double(op.matrix(i, j).real()) << " " << format_double(op.matrix(i, j).imag());
    out << "\n";
  }
}

inline void write_spectrum(std::ostream& out, const Spectrum& sp) {
  out << "eigenvalues " << sp.eigenvalues.size() << "\n";
  for (const auto& l : sp.levels) out << "level " << format_double(l.value, 12) << " x" << l.degeneracy << "\n";
}

}  // namespace fusionlw
