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

// Coefficient-level evaluation of planar strand diagrams built from fusion
// vertices, splitting vertices, cups and caps. A morphism f: X -> Y between
// tensor products of simple objects is stored, for every total charge c, as a
// matrix whose rows are the left-associated fusion trees of X -> c and whose
// columns are those of Y -> c. Trees start at the unit: node i carries the
// running charge c_i in Hom(c_{i-1} x_i, c_i) and its multiplicity index.
//
// Stacking a layer g on top of f multiplies on the right: M(g o f) = M(f) M(g).
// Fusing strands i, i+1 costs one F-move at node i; splitting a strand uses
// the inverse F-move with the sqrt(p q / w) weight of the dual splitting basis.
// This gives an evaluation route that never looks at 6j-symbols.

#include <map>
#include <utility>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/sixj.hpp"

namespace fusionlw {

class MoveEngine;

class StrandDiagram {
 public:
  using Tree = std::vector<std::pair<Label, int>>;

  StrandDiagram(const MoveEngine& engine, std::vector<Label> strands);

  // Fuse strands i and i+1 into w with basis vector mu of Hom(y_i y_{i+1}, w).
  StrandDiagram& fuse(int i, Label w, int mu);
  // Split strand i into (p, q) with splitting vector mu dual to Hom(p q, y_i).
  StrandDiagram& split(int i, Label p, Label q, int mu);
  // Create a pair (a, a) from nothing at position i.
  StrandDiagram& cup(int i, Label a);
  // Close strands i and i+1 (which must be equal) into nothing.
  StrandDiagram& cap(int i);

  const std::vector<Label>& domain() const { return x_; }
  const std::vector<Label>& codomain() const { return y_; }

  // For a diagram (p, q) -> (c): coefficients on the fusion basis of Hom(p q, c).
  std::vector<cplx> fusion_coefficients() const;
  // For a diagram (c) -> (p, q): coefficients on the splitting basis.
  std::vector<cplx> splitting_coefficients() const;

  // Value of a closed diagram (empty domain and codomain).
  cplx scalar() const;
  // Coefficient of the identity on a single strand x -> x.
  cplx strand_coefficient() const;

  // tr(f^dagger g) for two diagrams with the same domain and codomain.
  friend cplx trace_pairing(const StrandDiagram& f, const StrandDiagram& g);

 private:
  struct Block {
    std::vector<Tree> rows, cols;
    CMatrix m;
  };

  const MoveEngine* engine_;
  const CategoryData* cat_;
  std::vector<Label> x_, y_;
  std::map<Label, Block> blocks_;

  std::vector<Tree> trees(const std::vector<Label>& strands, Label c) const;
  template <class Layer>
  void stack(std::vector<Label> next, Layer&& layer);
  double tree_norm(const std::vector<Label>& strands, const Tree& t) const;
};

class MoveEngine {
 public:
  explicit MoveEngine(const CategoryData& cat) : cat_(cat) {
    for (const Quad& q : cat.quads()) inverse_[q] = guarded_inverse(cat.F(q), quad_name(cat, q));
  }

  const CategoryData& category() const { return cat_; }
  StrandDiagram diagram(std::vector<Label> strands) const { return StrandDiagram(*this, std::move(strands)); }

  // F^x_{uvw}[left, right] and (F^x_{uvw})^-1[right, left].
  cplx f(Quad q, TreeIndex left, TreeIndex right) const { return cat_.F_entry(q, left, right); }
  cplx finv(Quad q, TreeIndex right, TreeIndex left) const {
    auto it = inverse_.find(q);
    if (it == inverse_.end()) return 0.0;
    int r = position_of(cat_.cols(q), right), c = position_of(cat_.rows(q), left);
    return (r < 0 || c < 0) ? cplx(0.0) : it->second(r, c);
  }

 private:
  const CategoryData& cat_;
  std::map<Quad, CMatrix> inverse_;
};

inline StrandDiagram::StrandDiagram(const MoveEngine& engine, std::vector<Label> strands)
    : engine_(&engine), cat_(&engine.category()), x_(strands), y_(std::move(strands)) {
  for (Label c = 0; c < cat_->rank(); ++c) {
    auto t = trees(x_, c);
    if (t.empty()) continue;
    auto n = static_cast<Eigen::Index>(t.size());
    blocks_[c] = Block{t, t, CMatrix::Identity(n, n)};
  }
}

inline std::vector<StrandDiagram::Tree> StrandDiagram::trees(const std::vector<Label>& strands, Label c) const {
  std::vector<Tree> out;
  Tree acc;
  auto rec = [&](auto&& self, std::size_t i, Label prev) -> void {
    if (i == strands.size()) {
      if (prev == c) out.push_back(acc);
      return;
    }
    for (Label ci = 0; ci < cat_->rank(); ++ci)
      for (int m = 0; m < cat_->N(prev, strands[i], ci); ++m) {
        acc.emplace_back(ci, m);
        self(self, i + 1, ci);
        acc.pop_back();
      }
  };
  rec(rec, 0, cat_->unit());
  return out;
}

// layer(c, old_trees, new_trees, index_of_old) returns the matrix
// A[old][new] of the layer in charge sector c.
template <class Layer>
void StrandDiagram::stack(std::vector<Label> next, Layer&& layer) {
  std::map<Label, Block> out;
  for (auto& [c, blk] : blocks_) {
    auto fresh = trees(next, c);
    if (fresh.empty()) continue;
    std::map<Tree, int> old_index;
    for (std::size_t i = 0; i < blk.cols.size(); ++i) old_index[blk.cols[i]] = static_cast<int>(i);
    CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(blk.cols.size()), static_cast<Eigen::Index>(fresh.size()));
    for (std::size_t j = 0; j < fresh.size(); ++j)
      layer(fresh[j], [&](const Tree& old, cplx coeff) {
        auto it = old_index.find(old);
        if (it != old_index.end()) a(it->second, static_cast<Eigen::Index>(j)) += coeff;
      });
    out[c] = Block{blk.rows, fresh, blk.m * a};
  }
  blocks_ = std::move(out);
  y_ = std::move(next);
}

inline StrandDiagram& StrandDiagram::fuse(int i, Label w, int mu) {
  auto k = static_cast<std::size_t>(i);
  std::vector<Label> next(y_.begin(), y_.begin() + i);
  next.push_back(w);
  next.insert(next.end(), y_.begin() + i + 2, y_.end());
  Label yi = y_[k], yj = y_[k + 1];
  stack(std::move(next), [&](const Tree& t, auto&& emit) {
    Label prev = i > 0 ? t[k - 1].first : cat_->unit();
    auto [ci, beta] = t[k];
    Quad q{prev, yi, yj, ci};
    if (!cat_->admissible(q)) return;
    for (const TreeIndex& r : cat_->rows(q)) {
      cplx f = engine_->f(q, r, {w, mu, beta});
      if (f == cplx(0.0)) continue;
      Tree old(t.begin(), t.begin() + i);
      old.emplace_back(r.mid, r.first);
      old.emplace_back(ci, r.second);
      old.insert(old.end(), t.begin() + i + 1, t.end());
      emit(old, f);
    }
  });
  return *this;
}

inline StrandDiagram& StrandDiagram::split(int i, Label p, Label q, int mu) {
  auto k = static_cast<std::size_t>(i);
  Label w = y_[k];
  std::vector<Label> next(y_.begin(), y_.begin() + i);
  next.push_back(p);
  next.push_back(q);
  next.insert(next.end(), y_.begin() + i + 1, y_.end());
  const double weight = std::sqrt(cat_->dim(p) * cat_->dim(q) / cat_->dim(w));
  stack(std::move(next), [&](const Tree& t, auto&& emit) {
    Label prev = i > 0 ? t[k - 1].first : cat_->unit();
    auto [z, g] = t[k];
    auto [ci, d] = t[k + 1];
    Quad quad{prev, p, q, ci};
    for (int beta = 0; beta < cat_->N(prev, w, ci); ++beta) {
      cplx f = engine_->finv(quad, {w, mu, beta}, {z, g, d}) * weight;
      if (f == cplx(0.0)) continue;
      Tree old(t.begin(), t.begin() + i);
      old.emplace_back(ci, beta);
      old.insert(old.end(), t.begin() + i + 2, t.end());
      emit(old, f);
    }
  });
  return *this;
}

inline StrandDiagram& StrandDiagram::cup(int i, Label a) {
  auto k = static_cast<std::size_t>(i);
  std::vector<Label> next(y_.begin(), y_.begin() + i);
  next.push_back(cat_->unit());
  next.insert(next.end(), y_.begin() + i, y_.end());
  stack(std::move(next), [&](const Tree& t, auto&& emit) {
    Tree old(t.begin(), t.begin() + i);
    old.insert(old.end(), t.begin() + i + 1, t.end());
    (void)k;
    emit(old, 1.0);
  });
  return split(i, a, a, 0);
}

inline StrandDiagram& StrandDiagram::cap(int i) {
  auto k = static_cast<std::size_t>(i);
  if (y_[k] != y_[k + 1]) throw Error("cap needs two equal strands");
  fuse(i, cat_->unit(), 0);
  std::vector<Label> next(y_.begin(), y_.begin() + i);
  next.insert(next.end(), y_.begin() + i + 1, y_.end());
  stack(std::move(next), [&](const Tree& t, auto&& emit) {
    Label prev = i > 0 ? t[k - 1].first : cat_->unit();
    Tree old(t.begin(), t.begin() + i);
    old.emplace_back(prev, 0);
    old.insert(old.end(), t.begin() + i, t.end());
    emit(old, 1.0);
  });
  return *this;
}

inline std::vector<cplx> StrandDiagram::fusion_coefficients() const {
  if (x_.size() != 2 || y_.size() != 1) throw Error("fusion coefficients need a diagram (p q) -> (c)");
  Label p = x_[0], q = x_[1], c = y_[0];
  std::vector<cplx> out(static_cast<std::size_t>(cat_->N(p, q, c)), 0.0);
  auto it = blocks_.find(c);
  if (it == blocks_.end()) return out;
  for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
    const Tree& t = it->second.rows[i];
    out[static_cast<std::size_t>(t[1].second)] = it->second.m(static_cast<Eigen::Index>(i), 0);
  }
  return out;
}

inline std::vector<cplx> StrandDiagram::splitting_coefficients() const {
  if (x_.size() != 1 || y_.size() != 2) throw Error("splitting coefficients need a diagram (c) -> (p q)");
  Label c = x_[0], p = y_[0], q = y_[1];
  std::vector<cplx> out(static_cast<std::size_t>(cat_->N(p, q, c)), 0.0);
  auto it = blocks_.find(c);
  if (it == blocks_.end()) return out;
  const double weight = std::sqrt(cat_->dim(p) * cat_->dim(q) / cat_->dim(c));
  for (std::size_t j = 0; j < it->second.cols.size(); ++j) {
    const Tree& t = it->second.cols[j];
    out[static_cast<std::size_t>(t[1].second)] = it->second.m(0, static_cast<Eigen::Index>(j)) / weight;
  }
  return out;
}

inline cplx StrandDiagram::scalar() const {
  if (!x_.empty() || !y_.empty()) throw Error("scalar needs a closed diagram");
  auto it = blocks_.find(cat_->unit());
  return it == blocks_.end() ? cplx(0.0) : it->second.m(0, 0);
}

inline cplx StrandDiagram::strand_coefficient() const {
  if (x_.size() != 1 || y_ != x_) throw Error("strand coefficient needs a diagram x -> x");
  auto it = blocks_.find(x_[0]);
  return it == blocks_.end() ? cplx(0.0) : it->second.m(0, 0);
}

inline double StrandDiagram::tree_norm(const std::vector<Label>& strands, const Tree& t) const {
  double n = 1.0;
  Label prev = cat_->unit();
  for (std::size_t i = 0; i < strands.size(); ++i) {
    n *= std::sqrt(cat_->dim(prev) * cat_->dim(strands[i]) / cat_->dim(t[i].first));
    prev = t[i].first;
  }
  return n;
}

inline cplx trace_pairing(const StrandDiagram& f, const StrandDiagram& g) {
  if (f.x_ != g.x_ || f.y_ != g.y_) throw Error("trace pairing needs diagrams with equal boundaries");
  cplx total = 0.0;
  for (auto& [c, bf] : f.blocks_) {
    auto it = g.blocks_.find(c);
    if (it == g.blocks_.end()) continue;
    const auto& bg = it->second;
    for (std::size_t i = 0; i < bf.rows.size(); ++i)
      for (std::size_t j = 0; j < bf.cols.size(); ++j) {
        auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        total += f.cat_->dim(c) * std::conj(bf.m(ii, jj)) * bg.m(ii, jj) * f.tree_norm(f.x_, bf.rows[i]) /
                 f.tree_norm(f.y_, bf.cols[j]);
      }
  }
  return total;
}

}  // namespace fusionlw
