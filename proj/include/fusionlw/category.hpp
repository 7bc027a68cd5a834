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
#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fusionlw {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Simple objects are dense integer ids 0..rank-1.
using Label = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problem with category data (unit axiom, duals, dims, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct Quad {
  Label u = 0, v = 0, w = 0, x = 0;
  auto operator<=>(const Quad&) const = default;
};

// One basis vector of a two-vertex tree. For a left tree ((u v) w) -> x this
// is (z, gamma, delta) with gamma in Hom(u v, z) and delta in Hom(z w, x); for
// a right tree (u (v w)) -> x it is (y, alpha, beta) with alpha in Hom(v w, y)
// and beta in Hom(u y, x).
struct TreeIndex {
  Label mid = 0;
  int first = 0;
  int second = 0;
  auto operator<=>(const TreeIndex&) const = default;
};

class FusionRules {
 public:
  FusionRules() = default;
  explicit FusionRules(int rank) : rank_(rank), n_(static_cast<std::size_t>(rank * rank * rank), 0) {}

  int rank() const { return rank_; }
  int operator()(Label a, Label b, Label c) const { return n_[index(a, b, c)]; }
  void set(Label a, Label b, Label c, int n) { n_[index(a, b, c)] = n; }

  int max_multiplicity() const {
    return n_.empty() ? 0 : *std::max_element(n_.begin(), n_.end());
  }

  bool operator==(const FusionRules&) const = default;

 private:
  int rank_ = 0;
  std::vector<int> n_;

  std::size_t index(Label a, Label b, Label c) const {
    return static_cast<std::size_t>((a * rank_ + b) * rank_ + c);
  }
};

// Basis of Hom((u v) w, x), ordered by (z, gamma, delta).
inline std::vector<TreeIndex> left_basis(const FusionRules& n, Quad q) {
  std::vector<TreeIndex> out;
  for (Label z = 0; z < n.rank(); ++z)
    for (int g = 0; g < n(q.u, q.v, z); ++g)
      for (int d = 0; d < n(z, q.w, q.x); ++d) out.push_back({z, g, d});
  return out;
}

// Basis of Hom(u (v w), x), ordered by (y, alpha, beta).
inline std::vector<TreeIndex> right_basis(const FusionRules& n, Quad q) {
  std::vector<TreeIndex> out;
  for (Label y = 0; y < n.rank(); ++y)
    for (int a = 0; a < n(q.v, q.w, y); ++a)
      for (int b = 0; b < n(q.u, y, q.x); ++b) out.push_back({y, a, b});
  return out;
}

inline int position_of(const std::vector<TreeIndex>& basis, TreeIndex t) {
  auto it = std::find(basis.begin(), basis.end(), t);
  return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

// Plain input record; CategoryData validates it on construction.
struct CategorySpec {
  std::string name;
  std::string provenance;
  std::vector<std::string> labels;
  Label unit = 0;
  FusionRules rules;
  std::vector<double> dims;
  // F-matrices keyed by (u,v,w;x). Rows are left_basis, columns right_basis.
  // Entries with the unit among u,v,w may be omitted and default to identity.
  std::map<Quad, CMatrix> f;
  // Optional inverse matrices listed alongside the data, kept for checking.
  std::map<Quad, CMatrix> inverses;
};

class CategoryData;
std::string quad_name(const CategoryData& cat, Quad q);

class ShapeError : public Error {
 public:
  ShapeError(const std::string& what, Quad q) : Error(what), quad_(q) {}
  Quad quad() const { return quad_; }

 private:
  Quad quad_;
};

class MissingFMatrixError : public Error {
 public:
  MissingFMatrixError(const std::string& what, Quad q) : Error(what), quad_(q) {}
  Quad quad() const { return quad_; }

 private:
  Quad quad_;
};

class CategoryData {
 public:
  explicit CategoryData(CategorySpec spec) : spec_(std::move(spec)) { validate(); }

  const std::string& name() const { return spec_.name; }
  const std::string& provenance() const { return spec_.provenance; }
  int rank() const { return spec_.rules.rank(); }
  Label unit() const { return spec_.unit; }
  const FusionRules& rules() const { return spec_.rules; }
  int N(Label a, Label b, Label c) const { return spec_.rules(a, b, c); }
  double dim(Label a) const { return spec_.dims[static_cast<std::size_t>(a)]; }
  const std::vector<double>& dims() const { return spec_.dims; }
  const std::string& label_name(Label a) const { return spec_.labels[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& label_names() const { return spec_.labels; }
  const CategorySpec& spec() const { return spec_; }

  std::optional<Label> find_label(const std::string& name) const {
    for (Label a = 0; a < rank(); ++a)
      if (spec_.labels[static_cast<std::size_t>(a)] == name) return a;
    return std::nullopt;
  }

  Label label(const std::string& name) const {
    if (auto a = find_label(name)) return *a;
    throw Error("unknown label '" + name + "' in category " + spec_.name);
  }

  bool admissible(Quad q) const { return !blocks_[qindex(q)].rows.empty(); }

  const CMatrix& F(Quad q) const { return block(q).m; }
  const CMatrix& F(Label u, Label v, Label w, Label x) const { return F({u, v, w, x}); }
  const std::vector<TreeIndex>& rows(Quad q) const { return block(q).rows; }
  const std::vector<TreeIndex>& cols(Quad q) const { return block(q).cols; }

  // Entry addressed by tree labels; zero when either tree is absent.
  cplx F_entry(Quad q, TreeIndex row, TreeIndex col) const {
    const Block& b = blocks_[qindex(q)];
    int r = position_of(b.rows, row), c = position_of(b.cols, col);
    return (r < 0 || c < 0) ? cplx(0.0) : b.m(r, c);
  }

  std::vector<Quad> quads() const {
    std::vector<Quad> out;
    const int n = rank();
    for (Label u = 0; u < n; ++u)
      for (Label v = 0; v < n; ++v)
        for (Label w = 0; w < n; ++w)
          for (Label x = 0; x < n; ++x)
            if (admissible({u, v, w, x})) out.push_back({u, v, w, x});
    return out;
  }

  const std::map<Quad, CMatrix>& listed_inverses() const { return spec_.inverses; }

  // Copy with one F-matrix replaced (same shape required).
  CategoryData with_F(Quad q, const CMatrix& m) const {
    CategorySpec s = spec_;
    s.f[q] = m;
    return CategoryData(std::move(s));
  }

  CategoryData with_dims(std::vector<double> dims) const {
    CategorySpec s = spec_;
    s.dims = std::move(dims);
    return CategoryData(std::move(s));
  }

 private:
  struct Block {
    std::vector<TreeIndex> rows, cols;
    CMatrix m;
  };

  CategorySpec spec_;
  std::vector<Block> blocks_;

  std::size_t qindex(Quad q) const {
    const int n = rank();
    return static_cast<std::size_t>(((q.u * n + q.v) * n + q.w) * n + q.x);
  }

  const Block& block(Quad q) const {
    const Block& b = blocks_[qindex(q)];
    if (b.rows.empty())
      throw Error("no F-matrix for inadmissible quadruple " + quad_name(*this, q));
    return b;
  }

  void validate();
};

inline std::string quad_name(const CategoryData& cat, Quad q) {
  return "(" + cat.label_name(q.u) + "," + cat.label_name(q.v) + "," + cat.label_name(q.w) + ";" +
         cat.label_name(q.x) + ")";
}

inline void CategoryData::validate() {
  const int n = spec_.rules.rank();
  const FusionRules& N = spec_.rules;
  if (n < 1) throw ValidationError("category has no labels");
  if (static_cast<int>(spec_.labels.size()) != n)
    throw ValidationError("label count does not match fusion rank");
  if (spec_.unit < 0 || spec_.unit >= n) throw ValidationError("unit label out of range");
  for (std::size_t i = 0; i < spec_.labels.size(); ++i)
    for (std::size_t j = i + 1; j < spec_.labels.size(); ++j)
      if (spec_.labels[i] == spec_.labels[j])
        throw ValidationError("duplicate label '" + spec_.labels[i] + "'");

  const Label one = spec_.unit;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b) {
      for (Label c = 0; c < n; ++c)
        if (N(a, b, c) < 0) throw ValidationError("negative fusion multiplicity");
      int expect = a == b ? 1 : 0;
      if (N(one, a, b) != expect || N(a, one, b) != expect)
        throw ValidationError("unit axiom violated for labels " + label_name(a) + ", " + label_name(b));
    }
  // Only self-dual simple objects are supported.
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b) {
      int expect = a == b ? 1 : 0;
      if (N(a, b, one) != expect)
        throw ValidationError("label " + label_name(a) +
                              (a == b ? " is not self-dual" : " has a dual other than itself"));
    }

  if (static_cast<int>(spec_.dims.size()) != n)
    throw ValidationError("dimension count does not match fusion rank");
  for (Label a = 0; a < n; ++a)
    if (!(dim(a) > 0.0) || !std::isfinite(dim(a)))
      throw ValidationError("dimension of " + label_name(a) + " must be positive");
  if (std::abs(dim(one) - 1.0) > 1e-12) throw ValidationError("dimension of the unit must be 1");

  blocks_.assign(static_cast<std::size_t>(n * n * n * n), Block{});
  // Shapes of all supplied matrices are checked before looking for gaps.
  for (auto& [q, m] : spec_.f) {
    if (q.u < 0 || q.v < 0 || q.w < 0 || q.x < 0 || q.u >= n || q.v >= n || q.w >= n || q.x >= n)
      throw ValidationError("F-matrix key out of range");
    auto size = static_cast<Eigen::Index>(left_basis(N, q).size());
    if (m.rows() != size || m.cols() != size)
      throw ShapeError("F-matrix " + quad_name(*this, q) + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(size) + "x" +
                           std::to_string(size),
                       q);
  }
  for (Label u = 0; u < n; ++u)
    for (Label v = 0; v < n; ++v)
      for (Label w = 0; w < n; ++w)
        for (Label x = 0; x < n; ++x) {
          Quad q{u, v, w, x};
          Block& b = blocks_[qindex(q)];
          b.rows = left_basis(N, q);
          b.cols = right_basis(N, q);
          auto it = spec_.f.find(q);
          if (b.rows.size() != b.cols.size())
            throw ValidationError("fusion rules are not associative at " + quad_name(*this, q));
          const auto size = static_cast<Eigen::Index>(b.rows.size());
          if (size == 0) continue;
          bool unit_leg = u == one || v == one || w == one;
          if (it == spec_.f.end()) {
            if (!unit_leg) throw MissingFMatrixError("missing F-matrix for " + quad_name(*this, q), q);
            b.m = CMatrix::Identity(size, size);
            continue;
          }
          const CMatrix& m = it->second;
          if (unit_leg && (m - CMatrix::Identity(size, size)).cwiseAbs().maxCoeff() > 1e-12)
            throw ValidationError("F-matrix " + quad_name(*this, q) +
                                  " has a unit leg and must be the identity");
          if (!Eigen::FullPivLU<CMatrix>(m).isInvertible())
            throw ValidationError("F-matrix " + quad_name(*this, q) + " is singular");
          b.m = m;
        }
  for (auto& [q, m] : spec_.inverses) {
    if (!admissible(q))
      throw ShapeError("inverse given for inadmissible quadruple " + quad_name(*this, q), q);
    auto size = static_cast<Eigen::Index>(rows(q).size());
    if (m.rows() != size || m.cols() != size)
      throw ShapeError("inverse of F" + quad_name(*this, q) + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(size) + "x" +
                           std::to_string(size),
                       q);
  }
}

inline int hom_dim(const CategoryData& cat, Label u, Label v, Label x) { return cat.N(u, v, x); }

// D^2, the sum of squared quantum dimensions.
inline double total_dim_sq(const CategoryData& cat) {
  double s = 0.0;
  for (double d : cat.dims()) s += d * d;
  return s;
}

// Perron-Frobenius dimensions from the fusion matrices. Used only to cross
// check the dimensions listed in data files.
inline std::vector<double> perron_frobenius_dims(const FusionRules& n) {
  std::vector<double> out;
  for (Label a = 0; a < n.rank(); ++a) {
    Eigen::MatrixXd m(n.rank(), n.rank());
    for (Label b = 0; b < n.rank(); ++b)
      for (Label c = 0; c < n.rank(); ++c) m(b, c) = n(a, b, c);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    double best = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      best = std::max(best, std::abs(es.eigenvalues()[i]));
    out.push_back(best);
  }
  return out;
}

}  // namespace fusionlw
