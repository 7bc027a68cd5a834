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

// 6j-symbols built from F-matrices.
//
//   {u v y(ab); w x z(gd)}_+ = sqrt(y z)/sqrt(v w) F^z_{u y x}[(w,a,g),(v,b,d)]
//       a in Hom(u y, w), b in Hom(y x, v), g in Hom(w x, z), d in Hom(u v, z)
//   {u v y(ab); w x z(gd)}_- = sqrt(y z)/sqrt(u x) (F^z_{w y v})^-1[(x,a,g),(u,b,d)]
//       a in Hom(y v, x), b in Hom(w y, u), g in Hom(w x, z), d in Hom(u v, z)
//
// Bare labels in scalar positions stand for quantum dimensions. Each table is
// stored as one dense matrix per (u,v,w,x), columns (y,a,b), rows (z,g,d).

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/report.hpp"
#include "fusionlw/verify.hpp"

namespace fusionlw {

enum class SixJSign { plus, minus };

class SixJTable {
 public:
  struct Block {
    std::vector<TreeIndex> cols;  // (y, alpha, beta)
    std::vector<TreeIndex> rows;  // (z, gamma, delta)
    CMatrix m;
  };

  SixJTable(SixJSign sign, const FusionRules& rules) : sign_(sign), rules_(rules) {
    const int n = rules.rank();
    blocks_.resize(static_cast<std::size_t>(n * n * n * n));
    for (Label u = 0; u < n; ++u)
      for (Label v = 0; v < n; ++v)
        for (Label w = 0; w < n; ++w)
          for (Label x = 0; x < n; ++x) {
            Block& b = blocks_[index(u, v, w, x)];
            for (Label y = 0; y < n; ++y)
              for (int a = 0; a < alpha_range(u, v, y, w, x); ++a)
                for (int be = 0; be < beta_range(u, v, y, w, x); ++be) b.cols.push_back({y, a, be});
            for (Label z = 0; z < n; ++z)
              for (int g = 0; g < rules(w, x, z); ++g)
                for (int d = 0; d < rules(u, v, z); ++d) b.rows.push_back({z, g, d});
            b.m = CMatrix::Zero(static_cast<Eigen::Index>(b.rows.size()),
                                static_cast<Eigen::Index>(b.cols.size()));
          }
  }

  SixJSign sign() const { return sign_; }
  const FusionRules& rules() const { return rules_; }
  int rank() const { return rules_.rank(); }

  int alpha_range(Label u, Label v, Label y, Label w, Label x) const {
    return sign_ == SixJSign::plus ? rules_(u, y, w) : rules_(y, v, x);
  }
  int beta_range(Label u, Label v, Label y, Label w, Label x) const {
    return sign_ == SixJSign::plus ? rules_(y, x, v) : rules_(w, y, u);
  }

  const Block& block(Label u, Label v, Label w, Label x) const { return blocks_[index(u, v, w, x)]; }
  Block& block(Label u, Label v, Label w, Label x) { return blocks_[index(u, v, w, x)]; }

  // Zero outside the admissible index range.
  cplx operator()(Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d) const {
    const Block& blk = blocks_[index(u, v, w, x)];
    int r = position_of(blk.rows, {z, g, d});
    int c = position_of(blk.cols, {y, a, b});
    return (r < 0 || c < 0) ? cplx(0.0) : blk.m(r, c);
  }

  void set(Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx value) {
    Block& blk = blocks_[index(u, v, w, x)];
    int r = position_of(blk.rows, {z, g, d});
    int c = position_of(blk.cols, {y, a, b});
    if (r < 0 || c < 0) throw Error("6j index outside the admissible range");
    blk.m(r, c) = value;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    const int n = rank();
    for (Label u = 0; u < n; ++u)
      for (Label v = 0; v < n; ++v)
        for (Label w = 0; w < n; ++w)
          for (Label x = 0; x < n; ++x) {
            const Block& b = blocks_[index(u, v, w, x)];
            for (std::size_t i = 0; i < b.rows.size(); ++i)
              for (std::size_t j = 0; j < b.cols.size(); ++j) {
                const TreeIndex& r = b.rows[i];
                const TreeIndex& c = b.cols[j];
                fn(u, v, c.mid, w, x, r.mid, c.first, c.second, r.first, r.second,
                   b.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
              }
          }
  }

 private:
  SixJSign sign_;
  FusionRules rules_;
  std::vector<Block> blocks_;

  std::size_t index(Label u, Label v, Label w, Label x) const {
    const int n = rules_.rank();
    return static_cast<std::size_t>(((u * n + v) * n + w) * n + x);
  }
};

inline std::string sixj_name(const CategoryData& cat, Label u, Label v, Label y, Label w, Label x, Label z, int a,
                             int b, int g, int d) {
  auto nm = [&](Label l) { return cat.label_name(l); };
  return "{" + nm(u) + "," + nm(v) + "," + nm(y) + "(" + std::to_string(a) + std::to_string(b) + ");" + nm(w) +
         "," + nm(x) + "," + nm(z) + "(" + std::to_string(g) + std::to_string(d) + ")}";
}

// Inverse with a condition-number guard.
inline CMatrix guarded_inverse(const CMatrix& m, const std::string& what, double max_cond = 1e12) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax / smin > max_cond) throw Error("F-matrix " + what + " is numerically singular");
  return m.partialPivLu().inverse();
}

inline SixJTable compute_plus(const CategoryData& cat) {
  SixJTable t(SixJSign::plus, cat.rules());
  const int n = cat.rank();
  for (Label u = 0; u < n; ++u)
    for (Label v = 0; v < n; ++v)
      for (Label w = 0; w < n; ++w)
        for (Label x = 0; x < n; ++x) {
          auto& blk = t.block(u, v, w, x);
          if (blk.rows.size() != blk.cols.size())
            throw Error("6j block " + quad_name(cat, {u, v, w, x}) + " is not square");
          for (std::size_t i = 0; i < blk.rows.size(); ++i)
            for (std::size_t j = 0; j < blk.cols.size(); ++j) {
              const TreeIndex& r = blk.rows[i];  // (z, gamma, delta)
              const TreeIndex& c = blk.cols[j];  // (y, alpha, beta)
              Label y = c.mid, z = r.mid;
              double scale = std::sqrt(cat.dim(y) * cat.dim(z) / (cat.dim(v) * cat.dim(w)));
              blk.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                  scale * cat.F_entry({u, y, x, z}, {w, c.first, r.first}, {v, c.second, r.second});
            }
        }
  return t;
}

inline SixJTable compute_minus(const CategoryData& cat) {
  SixJTable t(SixJSign::minus, cat.rules());
  const int n = cat.rank();
  std::map<Quad, CMatrix> inv;
  for (const Quad& q : cat.quads()) inv[q] = guarded_inverse(cat.F(q), quad_name(cat, q));
  for (Label u = 0; u < n; ++u)
    for (Label v = 0; v < n; ++v)
      for (Label w = 0; w < n; ++w)
        for (Label x = 0; x < n; ++x) {
          auto& blk = t.block(u, v, w, x);
          if (blk.rows.size() != blk.cols.size())
            throw Error("6j block " + quad_name(cat, {u, v, w, x}) + " is not square");
          for (std::size_t i = 0; i < blk.rows.size(); ++i)
            for (std::size_t j = 0; j < blk.cols.size(); ++j) {
              const TreeIndex& r = blk.rows[i];
              const TreeIndex& c = blk.cols[j];
              Label y = c.mid, z = r.mid;
              Quad q{w, y, v, z};
              // Rows of F^-1 follow the right trees, columns the left trees.
              int ri = position_of(cat.cols(q), {x, c.first, r.first});
              int ci = position_of(cat.rows(q), {u, c.second, r.second});
              double scale = std::sqrt(cat.dim(y) * cat.dim(z) / (cat.dim(u) * cat.dim(x)));
              blk.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scale * inv.at(q)(ri, ci);
            }
        }
  return t;
}

// Associativity of splitting trees. Entry [(z,delta,gamma),(y,beta,alpha)]
// is conj(F[(z,gamma,delta),(y,alpha,beta)]): rows and columns keep the
// positions of F, with the two multiplicity indices of each tree swapped.
struct GMatrix {
  std::vector<TreeIndex> rows;  // (z, delta, gamma)
  std::vector<TreeIndex> cols;  // (y, beta, alpha)
  CMatrix m;
};
using GMatrixSet = std::map<Quad, GMatrix>;

inline GMatrixSet compute_G(const CategoryData& cat, double tol = kUnitarityTol) {
  auto rep = check_unitarity(cat, tol);
  if (!rep.passed)
    throw Error("G-matrices by conjugation need unitary F-matrices; " + cat.name() +
                " fails unitarity (residual " + format_double(rep.residual, 3) + " at " + rep.worst + ")");
  GMatrixSet out;
  for (const Quad& q : cat.quads()) {
    GMatrix g;
    for (auto t : cat.rows(q)) g.rows.push_back({t.mid, t.second, t.first});
    for (auto t : cat.cols(q)) g.cols.push_back({t.mid, t.second, t.first});
    g.m = cat.F(q).conjugate();
    out[q] = std::move(g);
  }
  return out;
}

// {w x y(ba); u v z(dg)}_- = conj {u v y(ab); w x z(gd)}_+
inline VerificationReport check_mirror_conjugate(const CategoryData& cat, const SixJTable& plus,
                                                 const SixJTable& minus, double tol = kUnitarityTol) {
  Stopwatch sw;
  ResidualMax res;
  plus.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx val) {
    cplx m = minus(w, x, y, u, v, z, b, a, d, g);
    res.add(std::abs(m - std::conj(val)), [&] { return sixj_name(cat, u, v, y, w, x, z, a, b, g, d); });
  });
  return make_report("mirror-conjugate", res, tol, sw);
}

inline VerificationReport check_sixj_unitarity(const CategoryData& cat, const SixJTable& table,
                                               double tol = kUnitarityTol) {
  Stopwatch sw;
  ResidualMax res;
  const int n = table.rank();
  for (Label u = 0; u < n; ++u)
    for (Label v = 0; v < n; ++v)
      for (Label w = 0; w < n; ++w)
        for (Label x = 0; x < n; ++x) {
          const CMatrix& m = table.block(u, v, w, x).m;
          if (m.size() == 0) continue;
          CMatrix id = CMatrix::Identity(m.cols(), m.cols());
          res.add((m.adjoint() * m - id).cwiseAbs().maxCoeff(), [&] { return quad_name(cat, {u, v, w, x}); });
        }
  return make_report(table.sign() == SixJSign::plus ? "6j-unitarity(+)" : "6j-unitarity(-)", res, tol, sw);
}

// C = dim(g') sum_{s,eta,eps} {g g s(eta eps); g' g' 1}_+ conj{g g s(eta eps); g' g' t(delta gamma)}_+
// The rows (1,0,0) and (t,delta,gamma) of the (+) block (g,g,g',g').
inline cplx loop_coefficient(const CategoryData& cat, const SixJTable& plus, Label g, Label gp, Label t, int gamma,
                             int delta) {
  const auto& blk = plus.block(g, g, gp, gp);
  int r1 = position_of(blk.rows, {cat.unit(), 0, 0});
  int rt = position_of(blk.rows, {t, delta, gamma});
  if (r1 < 0 || rt < 0) return 0.0;
  return cat.dim(gp) * std::conj(blk.m.row(r1).dot(blk.m.row(rt)));
}

inline VerificationReport check_loop_identity(const CategoryData& cat, const SixJTable& plus,
                                              double tol = kStructuralTol) {
  Stopwatch sw;
  ResidualMax res;
  const int n = cat.rank();
  for (Label g = 0; g < n; ++g)
    for (Label gp = 0; gp < n; ++gp)
      for (Label t = 0; t < n; ++t)
        for (int d = 0; d < cat.N(g, g, t); ++d)
          for (int ga = 0; ga < cat.N(gp, gp, t); ++ga) {
            cplx c = loop_coefficient(cat, plus, g, gp, t, ga, d);
            double expect = t == cat.unit() ? cat.dim(gp) : 0.0;
            res.add(std::abs(c - expect), [&] {
              return "(g=" + cat.label_name(g) + ",g'=" + cat.label_name(gp) + ",t=" + cat.label_name(t) + ";" +
                     std::to_string(ga) + std::to_string(d) + ")";
            });
          }
  return make_report("loop-identity", res, tol, sw);
}

// Sum of |{u v y(ab); w x z(gd)}_+ - {u v y(ba); w x z(gd)}_-|^2 over the
// (+) table: the squared distance from a symmetrized 6j-symbol.
inline double tetrahedral_objective(const SixJTable& plus, const SixJTable& minus) {
  double s = 0.0;
  plus.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx val) {
    s += std::norm(val - minus(u, v, y, w, x, z, b, a, g, d));
  });
  return s;
}

// (a) {u v y(ab); w x z(gd)}_+ = {u v y(ba); w x z(gd)}_- on all tuples;
// (b) on multiplicity-free tuples of the (+) table,
//     {uvy;wxz} = {vuy;xwz} = {xwy;vuz} = {yxw;uzv} sqrt(yz)/sqrt(vw).
inline VerificationReport check_tetrahedral(const CategoryData& cat, const SixJTable& plus, const SixJTable& minus,
                                            double tol = kStructuralTol, std::size_t max_listed = 12) {
  Stopwatch sw;
  ResidualMax res;
  std::size_t count_a = 0, count_b = 0;
  std::vector<std::string> listed;
  auto note = [&](const std::string& s) {
    if (listed.size() < max_listed) listed.push_back(s);
  };
  plus.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx val) {
    double r = std::abs(val - minus(u, v, y, w, x, z, b, a, g, d));
    auto name = [&] { return "(a)" + sixj_name(cat, u, v, y, w, x, z, a, b, g, d); };
    res.add(r, name);
    if (r > tol) {
      ++count_a;
      note(name() + " residual " + format_double(r, 3));
    }
  });
  auto single = [&](Label u, Label v, Label y, Label w, Label x, Label z) {
    return cat.N(u, y, w) == 1 && cat.N(y, x, v) == 1 && cat.N(w, x, z) == 1 && cat.N(u, v, z) == 1;
  };
  const int n = cat.rank();
  for (Label u = 0; u < n; ++u)
    for (Label v = 0; v < n; ++v)
      for (Label y = 0; y < n; ++y)
        for (Label w = 0; w < n; ++w)
          for (Label x = 0; x < n; ++x)
            for (Label z = 0; z < n; ++z) {
              if (!single(u, v, y, w, x, z)) continue;
              cplx base = plus(u, v, y, w, x, z, 0, 0, 0, 0);
              auto rel = [&](const char* which, bool ok, cplx other) {
                if (!ok) return;
                double r = std::abs(base - other);
                auto name = [&] { return std::string("(b:") + which + ")" + sixj_name(cat, u, v, y, w, x, z, 0, 0, 0, 0); };
                res.add(r, name);
                if (r > tol) {
                  ++count_b;
                  note(name() + " residual " + format_double(r, 3));
                }
              };
              rel("vuy;xwz", single(v, u, y, x, w, z), plus(v, u, y, x, w, z, 0, 0, 0, 0));
              rel("xwy;vuz", single(x, w, y, v, u, z), plus(x, w, y, v, u, z, 0, 0, 0, 0));
              rel("yxw;uzv", single(y, x, w, u, z, v),
                  plus(y, x, w, u, z, v, 0, 0, 0, 0) * std::sqrt(cat.dim(y) * cat.dim(z) / (cat.dim(v) * cat.dim(w))));
            }
  auto rep = make_report("tetrahedral", res, tol, sw);
  rep.notes.push_back("violations: (a) plus != minus " + std::to_string(count_a) + ", (b) generators " +
                      std::to_string(count_b));
  for (auto& s : listed) rep.notes.push_back(s);
  return rep;
}

// Structured dump: one line per entry, re/im at 17 significant digits.
inline void write_table(std::ostream& out, const CategoryData& cat, const SixJTable& t) {
  const char* sign = t.sign() == SixJSign::plus ? "+" : "-";
  t.for_each([&](Label u, Label v, Label y, Label w, Label x, Label z, int a, int b, int g, int d, cplx val) {
    out << "sixj" << sign << " " << cat.label_name(u) << " " << cat.label_name(v) << " " << cat.label_name(y) << " "
        << cat.label_name(w) << " " << cat.label_name(x) << " " << cat.label_name(z) << " " << a << " " << b << " "
        << g << " " << d << " " << format_double(val.real()) << " " << format_double(val.imag()) << "\n";
  });
}

}  // namespace fusionlw
