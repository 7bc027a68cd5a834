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

#include <string>

#include "fusionlw/category.hpp"
#include "fusionlw/report.hpp"

namespace fusionlw {

inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kUnitarityTol = 1e-10;

// Pentagon identity on Hom(((a b) c) d, e). Both sides map the basis of the
// fully right-associated tree a(b(cd)) -> e, labelled (k,kappa: cd->k),
// (h,lambda: bk->h), (sigma: ah->e), to the fully left-associated tree
// ((ab)c)d -> e, labelled (f,mu: ab->f), (g,nu: fc->g), (rho: gd->e):
//
//   sum_delta F^e_{abk}[(f,mu,delta),(h,lambda,sigma)] F^e_{fcd}[(g,nu,rho),(k,kappa,delta)]
//     = sum_{m,eps,zeta,theta} F^h_{bcd}[(m,eps,zeta),(k,kappa,lambda)]
//         F^e_{amd}[(g,theta,rho),(h,zeta,sigma)] F^g_{abc}[(f,mu,nu),(m,eps,theta)]
inline VerificationReport check_pentagon(const CategoryData& cat, double tol = kStructuralTol) {
  Stopwatch sw;
  ResidualMax res;
  const int n = cat.rank();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e) {
            double worst_here = 0.0;
            for (Label k = 0; k < n; ++k)
              for (int ka = 0; ka < cat.N(c, d, k); ++ka)
                for (Label h = 0; h < n; ++h)
                  for (int la = 0; la < cat.N(b, k, h); ++la)
                    for (int si = 0; si < cat.N(a, h, e); ++si)
                      for (Label f = 0; f < n; ++f)
                        for (int mu = 0; mu < cat.N(a, b, f); ++mu)
                          for (Label g = 0; g < n; ++g)
                            for (int nu = 0; nu < cat.N(f, c, g); ++nu)
                              for (int rho = 0; rho < cat.N(g, d, e); ++rho) {
                                cplx lhs = 0.0;
                                for (int dl = 0; dl < cat.N(f, k, e); ++dl)
                                  lhs += cat.F_entry({a, b, k, e}, {f, mu, dl}, {h, la, si}) *
                                         cat.F_entry({f, c, d, e}, {g, nu, rho}, {k, ka, dl});
                                cplx rhs = 0.0;
                                for (Label m = 0; m < n; ++m)
                                  for (int ep = 0; ep < cat.N(b, c, m); ++ep)
                                    for (int ze = 0; ze < cat.N(m, d, h); ++ze)
                                      for (int th = 0; th < cat.N(a, m, g); ++th)
                                        rhs += cat.F_entry({b, c, d, h}, {m, ep, ze}, {k, ka, la}) *
                                               cat.F_entry({a, m, d, e}, {g, th, rho}, {h, ze, si}) *
                                               cat.F_entry({a, b, c, g}, {f, mu, nu}, {m, ep, th});
                                worst_here = std::max(worst_here, std::abs(lhs - rhs));
                              }
            res.add(worst_here, [&] {
              return "(" + cat.label_name(a) + "," + cat.label_name(b) + "," + cat.label_name(c) + "," +
                     cat.label_name(d) + ";" + cat.label_name(e) + ")";
            });
          }
  return make_report("pentagon", res, tol, sw);
}

// max |M^dagger M - I| over all F-matrices. A note records the largest
// deviation of |det M| from 1.
inline VerificationReport check_unitarity(const CategoryData& cat, double tol = kUnitarityTol) {
  Stopwatch sw;
  ResidualMax res;
  double det_dev = 0.0;
  for (const Quad& q : cat.quads()) {
    const CMatrix& m = cat.F(q);
    CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    res.add((m.adjoint() * m - id).cwiseAbs().maxCoeff(), [&] { return quad_name(cat, q); });
    det_dev = std::max(det_dev, std::abs(std::abs(m.determinant()) - 1.0));
  }
  auto rep = make_report("unitarity", res, tol, sw);
  rep.notes.push_back("max | |det F| - 1 | = " + format_double(det_dev, 3));
  return rep;
}

inline VerificationReport check_inverse_data(const CategoryData& cat, const CMatrix& claimed, Quad key,
                                             double tol = kStructuralTol) {
  Stopwatch sw;
  const CMatrix& f = cat.F(key);
  if (claimed.rows() != f.rows() || claimed.cols() != f.cols())
    throw ShapeError("claimed inverse of F" + quad_name(cat, key) + " has the wrong shape", key);
  CMatrix id = CMatrix::Identity(f.rows(), f.cols());
  ResidualMax res;
  res.add((f * claimed - id).cwiseAbs().maxCoeff(), [&] { return "F*inv" + quad_name(cat, key); });
  res.add((claimed * f - id).cwiseAbs().maxCoeff(), [&] { return "inv*F" + quad_name(cat, key); });
  return make_report("inverse" + quad_name(cat, key), res, tol, sw);
}

// sum_t dim(t) N[s][f][t] = dim(s) dim(f) for all s, f, and
// sum_{s,t} dim(s) dim(t) N[s][t][f] = D^2 dim(f) for all f.
inline VerificationReport check_dim_consistency(const CategoryData& cat, double tol = kStructuralTol) {
  Stopwatch sw;
  ResidualMax res;
  const int n = cat.rank();
  double D2 = total_dim_sq(cat);
  for (Label s = 0; s < n; ++s)
    for (Label f = 0; f < n; ++f) {
      double lhs = 0.0;
      for (Label t = 0; t < n; ++t) lhs += cat.dim(t) * cat.N(s, f, t);
      res.add(std::abs(lhs - cat.dim(s) * cat.dim(f)),
              [&] { return "(" + cat.label_name(s) + "," + cat.label_name(f) + ")"; });
    }
  for (Label f = 0; f < n; ++f) {
    double lhs = 0.0;
    for (Label s = 0; s < n; ++s)
      for (Label t = 0; t < n; ++t) lhs += cat.dim(s) * cat.dim(t) * cat.N(s, t, f);
    res.add(std::abs(lhs - D2 * cat.dim(f)), [&] { return "D2*" + cat.label_name(f); });
  }
  return make_report("dims", res, tol, sw);
}

}  // namespace fusionlw
