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

// Reference computations used by the tests and the acceptance binary. They
// avoid the library code paths they are compared against.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/honeycomb.hpp"

namespace oracle {

// Cyclic Jacobi rotations on a real symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, double eps = 1e-14, int max_sweeps = 100) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) < eps) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline int count_below(const std::vector<double>& ev, double cut) {
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [&](double v) { return v < cut; }));
}

// dim Hom(1, a_1 ... a_n) from the fusion rules.
inline int invariant_count(const fusionlw::CategoryData& cat, const std::vector<fusionlw::Label>& legs) {
  std::vector<long> v(static_cast<std::size_t>(cat.rank()), 0);
  v[static_cast<std::size_t>(cat.unit())] = 1;
  for (auto a : legs) {
    std::vector<long> next(v.size(), 0);
    for (int c = 0; c < cat.rank(); ++c)
      for (int d = 0; d < cat.rank(); ++d) next[static_cast<std::size_t>(d)] += v[static_cast<std::size_t>(c)] * cat.N(c, a, d);
    v = next;
  }
  return static_cast<int>(v[static_cast<std::size_t>(cat.unit())]);
}

// Number of admissible states: sum over all inner labelings of the product
// of vertex multiplicities.
inline long brute_force_state_count(const fusionlw::CategoryData& cat, const fusionlw::HoneycombPatch& patch) {
  std::vector<int> labels(patch.edges().size(), 0);
  std::vector<int> inner;
  for (std::size_t e = 0; e < patch.edges().size(); ++e) {
    if (patch.edges()[e].boundary)
      labels[e] = patch.edges()[e].label;
    else
      inner.push_back(static_cast<int>(e));
  }
  long total = 0;
  long configs = 1;
  for (std::size_t k = 0; k < inner.size(); ++k) configs *= cat.rank();
  for (long code = 0; code < configs; ++code) {
    long c = code;
    for (int e : inner) {
      labels[static_cast<std::size_t>(e)] = static_cast<int>(c % cat.rank());
      c /= cat.rank();
    }
    long m = 1;
    for (const auto& v : patch.vertices()) {
      auto t = v.triple();
      m *= cat.N(labels[static_cast<std::size_t>(t[0])], labels[static_cast<std::size_t>(t[1])],
                 labels[static_cast<std::size_t>(t[2])]);
      if (m == 0) break;
    }
    total += m;
  }
  return total;
}

}  // namespace oracle
