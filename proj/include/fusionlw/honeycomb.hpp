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

// Trivalent patches of the honeycomb lattice. Every vertex is either a fusion
// vertex with slots (left_in, right_in, out) or a splitting vertex with slots
// (in, left_out, right_out); its state space is Hom(left right, out) or
// Hom(left_out right_out, in). A plaquette lists its six vertices in the order
//
//            UL ---- T ---- UR          roles   LL UL T UR LR B
//            /              \           kinds   f  s  f s  f  s
//          LL                LR
//            \              /
//             B -----------
//
// (the drawing is schematic: LL sits left, B at the bottom). The six inner
// edges run BL (B -> LL), L (LL -> UL), TL (UL -> T), TR (UR -> T),
// R (LR -> UR), BR (B -> LR), and each vertex carries one outer leg.
//
// Patch text format, one item per line, '#' starts a comment:
//
//   name hexagon
//   edge NAME inner
//   edge NAME boundary LABEL
//   vertex NAME fusion LEFT_IN RIGHT_IN OUT
//   vertex NAME split IN LEFT_OUT RIGHT_OUT
//   plaquette NAME LL UL T UR LR B
//
// Edge endpoints follow from the vertex lines.

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/category_io.hpp"

namespace fusionlw {

enum class VertexKind { fusion, split };

// Positions in Plaquette::inner.
enum InnerEdge { kBL = 0, kL, kTL, kTR, kR, kBR };
// Positions in Plaquette::vertices and Plaquette::legs.
enum PlaquetteRole { kLL = 0, kUL, kT, kUR, kLR, kB };

struct PatchEdge {
  std::string name;
  bool boundary = false;
  Label label = 0;  // fixed label of a boundary leg
};

struct PatchVertex {
  std::string name;
  VertexKind kind = VertexKind::fusion;
  std::array<int, 3> edges{};  // fusion: left_in right_in out; split: in left_out right_out

  // Edges as (left, right, total) so that the state space is Hom(left right, total).
  std::array<int, 3> triple() const {
    return kind == VertexKind::fusion ? edges : std::array<int, 3>{edges[1], edges[2], edges[0]};
  }
};

struct Plaquette {
  std::string name;
  std::array<int, 6> vertices{};
  std::array<int, 6> inner{};
  std::array<int, 6> legs{};
};

class HoneycombPatch {
 public:
  std::string name = "patch";

  const std::vector<PatchEdge>& edges() const { return edges_; }
  const std::vector<PatchVertex>& vertices() const { return vertices_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  int add_edge(const std::string& edge_name, bool boundary = false, Label label = 0) {
    if (find_edge(edge_name) >= 0) throw Error("duplicate edge '" + edge_name + "'");
    edges_.push_back({edge_name, boundary, label});
    return static_cast<int>(edges_.size()) - 1;
  }

  int add_vertex(const std::string& vertex_name, VertexKind kind, std::array<int, 3> slots) {
    if (find_vertex(vertex_name) >= 0) throw Error("duplicate vertex '" + vertex_name + "'");
    for (int e : slots)
      if (e < 0 || e >= static_cast<int>(edges_.size())) throw Error("vertex '" + vertex_name + "' uses an unknown edge");
    vertices_.push_back({vertex_name, kind, slots});
    return static_cast<int>(vertices_.size()) - 1;
  }

  // Vertices in the order LL UL T UR LR B; inner edges and legs are derived.
  int add_plaquette(const std::string& plaquette_name, std::array<int, 6> v) {
    auto fail = [&](const std::string& msg) { throw Error("plaquette '" + plaquette_name + "': " + msg); };
    static const VertexKind want[6] = {VertexKind::fusion, VertexKind::split, VertexKind::fusion,
                                       VertexKind::split,  VertexKind::fusion, VertexKind::split};
    static const char* role_name[6] = {"LL", "UL", "T", "UR", "LR", "B"};
    for (int r = 0; r < 6; ++r) {
      if (v[r] < 0 || v[r] >= static_cast<int>(vertices_.size())) fail("unknown vertex");
      if (vertices_[v[r]].kind != want[r])
        fail(std::string("vertex at ") + role_name[r] + " must be a " +
             (want[r] == VertexKind::fusion ? "fusion" : "split") + " vertex");
    }
    auto slot = [&](int role, int s) { return vertices_[v[role]].edges[s]; };
    auto link = [&](int a, int sa, int b, int sb, const char* what) {
      if (slot(a, sa) != slot(b, sb)) fail(std::string("edge ") + what + " does not close the hexagon");
      return slot(a, sa);
    };
    Plaquette p;
    p.name = plaquette_name;
    p.vertices = v;
    p.inner[kBL] = link(kB, 1, kLL, 1, "BL");
    p.inner[kL] = link(kLL, 2, kUL, 0, "L");
    p.inner[kTL] = link(kUL, 2, kT, 0, "TL");
    p.inner[kTR] = link(kUR, 1, kT, 1, "TR");
    p.inner[kR] = link(kLR, 2, kUR, 0, "R");
    p.inner[kBR] = link(kB, 2, kLR, 0, "BR");
    p.legs = {slot(kLL, 0), slot(kUL, 1), slot(kT, 2), slot(kUR, 2), slot(kLR, 1), slot(kB, 0)};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        if (i != j && p.inner[i] == p.inner[j]) fail("inner edges must be distinct");
        if (p.inner[i] == p.legs[j]) fail("an outer leg coincides with an inner edge");
      }
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (v[i] == v[j]) fail("vertices must be distinct");
    plaquettes_.push_back(p);
    return static_cast<int>(plaquettes_.size()) - 1;
  }

  int find_edge(const std::string& n) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].name == n) return static_cast<int>(i);
    return -1;
  }
  int find_vertex(const std::string& n) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i].name == n) return static_cast<int>(i);
    return -1;
  }
  int find_plaquette(const std::string& n) const {
    for (std::size_t i = 0; i < plaquettes_.size(); ++i)
      if (plaquettes_[i].name == n) return static_cast<int>(i);
    return -1;
  }

  std::vector<int> inner_edges() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!edges_[i].boundary) out.push_back(static_cast<int>(i));
    return out;
  }
  std::vector<int> boundary_edges() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].boundary) out.push_back(static_cast<int>(i));
    return out;
  }

  // Assigns labels to the boundary legs in edge order.
  void set_boundary_labels(const std::vector<Label>& labels) {
    auto b = boundary_edges();
    if (b.size() != labels.size())
      throw Error("patch has " + std::to_string(b.size()) + " boundary legs, got " + std::to_string(labels.size()) +
                  " labels");
    for (std::size_t i = 0; i < b.size(); ++i) edges_[static_cast<std::size_t>(b[i])].label = labels[i];
  }

  // Each inner edge leaves exactly one vertex and enters exactly one other;
  // each boundary leg touches exactly one vertex.
  void validate(const CategoryData* cat = nullptr) const {
    std::vector<int> outgoing(edges_.size(), 0), incoming(edges_.size(), 0);
    for (const auto& v : vertices_) {
      if (v.edges[0] == v.edges[1] || v.edges[0] == v.edges[2] || v.edges[1] == v.edges[2])
        throw Error("vertex '" + v.name + "' uses the same edge twice");
      if (v.kind == VertexKind::fusion) {
        ++incoming[static_cast<std::size_t>(v.edges[0])];
        ++incoming[static_cast<std::size_t>(v.edges[1])];
        ++outgoing[static_cast<std::size_t>(v.edges[2])];
      } else {
        ++incoming[static_cast<std::size_t>(v.edges[0])];
        ++outgoing[static_cast<std::size_t>(v.edges[1])];
        ++outgoing[static_cast<std::size_t>(v.edges[2])];
      }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ed = edges_[e];
      int total = incoming[e] + outgoing[e];
      if (ed.boundary) {
        if (total != 1) throw Error("boundary leg '" + ed.name + "' must touch exactly one vertex");
        if (cat && (ed.label < 0 || ed.label >= cat->rank()))
          throw Error("boundary leg '" + ed.name + "' carries a label outside the category");
      } else if (incoming[e] != 1 || outgoing[e] != 1) {
        throw Error("inner edge '" + ed.name + "' must run from one vertex into another");
      }
    }
  }

 private:
  std::vector<PatchEdge> edges_;
  std::vector<PatchVertex> vertices_;
  std::vector<Plaquette> plaquettes_;
};

inline HoneycombPatch parse_patch(std::istream& in, const std::string& source, const CategoryData& cat) {
  HoneycombPatch patch;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };
  auto edge = [&](const std::string& n) {
    int e = patch.find_edge(n);
    if (e < 0) fail("unknown edge '" + n + "'");
    return e;
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    auto hash = raw.find('#');
    auto words = detail::split_words(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (words.empty()) continue;
    const std::string& kw = words[0];
    try {
      if (kw == "name" && words.size() == 2) {
        patch.name = words[1];
      } else if (kw == "edge" && words.size() == 3 && words[2] == "inner") {
        patch.add_edge(words[1]);
      } else if (kw == "edge" && words.size() == 4 && words[2] == "boundary") {
        auto label = cat.find_label(words[3]);
        if (!label) fail("label '" + words[3] + "' is not in category " + cat.name());
        patch.add_edge(words[1], true, *label);
      } else if (kw == "vertex" && words.size() == 6 && (words[2] == "fusion" || words[2] == "split")) {
        patch.add_vertex(words[1], words[2] == "fusion" ? VertexKind::fusion : VertexKind::split,
                         {edge(words[3]), edge(words[4]), edge(words[5])});
      } else if (kw == "plaquette" && words.size() == 8) {
        std::array<int, 6> v{};
        for (int r = 0; r < 6; ++r) {
          v[r] = patch.find_vertex(words[static_cast<std::size_t>(r) + 2]);
          if (v[r] < 0) fail("unknown vertex '" + words[static_cast<std::size_t>(r) + 2] + "'");
        }
        patch.add_plaquette(words[1], v);
      } else {
        fail("cannot parse '" + detail::trim(raw) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  try {
    patch.validate(&cat);
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
  return patch;
}

inline HoneycombPatch load_patch(const std::string& path, const CategoryData& cat) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open patch file '" + path + "'");
  return parse_patch(in, path, cat);
}

inline void write_patch(std::ostream& out, const HoneycombPatch& patch, const CategoryData& cat) {
  out << "name " << patch.name << "\n";
  for (const auto& e : patch.edges()) {
    out << "edge " << e.name;
    if (e.boundary)
      out << " boundary " << cat.label_name(e.label) << "\n";
    else
      out << " inner\n";
  }
  for (const auto& v : patch.vertices()) {
    out << "vertex " << v.name << (v.kind == VertexKind::fusion ? " fusion" : " split");
    for (int e : v.edges) out << " " << patch.edges()[static_cast<std::size_t>(e)].name;
    out << "\n";
  }
  for (const auto& p : patch.plaquettes()) {
    out << "plaquette " << p.name;
    for (int v : p.vertices) out << " " << patch.vertices()[static_cast<std::size_t>(v)].name;
    out << "\n";
  }
}

// Patch of the honeycomb lattice made of the given cells. Fusion vertices
// A(i,j) = (r(i-1,j-1), l(i,j-1); v(i,j)) and splitting vertices
// B(i,j) = (v(i,j); l(i,j), r(i,j)); cell (i,j) is the hexagon
// A(i-1,j) B(i-1,j) A(i,j+1) B(i,j) A(i,j) B(i-1,j-1). With periods
// (nx, ny) > 0 the indices wrap around and the patch is a torus. Boundary
// legs start out carrying label 0.
inline HoneycombPatch honeycomb_cells(const std::vector<std::pair<int, int>>& cells, int nx = 0, int ny = 0,
                                      const std::string& patch_name = "honeycomb") {
  auto wrap = [](int a, int n) { return n > 0 ? ((a % n) + n) % n : a; };
  auto num = [](int a) { return a < 0 ? "m" + std::to_string(-a) : std::to_string(a); };
  auto tag = [&](const char* kind, int i, int j) {
    return std::string(kind) + num(wrap(i, nx)) + "_" + num(wrap(j, ny));
  };
  struct Vert {
    std::string name;
    VertexKind kind;
    std::array<std::string, 3> edges;
  };
  auto A = [&](int i, int j) {
    return Vert{tag("A", i, j), VertexKind::fusion, {tag("r", i - 1, j - 1), tag("l", i, j - 1), tag("v", i, j)}};
  };
  auto B = [&](int i, int j) {
    return Vert{tag("B", i, j), VertexKind::split, {tag("v", i, j), tag("l", i, j), tag("r", i, j)}};
  };
  std::vector<std::array<Vert, 6>> hexes;
  std::map<std::string, int> uses;
  std::vector<std::string> edge_order;
  std::vector<Vert> verts;
  for (auto [i, j] : cells) {
    hexes.push_back({A(i - 1, j), B(i - 1, j), A(i, j + 1), B(i, j), A(i, j), B(i - 1, j - 1)});
    for (const auto& v : hexes.back()) {
      bool seen = false;
      for (const auto& w : verts) seen = seen || w.name == v.name;
      if (seen) continue;
      verts.push_back(v);
      for (const auto& e : v.edges)
        if (uses[e]++ == 0) edge_order.push_back(e);
    }
  }
  HoneycombPatch patch;
  patch.name = patch_name;
  for (const auto& e : edge_order) patch.add_edge(e, uses[e] == 1, 0);
  for (const auto& v : verts)
    patch.add_vertex(v.name, v.kind,
                     {patch.find_edge(v.edges[0]), patch.find_edge(v.edges[1]), patch.find_edge(v.edges[2])});
  for (std::size_t k = 0; k < hexes.size(); ++k) {
    std::array<int, 6> ids{};
    for (int r = 0; r < 6; ++r) ids[r] = patch.find_vertex(hexes[k][r].name);
    auto [i, j] = cells[k];
    patch.add_plaquette(tag("P", i, j), ids);
  }
  patch.validate();
  return patch;
}

inline HoneycombPatch single_hexagon(Label leg = 0) {
  HoneycombPatch p = honeycomb_cells({{0, 0}}, 0, 0, "hexagon");
  p.set_boundary_labels(std::vector<Label>(6, leg));
  return p;
}

// Two hexagons sharing one edge, with eight boundary legs.
inline HoneycombPatch two_hexagons(const std::vector<Label>& legs) {
  HoneycombPatch p = honeycomb_cells({{0, 0}, {1, 0}}, 0, 0, "two_hexagons");
  p.set_boundary_labels(legs);
  return p;
}

inline HoneycombPatch honeycomb_torus(int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error("torus needs at least 2x2 cells");
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) cells.emplace_back(i, j);
  return honeycomb_cells(cells, nx, ny, "torus" + std::to_string(nx) + "x" + std::to_string(ny));
}

}  // namespace fusionlw
