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

// Reader for the line-oriented category format. Example:
//
//   name: Z2
//   provenance: group category of Z/2
//   [labels]
//   1 unit
//   e
//   [fusion]
//   e e 1 1
//   [dims]
//   e = 1
//   [fmatrix e e e e]
//   1
//
// Sections:
//   [constants]          name = expression, usable in later expressions
//   [labels]             one name per line; exactly one carries "unit"
//   [fusion]             a b c N; lines involving the unit are implied
//   [dims]               label = expression (the unit defaults to 1)
//   [fmatrix u v w x]    rows of comma separated complex expressions, rows
//                        indexed by (z,gamma,delta), columns by (y,alpha,beta),
//                        both sorted by label id (declaration order) and then
//                        by multiplicity index
//   [inverse u v w x]    optional listed inverse of the same F-matrix
// Blank lines and text after '#' are ignored.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fusionlw/category.hpp"
#include "fusionlw/complex_expr.hpp"

namespace fusionlw {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct MatrixDraft {
  Quad key;
  bool inverse = false;
  int line = 0;
  std::vector<std::vector<cplx>> rows;
};

}  // namespace detail

inline CategoryData parse_category(std::istream& in, const std::string& source = "<input>") {
  using detail::trim;
  CategorySpec spec;
  ConstantTable constants;
  std::vector<std::pair<std::string, int>> fusion_lines;  // deferred until labels are known
  std::vector<std::tuple<int, std::string, std::string>> dim_lines;
  std::vector<detail::MatrixDraft> matrices;
  std::string section;
  bool have_unit = false;
  int lineno = 0;

  auto fail = [&](const std::string& msg) -> void { throw ParseError(source, lineno, msg); };
  auto eval = [&](const std::string& text) {
    try {
      return evaluate_expression(text, constants);
    } catch (const ExprError& e) {
      throw ParseError(source, lineno, "bad expression '" + text + "': " + e.what());
    } catch (const std::exception& e) {
      throw ParseError(source, lineno, "bad expression '" + text + "'");
    }
  };
  auto find_label = [&](const std::string& name) -> Label {
    for (std::size_t i = 0; i < spec.labels.size(); ++i)
      if (spec.labels[i] == name) return static_cast<Label>(i);
    throw ParseError(source, lineno, "unknown label '" + name + "'");
  };

  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      auto words = detail::split_words(line.substr(1, line.size() - 2));
      if (words.empty()) fail("empty section header");
      section = words[0];
      if (section == "fmatrix" || section == "inverse") {
        if (words.size() != 5) fail("expected [" + section + " u v w x]");
        detail::MatrixDraft draft;
        draft.key = {find_label(words[1]), find_label(words[2]), find_label(words[3]), find_label(words[4])};
        draft.inverse = section == "inverse";
        draft.line = lineno;
        matrices.push_back(std::move(draft));
      } else if (section != "constants" && section != "labels" && section != "fusion" && section != "dims") {
        fail("unknown section [" + section + "]");
      } else if (words.size() != 1) {
        fail("section [" + section + "] takes no arguments");
      }
      continue;
    }
    if (section.empty()) {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'key: value' before the first section");
      std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
      if (key == "name")
        spec.name = value;
      else if (key == "provenance")
        spec.provenance = value;
      else
        fail("unknown header field '" + key + "'");
    } else if (section == "constants") {
      auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'name = expression'");
      std::string name = trim(line.substr(0, eq));
      if (name.empty()) fail("empty constant name");
      constants[name] = eval(line.substr(eq + 1));
    } else if (section == "labels") {
      auto words = detail::split_words(line);
      if (words.size() > 2 || (words.size() == 2 && words[1] != "unit")) fail("expected 'name [unit]'");
      for (auto& existing : spec.labels)
        if (existing == words[0]) fail("duplicate label '" + words[0] + "'");
      if (words.size() == 2) {
        if (have_unit) fail("more than one unit label");
        have_unit = true;
        spec.unit = static_cast<Label>(spec.labels.size());
      }
      spec.labels.push_back(words[0]);
    } else if (section == "fusion") {
      fusion_lines.emplace_back(line, lineno);
    } else if (section == "dims") {
      auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'label = expression'");
      dim_lines.emplace_back(lineno, trim(line.substr(0, eq)), line.substr(eq + 1));
    } else {
      auto& draft = matrices.back();
      std::vector<cplx> row;
      for (auto& cell : detail::split_on(line, ',')) {
        if (cell.empty()) fail("empty matrix entry");
        row.push_back(eval(cell));
      }
      if (!draft.rows.empty() && row.size() != draft.rows.front().size())
        fail("row has " + std::to_string(row.size()) + " entries, expected " +
             std::to_string(draft.rows.front().size()));
      draft.rows.push_back(std::move(row));
    }
  }

  if (spec.labels.empty()) throw ParseError(source, lineno, "no [labels] section");
  if (!have_unit) throw ParseError(source, lineno, "no label is marked as unit");
  const int n = static_cast<int>(spec.labels.size());
  spec.rules = FusionRules(n);
  for (Label a = 0; a < n; ++a) {
    spec.rules.set(spec.unit, a, a, 1);
    spec.rules.set(a, spec.unit, a, 1);
  }
  for (auto& [text, at] : fusion_lines) {
    lineno = at;
    auto words = detail::split_words(text);
    if (words.size() != 4) fail("expected 'a b c N'");
    Label a = find_label(words[0]), b = find_label(words[1]), c = find_label(words[2]);
    int mult = 0;
    try {
      std::size_t used = 0;
      mult = std::stoi(words[3], &used);
      if (used != words[3].size() || mult < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail("multiplicity must be a non-negative integer");
    }
    if ((a == spec.unit || b == spec.unit) && spec.rules(a, b, c) != mult)
      fail("fusion with the unit is fixed by the unit axiom");
    spec.rules.set(a, b, c, mult);
  }
  spec.dims.assign(static_cast<std::size_t>(n), 0.0);
  spec.dims[static_cast<std::size_t>(spec.unit)] = 1.0;
  for (auto& [at, name, text] : dim_lines) {
    lineno = at;
    cplx value = eval(text);
    if (std::abs(value.imag()) > 1e-12) fail("dimension must be real");
    spec.dims[static_cast<std::size_t>(find_label(name))] = value.real();
  }
  for (Label a = 0; a < n; ++a)
    if (spec.dims[static_cast<std::size_t>(a)] == 0.0) {
      lineno = dim_lines.empty() ? lineno : std::get<0>(dim_lines.back());
      fail("no dimension given for label '" + spec.labels[static_cast<std::size_t>(a)] + "'");
    }
  for (auto& draft : matrices) {
    lineno = draft.line;
    if (draft.rows.empty()) fail("matrix section has no rows");
    auto r = static_cast<Eigen::Index>(draft.rows.size());
    auto c = static_cast<Eigen::Index>(draft.rows.front().size());
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        m(i, j) = draft.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto& target = draft.inverse ? spec.inverses : spec.f;
    if (target.count(draft.key)) fail("duplicate matrix section");
    target[draft.key] = std::move(m);
  }
  try {
    return CategoryData(std::move(spec));
  } catch (const ShapeError& e) {
    int at = 0;
    for (auto& draft : matrices)
      if (draft.key == e.quad()) at = draft.line;
    throw ShapeError(source + ":" + std::to_string(at) + ": " + e.what(), e.quad());
  } catch (const MissingFMatrixError& e) {
    throw MissingFMatrixError(source + ": " + e.what(), e.quad());
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

inline CategoryData parse_category_string(const std::string& text, const std::string& source = "<string>") {
  std::istringstream in(text);
  return parse_category(in, source);
}

inline CategoryData load_category(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open category file " + path);
  return parse_category(in, path);
}

// Writes a category in the same format (17 significant digits per part).
inline void write_category(std::ostream& out, const CategoryData& cat) {
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  auto cnum = [&](cplx z) {
    if (z.imag() == 0.0) return num(z.real());
    return "(" + num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "*i)";
  };
  out << "name: " << cat.name() << "\n";
  if (!cat.provenance().empty()) out << "provenance: " << cat.provenance() << "\n";
  out << "[labels]\n";
  for (Label a = 0; a < cat.rank(); ++a)
    out << cat.label_name(a) << (a == cat.unit() ? " unit" : "") << "\n";
  out << "[fusion]\n";
  for (Label a = 0; a < cat.rank(); ++a)
    for (Label b = 0; b < cat.rank(); ++b)
      for (Label c = 0; c < cat.rank(); ++c)
        if (a != cat.unit() && b != cat.unit() && cat.N(a, b, c) > 0)
          out << cat.label_name(a) << " " << cat.label_name(b) << " " << cat.label_name(c) << " "
              << cat.N(a, b, c) << "\n";
  out << "[dims]\n";
  for (Label a = 0; a < cat.rank(); ++a)
    if (a != cat.unit()) out << cat.label_name(a) << " = " << num(cat.dim(a)) << "\n";
  for (const Quad& q : cat.quads()) {
    if (q.u == cat.unit() || q.v == cat.unit() || q.w == cat.unit()) continue;
    out << "[fmatrix " << cat.label_name(q.u) << " " << cat.label_name(q.v) << " " << cat.label_name(q.w)
        << " " << cat.label_name(q.x) << "]\n";
    const CMatrix& m = cat.F(q);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << cnum(m(i, j));
      out << "\n";
    }
  }
}

}  // namespace fusionlw
