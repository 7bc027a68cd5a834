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

// Command-line front end. Exit status: 0 when every check passes, 1 when a
// check fails or a precondition refuses the run, 2 when an input cannot be
// loaded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fusionlw/category_io.hpp"
#include "fusionlw/gauge.hpp"
#include "fusionlw/honeycomb.hpp"
#include "fusionlw/levinwen.hpp"
#include "fusionlw/report.hpp"
#include "fusionlw/sixj.hpp"
#include "fusionlw/symmetrize.hpp"
#include "fusionlw/verify.hpp"

using namespace fusionlw;

namespace {

enum class Format { text, records };

struct RunConfig {
  std::string command;
  std::string category;
  std::string patch;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int restarts = 20;
  int iters = 500;
  std::string out;
  Format format = Format::text;
  bool allow_nonunitary = false;
};

class LoadFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Printer {
 public:
  Printer(std::ostream& out, Format f) : out_(out), format_(f) {}

  void report(const VerificationReport& r) {
    if (format_ == Format::text)
      print_text(out_, r);
    else
      print_record(out_, r);
  }

  // A named group of key=value pairs; text mode prints them on one line.
  void info(const std::string& kind, const std::vector<std::pair<std::string, std::string>>& fields) {
    if (format_ == Format::text) {
      out_ << kind << ":";
      for (const auto& [k, v] : fields) out_ << " " << k << "=" << v;
      out_ << "\n";
    } else {
      out_ << "record=" << kind;
      for (const auto& [k, v] : fields) out_ << " " << k << "=" << v;
      out_ << "\n";
    }
  }

  void summary(const std::string& command, int code) {
    if (format_ == Format::text)
      out_ << "result: " << (code == 0 ? "PASS" : "FAIL") << " (exit " << code << ")\n";
    else
      out_ << "record=summary command=" << command << " pass=" << (code == 0 ? "true" : "false") << " exit=" << code
           << "\n";
  }

 private:
  std::ostream& out_;
  Format format_;
};

CategoryData load_or_fail(const std::string& path) {
  if (path.empty()) throw LoadFailure("--category is required");
  try {
    return load_category(path);
  } catch (const std::exception& e) {
    throw LoadFailure(e.what());
  }
}

void describe_category(Printer& p, const CategoryData& cat) {
  p.info("category", {{"name", cat.name()},
                      {"rank", std::to_string(cat.rank())},
                      {"D2", format_double(total_dim_sq(cat), 12)},
                      {"D2_reading", "sum_s_dim(s)^2"}});
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw LoadFailure("cannot write '" + path + "'");
  return f;
}

int finish(Printer& p, const std::string& command, const std::vector<VerificationReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  int code = ok ? 0 : 1;
  p.summary(command, code);
  return code;
}

int refuse(Printer& p, const std::string& command, const CategoryData& cat, const VerificationReport& unitarity) {
  p.report(unitarity);
  p.info("refused", {{"reason", "non-unitary"},
                     {"category", cat.name()},
                     {"hint", "\"mirror conjugate symmetry needs unitary F; pass --allow-nonunitary to override\""}});
  p.summary(command, 1);
  return 1;
}

int cmd_validate(const RunConfig& cfg, Printer& p) {
  CategoryData cat = load_or_fail(cfg.category);
  describe_category(p, cat);
  std::vector<VerificationReport> reps;
  reps.push_back(check_pentagon(cat, cfg.tol.value_or(kStructuralTol)));
  reps.push_back(check_unitarity(cat, cfg.tol.value_or(kUnitarityTol)));
  reps.push_back(check_dim_consistency(cat, cfg.tol.value_or(kStructuralTol)));
  for (const auto& [q, inv] : cat.listed_inverses())
    reps.push_back(check_inverse_data(cat, inv, q, cfg.tol.value_or(kStructuralTol)));
  for (const auto& r : reps) p.report(r);
  return finish(p, "validate", reps);
}

int cmd_sixj(const RunConfig& cfg, Printer& p) {
  CategoryData cat = load_or_fail(cfg.category);
  describe_category(p, cat);
  auto unitary = check_unitarity(cat, cfg.tol.value_or(kUnitarityTol));
  if (!unitary.passed && !cfg.allow_nonunitary) return refuse(p, "sixj", cat, unitary);
  SixJTable plus = compute_plus(cat), minus = compute_minus(cat);
  if (!cfg.out.empty()) {
    auto f = open_out(cfg.out);
    write_table(f, cat, plus);
    write_table(f, cat, minus);
  }
  std::vector<VerificationReport> reps;
  reps.push_back(check_mirror_conjugate(cat, plus, minus, cfg.tol.value_or(kUnitarityTol)));
  reps.push_back(check_sixj_unitarity(cat, plus, cfg.tol.value_or(kUnitarityTol)));
  reps.push_back(check_sixj_unitarity(cat, minus, cfg.tol.value_or(kUnitarityTol)));
  reps.push_back(check_loop_identity(cat, plus, cfg.tol.value_or(kStructuralTol)));
  reps.push_back(check_tetrahedral(cat, plus, minus, cfg.tol.value_or(kStructuralTol)));
  for (const auto& r : reps) p.report(r);
  return finish(p, "sixj", reps);
}

int cmd_symmetrize(const RunConfig& cfg, Printer& p) {
  CategoryData cat = load_or_fail(cfg.category);
  describe_category(p, cat);
  bool is_e = true;
  try {
    identify_E(cat);
  } catch (const Error&) {
    is_e = false;
  }
  if (is_e) {
    auto w = e_obstruction(cat);
    p.info("obstruction", {{"residual", format_double(w.residual)},
                           {"lambda_re", format_double(w.lambda.real())},
                           {"lambda_im", format_double(w.lambda.imag())},
                           {"threshold", format_double(kObstructionThreshold)},
                           {"certified", w.certified ? "true" : "false"}});
  }
  GaugeSearchOptions opt;
  opt.restarts = cfg.restarts;
  opt.iterations = cfg.iters;
  opt.seed = cfg.seed;
  auto res = search_symmetric_gauge(cat, opt);
  p.info("search", {{"objective", format_double(res.objective)},
                    {"identity_objective", format_double(res.identity_objective)},
                    {"restarts", std::to_string(cfg.restarts)},
                    {"sweeps", std::to_string(res.iterations)},
                    {"evaluations", std::to_string(res.evaluations)},
                    {"parameters", std::to_string(res.parameters)},
                    {"seed", std::to_string(cfg.seed)},
                    {"converged", res.converged ? "true" : "false"}});
  for (std::size_t i = 0; i < res.restart_objectives.size(); ++i)
    p.info("restart", {{"index", std::to_string(i)}, {"objective", format_double(res.restart_objectives[i])}});
  if (!cfg.out.empty() && cfg.restarts > 0) {
    auto f = open_out(cfg.out);
    write_category(f, apply_gauge(cat, res.best));
  }
  p.summary("symmetrize", 0);
  return 0;
}

int cmd_levinwen(const RunConfig& cfg, Printer& p) {
  CategoryData cat = load_or_fail(cfg.category);
  if (cfg.patch.empty()) throw LoadFailure("--patch is required");
  HoneycombPatch patch;
  try {
    patch = load_patch(cfg.patch, cat);
  } catch (const std::exception& e) {
    throw LoadFailure(e.what());
  }
  describe_category(p, cat);
  auto unitary = check_unitarity(cat);
  if (!unitary.passed && !cfg.allow_nonunitary) return refuse(p, "levinwen", cat, unitary);
  StringNetOptions sopt;
  sopt.allow_nonunitary = true;
  StringNet net(cat, patch, sopt);
  p.info("patch", {{"name", patch.name},
                   {"edges", std::to_string(patch.edges().size())},
                   {"inner_edges", std::to_string(patch.inner_edges().size())},
                   {"vertices", std::to_string(patch.vertices().size())},
                   {"plaquettes", std::to_string(patch.plaquettes().size())},
                   {"states", std::to_string(net.admissible_basis().size())}});
  CertifyOptions copt;
  copt.tol = cfg.tol.value_or(kPlaquetteTol);
  auto cert = certify(net, copt);
  for (const auto& r : cert.reports) p.report(r);
  for (const auto& l : cert.spectrum.levels)
    p.info("level", {{"eigenvalue", format_double(l.value, 12)}, {"degeneracy", std::to_string(l.degeneracy)}});
  p.info("ground", {{"degeneracy", std::to_string(cert.spectrum.ground_degeneracy())},
                    {"tol", format_double(kPlaquetteTol)}});
  if (!cfg.out.empty()) {
    auto f = open_out(cfg.out);
    write_operator(f, {net.basis(), cert.hamiltonian}, patch, cat);
    write_spectrum(f, cert.spectrum);
  }
  return finish(p, "levinwen", cert.reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical fusion category checks, 6j-symbols and Levin-Wen plaquette operators"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string format = "text";
  auto common = [&](CLI::App* sub, bool with_tol = true) {
    sub->add_option("--category", cfg.category, "category file")->required();
    sub->add_option("--format", format, "output format: text (default) or records")
        ->check(CLI::IsMember({"text", "records"}));
    if (with_tol)
      sub->add_option("--tol", cfg.tol, "tolerance for every check of the command")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand(
      "validate", "pentagon (tol 1e-9), unitarity (1e-10), dimensions (1e-9) and listed inverses (1e-9)");
  common(validate);

  auto* sixj = app.add_subcommand(
      "sixj", "6j tables with mirror, unitarity (1e-10), loop-identity and tetrahedral (1e-9) checks");
  common(sixj);
  sixj->add_option("--out", cfg.out, "write both 6j tables to this file");
  sixj->add_flag("--allow-nonunitary", cfg.allow_nonunitary, "compute tables for non-unitary F-matrices");

  auto* symmetrize = app.add_subcommand("symmetrize", "obstruction witness and symmetric gauge search");
  common(symmetrize, false);
  symmetrize->add_option("--seed", cfg.seed, "random seed (default 1)");
  symmetrize->add_option("--restarts", cfg.restarts, "number of restarts (default 20)")->check(CLI::NonNegativeNumber);
  symmetrize->add_option("--iters", cfg.iters, "coordinate sweeps per restart (default 500)")
      ->check(CLI::NonNegativeNumber);
  symmetrize->add_option("--out", cfg.out, "write the best gauged category to this file");

  auto* levinwen = app.add_subcommand("levinwen", "plaquette operators and Hamiltonian certification (tol 1e-8)");
  common(levinwen);
  levinwen->add_option("--patch", cfg.patch, "patch file")->required();
  levinwen->add_option("--out", cfg.out, "write the Hamiltonian and its spectrum to this file");
  levinwen->add_flag("--allow-nonunitary", cfg.allow_nonunitary, "build operators for non-unitary F-matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.format = format == "records" ? Format::records : Format::text;
  Printer printer(std::cout, cfg.format);
  try {
    if (*validate) return cmd_validate(cfg, printer);
    if (*sixj) return cmd_sixj(cfg, printer);
    if (*symmetrize) return cmd_symmetrize(cfg, printer);
    return cmd_levinwen(cfg, printer);
  } catch (const LoadFailure& e) {
    std::cerr << "fusionlw: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fusionlw: " << e.what() << "\n";
    return 1;
  }
}
