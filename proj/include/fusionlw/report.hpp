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

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace fusionlw {

struct VerificationReport {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string worst;  // index tuple where the residual was attained
  double millis = 0.0;
  std::vector<std::string> notes;
};

// Running maximum of residuals; the label of the worst case is only built
// when it improves.
class ResidualMax {
 public:
  template <class Describe>
  void add(double r, Describe&& describe) {
    if (r > value_ || (first_ && r >= value_)) {
      value_ = r;
      worst_ = describe();
      first_ = false;
    }
  }
  double value() const { return value_; }
  const std::string& worst() const { return worst_; }

 private:
  double value_ = 0.0;
  std::string worst_;
  bool first_ = true;
};

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline VerificationReport make_report(std::string name, const ResidualMax& r, double tol, const Stopwatch& sw) {
  VerificationReport rep;
  rep.name = std::move(name);
  rep.residual = r.value();
  rep.tolerance = tol;
  rep.passed = r.value() <= tol;
  rep.worst = r.worst();
  rep.millis = sw.millis();
  return rep;
}

inline std::string format_double(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline void print_text(std::ostream& out, const VerificationReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %s  residual=%.3e  tol=%.1e  worst=%s  (%.1f ms)", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.residual, r.tolerance, r.worst.empty() ? "-" : r.worst.c_str(),
                r.millis);
  out << line << "\n";
  for (const auto& n : r.notes) out << "    " << n << "\n";
}

// One key=value record per check. Timing is left out so that reruns with the
// same inputs produce identical output.
inline void print_record(std::ostream& out, const VerificationReport& r) {
  out << "record=check name=" << r.name << " pass=" << (r.passed ? "true" : "false")
      << " residual=" << format_double(r.residual) << " tol=" << format_double(r.tolerance)
      << " worst=" << (r.worst.empty() ? "-" : r.worst) << "\n";
  for (const auto& n : r.notes) out << "record=note check=" << r.name << " text=\"" << n << "\"\n";
}

}  // namespace fusionlw
