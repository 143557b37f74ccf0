// Copyright 2026 The correq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "correq/lp_io.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace correq {
namespace {

std::string Num(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// "+ 2.5 x3" / "- 1 x0" term lists, duplicates merged by variable. An empty
// list is written as "+ 0 x0" to keep the grammar uniform.
void AppendTerms(std::ostringstream* out,
                 const std::vector<std::pair<int, double>>& terms) {
  std::map<int, double> merged;
  for (auto [v, coef] : terms) merged[v] += coef;
  bool any = false;
  for (auto [v, coef] : merged) {
    *out << (coef < 0 ? " - " : " + ") << Num(std::abs(coef)) << " x" << v;
    any = true;
  }
  if (!any) *out << " + 0 x0";
}

bool ParseNumber(const std::string& token, double* value) {
  try {
    size_t used = 0;
    *value = std::stod(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::string WriteModelLp(const LinearModel& model) {
  std::ostringstream out;
  out << (model.maximize ? "Maximize\n" : "Minimize\n");
  std::vector<std::pair<int, double>> objective;
  for (int v = 0; v < model.num_vars(); ++v) {
    objective.push_back({v, model.objective[v]});
  }
  out << " obj:";
  AppendTerms(&out, objective);
  out << "\nSubject To\n";
  for (size_t r = 0; r < model.rows.size(); ++r) {
    const LinearRow& row = model.rows[r];
    out << " r" << r << ":";
    AppendTerms(&out, row.terms);
    switch (row.sense) {
      case RowSense::kLe:
        out << " <= ";
        break;
      case RowSense::kGe:
        out << " >= ";
        break;
      case RowSense::kEq:
        out << " = ";
        break;
    }
    out << Num(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int v = 0; v < model.num_vars(); ++v) {
    double lo = model.lower[v];
    double hi = model.upper[v];
    bool lo_inf = lo <= -kInfinity * 0.1;
    bool hi_inf = hi >= kInfinity * 0.1;
    if (lo_inf && hi_inf) {
      out << " x" << v << " free\n";
    } else {
      out << " " << (lo_inf ? std::string("-infinity") : Num(lo)) << " <= x"
          << v << " <= " << (hi_inf ? std::string("+infinity") : Num(hi))
          << "\n";
    }
  }
  bool any_binary = false;
  for (uint8_t b : model.is_binary) any_binary |= b != 0;
  if (any_binary) {
    out << "Binaries\n";
    for (int v = 0; v < model.num_vars(); ++v) {
      if (model.is_binary[v]) out << " x" << v << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

std::string WriteSolution(const LinearModel& model, const Solution& solution) {
  std::ostringstream out;
  switch (solution.status) {
    case SolveStatus::kOptimal:
      out << "status optimal\n";
      break;
    case SolveStatus::kInfeasible:
      out << "status infeasible\n";
      break;
    case SolveStatus::kUnbounded:
      out << "status unbounded\n";
      break;
  }
  if (solution.status == SolveStatus::kOptimal) {
    out << "objective " << Num(solution.objective) << "\n";
    for (size_t v = 0; v < solution.x.size(); ++v) {
      out << "var x" << v << " " << Num(solution.x[v]) << "\n";
    }
    for (size_t r = 0; r < solution.duals.size(); ++r) {
      out << "dual r" << r << " " << Num(solution.duals[r]) << "\n";
    }
  }
  return out.str();
}

Solution ReadSolution(const LinearModel& model, const std::string& bytes) {
  Solution solution;
  bool have_status = false;
  bool have_duals = false;
  solution.x.assign(model.num_vars(), 0.0);
  std::vector<double> duals(model.rows.size(), 0.0);
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head == "status") {
      std::string word;
      tokens >> word;
      if (word == "optimal") {
        solution.status = SolveStatus::kOptimal;
      } else if (word == "infeasible") {
        solution.status = SolveStatus::kInfeasible;
      } else if (word == "unbounded") {
        solution.status = SolveStatus::kUnbounded;
      } else {
        throw std::invalid_argument("unknown solver status: " + word);
      }
      have_status = true;
    } else if (head == "objective") {
      std::string value;
      tokens >> value;
      if (!ParseNumber(value, &solution.objective)) {
        throw std::invalid_argument("bad objective value: " + value);
      }
    } else if (head == "var") {
      std::string name, value;
      tokens >> name >> value;
      double parsed;
      if (name.size() < 2 || name[0] != 'x' ||
          !ParseNumber(name.substr(1), &parsed) || parsed < 0 ||
          parsed >= model.num_vars() ||
          parsed != std::floor(parsed)) {
        throw std::invalid_argument("unknown variable in solution: " + name);
      }
      int index = static_cast<int>(parsed);
      if (!ParseNumber(value, &solution.x[index])) {
        throw std::invalid_argument("bad value for " + name + ": " + value);
      }
    } else if (head == "dual") {
      std::string name, value;
      tokens >> name >> value;
      double parsed;
      if (name.size() < 2 || name[0] != 'r' ||
          !ParseNumber(name.substr(1), &parsed) || parsed < 0 ||
          parsed >= static_cast<double>(model.rows.size()) ||
          parsed != std::floor(parsed)) {
        throw std::invalid_argument("unknown row in solution: " + name);
      }
      int index = static_cast<int>(parsed);
      if (!ParseNumber(value, &duals[index])) {
        throw std::invalid_argument("bad dual for " + name + ": " + value);
      }
      have_duals = true;
    }
    // Anything else is a diagnostic line; ignore it.
  }
  if (!have_status) {
    throw std::invalid_argument("solution file has no status line");
  }
  if (solution.status != SolveStatus::kOptimal) {
    solution.x.clear();
  } else if (have_duals) {
    solution.duals = std::move(duals);
  }
  return solution;
}

Solution RunExternalSolver(const LinearModel& model,
                           const std::string& command) {
  char model_path[] = "/tmp/correq_model_XXXXXX";
  char sol_path[] = "/tmp/correq_sol_XXXXXX";
  int model_fd = mkstemp(model_path);
  int sol_fd = mkstemp(sol_path);
  if (model_fd < 0 || sol_fd < 0) {
    throw std::runtime_error("cannot create temporary files");
  }
  close(model_fd);
  close(sol_fd);
  struct Cleanup {
    const char* a;
    const char* b;
    ~Cleanup() {
      std::remove(a);
      std::remove(b);
    }
  } cleanup{model_path, sol_path};
  {
    std::ofstream out(model_path, std::ios::binary);
    out << WriteModelLp(model);
    if (!out) throw std::runtime_error("cannot write model file");
  }
  std::string full =
      command + " " + model_path + " " + sol_path;
  int rc = std::system(full.c_str());
  if (rc != 0) {
    throw std::runtime_error("external solver failed (exit " +
                             std::to_string(rc) + "): " + command);
  }
  std::ifstream in(sol_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string bytes = buffer.str();
  if (bytes.empty()) {
    throw std::runtime_error("external solver produced no solution: " +
                             command);
  }
  return ReadSolution(model, bytes);
}

}  // namespace correq
