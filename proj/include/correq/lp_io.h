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

#ifndef CORREQ_LP_IO_H_
#define CORREQ_LP_IO_H_

// Model and solution interchange with external solvers.
//
// Models are written in the common LP text format (Maximize/Subject
// To/Bounds/Binaries/End). Solutions use a line-oriented format:
//   status optimal|infeasible|unbounded
//   objective <value>
//   var <name> <value>        (one per variable, any order)
//   dual <row-name> <value>   (optional, sensitivity convention)
// Unknown lines are ignored, so a bridge script can append diagnostics.

#include <string>

#include "correq/lp.h"

namespace correq {

// Variables and rows are renamed x0, x1, ... / r0, r1, ... in the output so
// arbitrary internal names cannot break the format; the mapping is by index.
std::string WriteModelLp(const LinearModel& model);

std::string WriteSolution(const LinearModel& model, const Solution& solution);

// Parses a solution for `model`; unnamed variables are matched by the
// x<index> convention. Throws std::invalid_argument on malformed input.
Solution ReadSolution(const LinearModel& model, const std::string& bytes);

// Writes the model to a temporary .lp file, runs
//   <command> <model-file> <solution-file>
// and parses the solution file. Throws std::runtime_error when the command
// fails or produces no solution.
Solution RunExternalSolver(const LinearModel& model,
                           const std::string& command);

}  // namespace correq

#endif  // CORREQ_LP_IO_H_
