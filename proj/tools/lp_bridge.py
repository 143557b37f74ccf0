#!/usr/bin/env python3
# Copyright 2026 The correq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent LP/MIP reference solver behind the project's .lp interchange.

Usage: lp_bridge.py model.lp out.sol

Reads the restricted CPLEX-style text this project's writer emits (sections
Maximize|Minimize / Subject To / Bounds / Binaries / End, one statement per
line, signed "c x<i>" terms) and solves it with scipy's HiGHS backend,
writing the line-oriented solution format:

    status optimal|infeasible|unbounded
    objective <value>
    var <name> <value>
    dual <row> <value>     (pure LPs only; sensitivity convention)
"""

import sys

import numpy as np
from scipy import optimize


def parse_terms(tokens):
    """Parses '+ 2 x0 - 1.5 x3' token triples into {var_name: coef}."""
    terms = {}
    i = 0
    while i < len(tokens):
        sign = tokens[i]
        if sign not in ("+", "-"):
            raise ValueError(f"expected sign, got {sign!r}")
        coef = float(tokens[i + 1])
        name = tokens[i + 2]
        terms[name] = terms.get(name, 0.0) + (-coef if sign == "-" else coef)
        i += 3
    return terms


def parse_model(path):
    maximize = True
    objective = {}
    rows = []  # (name, terms, sense, rhs)
    bounds = {}  # name -> (lo, hi)
    binaries = set()
    section = None
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            if line in ("Maximize", "Minimize"):
                maximize = line == "Maximize"
                section = "objective"
                continue
            if line == "Subject To":
                section = "rows"
                continue
            if line == "Bounds":
                section = "bounds"
                continue
            if line == "Binaries":
                section = "binaries"
                continue
            if line == "End":
                break
            tokens = line.split()
            if section == "objective":
                assert tokens[0].endswith(":")
                objective = parse_terms(tokens[1:])
            elif section == "rows":
                name = tokens[0].rstrip(":")
                sense_at = next(
                    i for i, t in enumerate(tokens) if t in ("<=", ">=", "=")
                )
                terms = parse_terms(tokens[1:sense_at])
                rows.append(
                    (name, terms, tokens[sense_at], float(tokens[sense_at + 1]))
                )
            elif section == "bounds":
                if len(tokens) == 2 and tokens[1] == "free":
                    bounds[tokens[0]] = (None, None)
                else:
                    lo = None if tokens[0] == "-infinity" else float(tokens[0])
                    hi = None if tokens[4] == "+infinity" else float(tokens[4])
                    bounds[tokens[2]] = (lo, hi)
            elif section == "binaries":
                binaries.add(tokens[0])
    names = sorted(
        set(objective) | set(bounds) | {n for _, t, _, _ in rows for n in t},
        key=lambda s: int(s[1:]),
    )
    return maximize, objective, rows, bounds, binaries, names


def main():
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    maximize, objective, rows, bounds, binaries, names = parse_model(
        sys.argv[1]
    )
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    c = np.zeros(n)
    for name, coef in objective.items():
        c[index[name]] = coef
    if maximize:
        c = -c
    var_bounds = [bounds.get(name, (0.0, None)) for name in names]

    a_ub, b_ub, ub_rows = [], [], []
    a_eq, b_eq, eq_rows = [], [], []
    for row_pos, (name, terms, sense, rhs) in enumerate(rows):
        dense = np.zeros(n)
        for var, coef in terms.items():
            dense[index[var]] = coef
        if sense == "<=":
            a_ub.append(dense)
            b_ub.append(rhs)
            ub_rows.append((row_pos, 1.0))
        elif sense == ">=":
            a_ub.append(-dense)
            b_ub.append(-rhs)
            ub_rows.append((row_pos, -1.0))
        else:
            a_eq.append(dense)
            b_eq.append(rhs)
            eq_rows.append(row_pos)

    lines = []
    if binaries:
        constraints = []
        if a_ub:
            constraints.append(
                optimize.LinearConstraint(np.array(a_ub), -np.inf, b_ub)
            )
        if a_eq:
            constraints.append(
                optimize.LinearConstraint(np.array(a_eq), b_eq, b_eq)
            )
        lo = np.array([-np.inf if b[0] is None else b[0] for b in var_bounds])
        hi = np.array([np.inf if b[1] is None else b[1] for b in var_bounds])
        integrality = np.array(
            [1 if name in binaries else 0 for name in names]
        )
        res = optimize.milp(
            c,
            constraints=constraints,
            bounds=optimize.Bounds(lo, hi),
            integrality=integrality,
        )
        if res.status == 2:
            lines.append("status infeasible")
        elif res.status == 3:
            lines.append("status unbounded")
        elif res.status == 0:
            lines.append("status optimal")
            value = -res.fun if maximize else res.fun
            lines.append(f"objective {float(value):.17g}")
            for name in names:
                lines.append(f"var {name} {float(res.x[index[name]]):.17g}")
        else:
            print(f"milp failed: {res.message}", file=sys.stderr)
            return 1
    else:
        res = optimize.linprog(
            c,
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=var_bounds,
            method="highs",
        )
        if res.status == 2:
            lines.append("status infeasible")
        elif res.status == 3:
            lines.append("status unbounded")
        elif res.status == 0:
            lines.append("status optimal")
            value = -res.fun if maximize else res.fun
            lines.append(f"objective {float(value):.17g}")
            for name in names:
                lines.append(f"var {name} {float(res.x[index[name]]):.17g}")
            # Marginals of the converted minimization, mapped back to the
            # original senses and objective direction.
            duals = {}
            obj_sign = -1.0 if maximize else 1.0
            for (row_pos, row_sign), marginal in zip(
                ub_rows, res.ineqlin.marginals
            ):
                duals[row_pos] = obj_sign * row_sign * marginal
            for row_pos, marginal in zip(eq_rows, res.eqlin.marginals):
                duals[row_pos] = obj_sign * marginal
            for row_pos, (name, _, _, _) in enumerate(rows):
                lines.append(f"dual {name} {float(duals[row_pos]):.17g}")
        else:
            print(f"linprog failed: {res.message}", file=sys.stderr)
            return 1
    with open(sys.argv[2], "w", encoding="utf-8") as out:
        out.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
