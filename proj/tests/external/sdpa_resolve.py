# Copyright 2026 The qbound Authors
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

"""Re-solve a qbound SDPA sparse file with an independent conic solver.

Reads the problem  min c.x  s.t.  sum_i F_i x_i - F_0 >= 0  (block diagonal,
negative block sizes are diagonal LP blocks) and prints the optimum mapped back
through the sign and constant recorded in the leading comment line.
"""

import re
import sys

import cvxpy as cp
import numpy as np


def read_sdpa(path):
    sign, constant = 1.0, 0.0
    tokens_lines = []
    with open(path) as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped[0] in "*\"":
                m = re.search(r"sign=(\S+)\s+constant=(\S+)", stripped)
                if m:
                    sign, constant = float(m.group(1)), float(m.group(2))
                continue
            tokens_lines.append(re.sub(r"[{},()]", " ", stripped).split())
    m = int(tokens_lines[0][0])
    nblocks = int(tokens_lines[1][0])
    sizes = [int(v) for v in tokens_lines[2][:nblocks]]
    c = np.array([float(v) for v in tokens_lines[3][:m]])
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m + 1)]
    for toks in tokens_lines[4:]:
        mat, blk, i, j = (int(v) for v in toks[:4])
        val = float(toks[4])
        block = mats[mat][blk - 1]
        block[i - 1, j - 1] = val
        block[j - 1, i - 1] = val
    return sign, constant, c, sizes, mats


def resolve(path):
    sign, constant, c, sizes, mats = read_sdpa(path)
    x = cp.Variable(len(c))
    constraints = []
    for b, size in enumerate(sizes):
        expr = -mats[0][b] + sum(x[i] * mats[i + 1][b] for i in range(len(c)) if mats[i + 1][b].any())
        if size < 0:
            constraints.append(cp.diag(expr) >= 0)
        else:
            constraints.append(0.5 * (expr + expr.T) >> 0)
    problem = cp.Problem(cp.Minimize(c @ x), constraints)
    problem.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise SystemExit(f"external solver status: {problem.status}")
    return sign * problem.value + constant


if __name__ == "__main__":
    if len(sys.argv) != 2:
        raise SystemExit("usage: sdpa_resolve.py FILE.dat-s")
    print(f"{resolve(sys.argv[1]):.12f}")
