#!/usr/bin/env python3
"""Reference subproblem solver for the process backend.

Usage: uccet_solve.py <input.mps> <output.sol> <timelimit_s> <rel_gap>

Reads free-format MPS with optional QCMATRIX sections (diagonal convex
quadratic rows, activity = sum q*x^2 + linear <= rhs), solves with

  LP    -> scipy/HiGHS linprog
  MILP  -> scipy/HiGHS milp
  QCP   -> Clarabel second-order cone reformulation
  MIQCP -> outer approximation over HiGHS MILP with Clarabel dispatch polish

and writes a plain-text solution file (status/objective/solve_time/var
records). Any LP/MILP/QCP-capable solver can replace this script as long as
it honours the same file contract.
"""

import math
import sys
import time

import numpy as np

INF = float("inf")


class Problem:
    def __init__(self):
        self.name = ""
        self.maximize = False
        self.var_names = []
        self.var_index = {}
        self.lb = []
        self.ub = []
        self.integral = []
        self.obj = {}  # var index -> coefficient
        self.rows = []  # (name, sense, {j: c}, rhs)
        self.row_index = {}
        self.quad = {}  # row name -> [(j, d)]

    def var(self, name, is_int):
        j = self.var_index.get(name)
        if j is None:
            j = len(self.var_names)
            self.var_index[name] = j
            self.var_names.append(name)
            self.lb.append(0.0)
            self.ub.append(INF)
            self.integral.append(bool(is_int))
        return j


def parse_mps(path):
    p = Problem()
    section = None
    in_int = False
    qc_row = None
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("*"):
                continue
            tok = line.split()
            if not line[0].isspace():
                key = tok[0].upper()
                if key == "NAME":
                    p.name = tok[1] if len(tok) > 1 else ""
                elif key == "OBJSENSE":
                    section = "OBJSENSE"
                    if len(tok) > 1:
                        p.maximize = tok[1].upper().startswith("MAX")
                elif key == "QCMATRIX":
                    section = "QCMATRIX"
                    qc_row = tok[1]
                    p.quad.setdefault(qc_row, [])
                elif key == "ENDATA":
                    break
                elif key in ("ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS"):
                    section = key
                else:
                    raise ValueError(f"{path}:{lineno}: unknown section {key}")
                continue

            if section == "OBJSENSE":
                p.maximize = tok[0].upper().startswith("MAX")
            elif section == "ROWS":
                sense, name = tok
                if sense.upper() == "N":
                    continue
                p.row_index[name] = len(p.rows)
                p.rows.append([name, sense.upper(), {}, 0.0])
            elif section == "COLUMNS":
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    in_int = tok[2] == "'INTORG'"
                    continue
                var, row, val = tok[0], tok[1], float(tok[2])
                j = p.var(var, in_int)
                if row == "COST":
                    if val:
                        p.obj[j] = p.obj.get(j, 0.0) + val
                else:
                    p.rows[p.row_index[row]][2][j] = val
            elif section == "RHS":
                p.rows[p.row_index[tok[1]]][3] = float(tok[2])
            elif section == "BOUNDS":
                kind = tok[0].upper()
                j = p.var(tok[2], False)
                if kind == "MI":
                    p.lb[j] = -INF
                elif kind == "PL":
                    p.ub[j] = INF
                elif kind == "LO":
                    p.lb[j] = float(tok[3])
                elif kind == "UP":
                    p.ub[j] = float(tok[3])
                elif kind == "FX":
                    p.lb[j] = p.ub[j] = float(tok[3])
                elif kind == "BV":
                    p.lb[j], p.ub[j] = 0.0, 1.0
                    p.integral[j] = True
                else:
                    raise ValueError(f"{path}:{lineno}: bound type {kind}")
            elif section == "QCMATRIX":
                if tok[0] != tok[1]:
                    raise ValueError(f"{path}:{lineno}: off-diagonal quadratic entry")
                p.quad[qc_row].append((p.var_index[tok[0]], float(tok[2])))
            elif section == "RANGES":
                raise ValueError(f"{path}:{lineno}: RANGES not supported")
    return p


def split_rows(p):
    """Linear rows as (A_ub, b_ub, A_eq, b_eq); quadratic rows separately."""
    from scipy import sparse

    n = len(p.var_names)
    ub_rows, ub_rhs, eq_rows, eq_rhs, quad_rows = [], [], [], [], []
    for name, sense, coeffs, rhs in p.rows:
        if name in p.quad:
            quad_rows.append((name, p.quad[name], coeffs, rhs))
            continue
        if sense == "E":
            eq_rows.append(coeffs)
            eq_rhs.append(rhs)
        elif sense == "L":
            ub_rows.append(coeffs)
            ub_rhs.append(rhs)
        else:  # G -> negate
            ub_rows.append({j: -c for j, c in coeffs.items()})
            ub_rhs.append(-rhs)

    def mat(rows):
        if not rows:
            return None
        data, ri, ci = [], [], []
        for r, coeffs in enumerate(rows):
            for j, c in coeffs.items():
                ri.append(r)
                ci.append(j)
                data.append(c)
        return sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))

    return mat(ub_rows), np.array(ub_rhs), mat(eq_rows), np.array(eq_rhs), quad_rows


def dense_obj(p):
    c = np.zeros(len(p.var_names))
    for j, v in p.obj.items():
        c[j] = v
    if p.maximize:
        c = -c
    return c


def solve_lp(p, timelimit, extra_ub=None):
    from scipy.optimize import linprog

    A_ub, b_ub, A_eq, b_eq, _ = split_rows(p)
    if extra_ub is not None and extra_ub[0] is not None:
        from scipy import sparse

        A_ub = extra_ub[0] if A_ub is None else sparse.vstack([A_ub, extra_ub[0]])
        b_ub = np.concatenate([b_ub, extra_ub[1]]) if len(b_ub) else extra_ub[1]
    res = linprog(
        dense_obj(p),
        A_ub=A_ub,
        b_ub=b_ub if A_ub is not None else None,
        A_eq=A_eq,
        b_eq=b_eq if A_eq is not None else None,
        bounds=list(zip(p.lb, p.ub)),
        method="highs",
        options={
            "time_limit": timelimit,
            "primal_feasibility_tolerance": 1e-9,
            "dual_feasibility_tolerance": 1e-9,
        },
    )
    status = {0: "optimal", 1: "time_limit", 2: "infeasible", 3: "unbounded"}.get(
        res.status, "error"
    )
    return status, (res.x if res.x is not None else None), res.message


def solve_milp(p, timelimit, gap, extra_ub=None):
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp

    A_ub, b_ub, A_eq, b_eq, _ = split_rows(p)
    cons = []
    if A_ub is not None:
        cons.append(LinearConstraint(A_ub, -np.inf, b_ub))
    if extra_ub is not None and extra_ub[0] is not None:
        cons.append(LinearConstraint(extra_ub[0], -np.inf, extra_ub[1]))
    if A_eq is not None:
        cons.append(LinearConstraint(A_eq, b_eq, b_eq))
    res = milp(
        c=dense_obj(p),
        constraints=cons,
        integrality=np.array(p.integral, dtype=int),
        bounds=Bounds(np.array(p.lb), np.array(p.ub)),
        options={"time_limit": timelimit, "mip_rel_gap": gap, "presolve": True},
    )
    if res.status == 0:
        status = "optimal"
    elif res.status == 1 and res.x is not None:
        status = "time_limit"
    elif res.status == 2:
        status = "infeasible"
    elif res.status == 3:
        status = "unbounded"
    else:
        status = "error" if res.x is None else "feasible"
    return status, (res.x if res.x is not None else None), res.message


def solve_qcp_clarabel(p, timelimit, gap):
    from scipy import sparse
    import clarabel

    n = len(p.var_names)
    A_ub, b_ub, A_eq, b_eq, quad_rows = split_rows(p)

    blocks, rhs_parts, cones = [], [], []
    if A_eq is not None:
        blocks.append(A_eq)
        rhs_parts.append(b_eq)
        cones.append(clarabel.ZeroConeT(A_eq.shape[0]))

    bound_rows, bound_rhs = [], []
    for j in range(n):
        if p.ub[j] < INF:
            bound_rows.append(({j: 1.0}, p.ub[j]))
        if p.lb[j] > -INF:
            bound_rows.append(({j: -1.0}, -p.lb[j]))
    nn = (A_ub.shape[0] if A_ub is not None else 0) + len(bound_rows)
    if nn:
        data, ri, ci, rhs = [], [], [], []
        r = 0
        if A_ub is not None:
            coo = A_ub.tocoo()
            ri.extend(coo.row.tolist())
            ci.extend(coo.col.tolist())
            data.extend(coo.data.tolist())
            rhs.extend(b_ub.tolist())
            r = A_ub.shape[0]
        for coeffs, b in bound_rows:
            for j, c in coeffs.items():
                ri.append(r)
                ci.append(j)
                data.append(c)
            rhs.append(b)
            r += 1
        blocks.append(sparse.csr_matrix((data, (ri, ci)), shape=(r, n)))
        rhs_parts.append(np.array(rhs))
        cones.append(clarabel.NonnegativeConeT(r))

    # Each quadratic row sum d_j x_j^2 + a'x <= rho becomes the cone
    # ||(2 sqrt(d_j) x_j ; w-1)|| <= w+1 with w = rho - a'x.
    for name, diag, lin, rho in quad_rows:
        m = len(diag)
        data, ri, ci, rhs = [], [], [], []
        for j, c in lin.items():
            ri.append(0)
            ci.append(j)
            data.append(c)
        rhs.append(rho + 1.0)
        for k, (j, d) in enumerate(diag, start=1):
            ri.append(k)
            ci.append(j)
            data.append(-2.0 * math.sqrt(d))
            rhs.append(0.0)
        for j, c in lin.items():
            ri.append(m + 1)
            ci.append(j)
            data.append(c)
        rhs.append(rho - 1.0)
        blocks.append(sparse.csr_matrix((data, (ri, ci)), shape=(m + 2, n)))
        rhs_parts.append(np.array(rhs))
        cones.append(clarabel.SecondOrderConeT(m + 2))

    A = sparse.vstack(blocks).tocsc() if blocks else sparse.csc_matrix((0, n))
    b = np.concatenate(rhs_parts) if rhs_parts else np.zeros(0)
    settings = clarabel.DefaultSettings()
    settings.verbose = False
    settings.time_limit = timelimit
    settings.tol_feas = 1e-9
    settings.tol_gap_abs = 1e-9
    settings.tol_gap_rel = min(gap if gap > 0 else 1e-9, 1e-8)
    solver = clarabel.DefaultSolver(
        sparse.csc_matrix((n, n)), dense_obj(p), A, b, cones, settings
    )
    sol = solver.solve()
    s = str(sol.status)
    if s == "Solved":
        status = "optimal"
    elif s == "AlmostSolved":
        status = "feasible"
    elif "PrimalInfeasible" in s:
        status = "infeasible"
    elif "DualInfeasible" in s:
        status = "unbounded"
    elif s == "MaxTime":
        status = "time_limit"
    else:
        status = "error"
    x = np.array(sol.x) if status in ("optimal", "feasible", "time_limit") else None
    return status, x, s


def quad_violation(quad_rows, x):
    worst = 0.0
    for name, diag, lin, rho in quad_rows:
        act = sum(d * x[j] * x[j] for j, d in diag) + sum(c * x[j] for j, c in lin.items())
        worst = max(worst, act - rho)
    return worst


def tangent_rows(quad_rows, x, n):
    """Supporting hyperplanes of every quadratic row at x."""
    from scipy import sparse

    data, ri, ci, rhs = [], [], [], []
    for r, (name, diag, lin, rho) in enumerate(quad_rows):
        for j, d in diag:
            ri.append(r)
            ci.append(j)
            data.append(2.0 * d * x[j])
        for j, c in lin.items():
            ri.append(r)
            ci.append(j)
            data.append(c)
        rhs.append(rho + sum(d * x[j] * x[j] for j, d in diag))
    return sparse.csr_matrix((data, (ri, ci)), shape=(len(quad_rows), n)), np.array(rhs)


def solve_qcp(p, timelimit, gap):
    try:
        return solve_qcp_clarabel(p, timelimit, gap)
    except ImportError:
        pass
    # Cutting-plane fallback on plain scipy: refine supporting hyperplanes of
    # the quadratic rows until the LP optimum satisfies them.
    from scipy import sparse

    n = len(p.var_names)
    _, _, _, _, quad_rows = split_rows(p)
    cuts = None
    deadline = time.time() + timelimit
    for _ in range(500):
        status, x, msg = solve_lp(p, max(1.0, deadline - time.time()), extra_ub=cuts)
        if status != "optimal" or x is None:
            return status, x, msg
        if quad_violation(quad_rows, x) <= 1e-9 * max(1.0, float(np.abs(x).max())):
            return "optimal", x, "cutting-plane"
        A_new, b_new = tangent_rows(quad_rows, x, n)
        if cuts is None:
            cuts = (A_new, b_new)
        else:
            cuts = (sparse.vstack([cuts[0], A_new]), np.concatenate([cuts[1], b_new]))
        if time.time() > deadline:
            return "time_limit", x, "cutting-plane"
    return "feasible", x, "cutting-plane iteration cap"


def solve_miqcp(p, timelimit, gap):
    """Outer approximation: MILP relaxations with supporting hyperplanes plus
    fixed-integer QCP polish."""
    from scipy import sparse

    n = len(p.var_names)
    _, _, _, _, quad_rows = split_rows(p)
    sign = -1.0 if p.maximize else 1.0
    deadline = time.time() + timelimit
    cuts = None
    best_x, best_obj = None, INF  # in minimize convention

    def obj_of(x):
        return sign * sum(c * x[j] for j, c in p.obj.items())

    for _ in range(200):
        remaining = max(1.0, deadline - time.time())
        status, x, msg = solve_milp(p, remaining, gap, extra_ub=cuts)
        if status in ("infeasible", "unbounded", "error"):
            if best_x is not None:
                return "feasible", best_x, "OA finished (relaxation " + status + ")"
            return status, x, msg
        if x is None:
            break
        lower = obj_of(x)
        scale = max(1.0, float(np.abs(x).max()))
        if quad_violation(quad_rows, x) <= 1e-8 * scale:
            if lower < best_obj:
                best_x, best_obj = x.copy(), lower
            return ("optimal" if status == "optimal" else status), best_x, "OA converged"
        # Polish: fix integer variables at the MILP point, solve the QCP.
        fixed = Problem()
        fixed.name = p.name
        fixed.maximize = p.maximize
        fixed.var_names = p.var_names
        fixed.var_index = p.var_index
        fixed.lb = list(p.lb)
        fixed.ub = list(p.ub)
        fixed.integral = [False] * n
        fixed.obj = p.obj
        fixed.rows = p.rows
        fixed.row_index = p.row_index
        fixed.quad = p.quad
        for j in range(n):
            if p.integral[j]:
                v = round(x[j])
                fixed.lb[j] = fixed.ub[j] = float(v)
        fstatus, fx, _ = solve_qcp(fixed, max(1.0, deadline - time.time()), gap)
        if fstatus in ("optimal", "feasible") and fx is not None:
            fobj = obj_of(fx)
            if fobj < best_obj:
                best_x, best_obj = np.array(fx), fobj
        points = [x] if fx is None else [x, np.array(fx)]
        for pt in points:
            A_new, b_new = tangent_rows(quad_rows, pt, n)
            cuts = (
                (A_new, b_new)
                if cuts is None
                else (sparse.vstack([cuts[0], A_new]), np.concatenate([cuts[1], b_new]))
            )
        if best_obj < INF and best_obj - lower <= gap * max(1.0, abs(best_obj)):
            return "optimal", best_x, "OA gap closed"
        if time.time() > deadline:
            return ("time_limit" if best_x is None else "feasible"), best_x, "OA timeout"
    if best_x is not None:
        return "feasible", best_x, "OA iteration cap"
    return "error", None, "OA made no progress"


def main():
    if len(sys.argv) != 5:
        sys.stderr.write(__doc__)
        return 2
    in_path, out_path = sys.argv[1], sys.argv[2]
    timelimit = float(sys.argv[3])
    gap = float(sys.argv[4])

    t0 = time.time()
    p = parse_mps(in_path)
    has_int = any(p.integral)
    has_quad = bool(p.quad)
    if has_quad and has_int:
        status, x, msg = solve_miqcp(p, timelimit, gap)
    elif has_quad:
        status, x, msg = solve_qcp(p, timelimit, gap)
    elif has_int:
        status, x, msg = solve_milp(p, timelimit, gap)
    else:
        status, x, msg = solve_lp(p, timelimit)
    elapsed = time.time() - t0

    with open(out_path, "w") as f:
        f.write(f"status {status}\n")
        if x is not None:
            obj = sum(c * x[j] for j, c in p.obj.items())
            f.write("objective %.17g\n" % obj)
        f.write("solve_time %.4f\n" % elapsed)
        if msg:
            f.write("message %s\n" % str(msg).replace("\n", " "))
        if x is not None:
            for j, name in enumerate(p.var_names):
                f.write("var %s %.17g\n" % (name, x[j]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
