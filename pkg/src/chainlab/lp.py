"""Exact rational linear programming.

A small two-phase primal simplex over Fractions.  Bland's rule is the
default pivot choice, which rules out cycling even on the degenerate
instances the norm computations produce; a classical most-negative rule
is available behind a flag and falls back to Bland after an iteration
budget so termination is still guaranteed.  Optimal solutions come with
exact dual multipliers recovered from the final basis, and the solver
refuses to return anything that fails its own exact optimality
certificate (nonnegative reduced costs, zero duality gap).

Everything here minimizes; callers wanting a maximum negate the
objective themselves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Vector, solve as lin_solve
from .rationals import ZERO, ONE, rat

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE, GE, EQ = "<=", ">=", "="

BLAND = "bland"
DANTZIG = "dantzig"


@dataclass(frozen=True)
class LinearProgram:
    """minimize objective . x  subject to  lhs x (senses) rhs, bounds per variable.

    bounds entries are (low, high) with None for unbounded; variables
    default to free, matching how chains and functionals are used here.
    """
    objective: tuple[Fraction, ...]
    lhs: Matrix
    rhs: tuple[Fraction, ...]
    senses: tuple[str, ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...]

    def validate(self) -> list[str]:
        m, n = self.lhs.shape
        problems = []
        if len(self.objective) != n:
            problems.append("objective length mismatch")
        if len(self.rhs) != m:
            problems.append("rhs length mismatch")
        if len(self.senses) != m:
            problems.append("senses length mismatch")
        if len(self.bounds) != n:
            problems.append("bounds length mismatch")
        for s in self.senses:
            if s not in (LE, GE, EQ):
                problems.append(f"unknown sense {s!r}")
        for lo, hi in self.bounds:
            if lo is not None and hi is not None and lo > hi:
                problems.append("empty bound interval")
        return problems


def linear_program(objective, lhs: Matrix, rhs, senses, bounds=None) -> LinearProgram:
    n = lhs.ncols
    if bounds is None:
        bounds = ((None, None),) * n
    else:
        bounds = tuple((None if lo is None else rat(lo), None if hi is None else rat(hi))
                       for lo, hi in bounds)
    lp = LinearProgram(tuple(rat(v) for v in objective), lhs,
                       tuple(rat(v) for v in rhs), tuple(senses), bounds)
    problems = lp.validate()
    if problems:
        raise ValueError("invalid linear program: " + "; ".join(problems))
    return lp


@dataclass(frozen=True)
class LpSolution:
    status: str
    primal: tuple[Fraction, ...] | None
    dual: tuple[Fraction, ...] | None
    objective_value: Fraction | None
    dual_objective: Fraction | None


def verify(lp: LinearProgram, sol: LpSolution) -> list[str]:
    """Exact re-check of an optimal solution from the raw data."""
    if sol.status != OPTIMAL:
        return []
    problems = []
    x, y = sol.primal, sol.dual
    m, n = lp.lhs.shape
    ax = lp.lhs.apply(x)
    for i in range(m):
        s = lp.senses[i]
        if s == EQ and ax[i] != lp.rhs[i]:
            problems.append(f"row {i}: equality violated")
        if s == LE and ax[i] > lp.rhs[i]:
            problems.append(f"row {i}: <= violated")
        if s == GE and ax[i] < lp.rhs[i]:
            problems.append(f"row {i}: >= violated")
        if s == LE and y[i] > 0:
            problems.append(f"row {i}: dual sign for <=")
        if s == GE and y[i] < 0:
            problems.append(f"row {i}: dual sign for >=")
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and x[j] < lo:
            problems.append(f"var {j}: below lower bound")
        if hi is not None and x[j] > hi:
            problems.append(f"var {j}: above upper bound")
    obj = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    if obj != sol.objective_value:
        problems.append("objective value mismatch")
    if sol.dual_objective != sol.objective_value:
        problems.append("nonzero duality gap")
    # stationarity / complementary slackness per variable
    aty = lp.lhs.transpose().apply(y)
    for j, (lo, hi) in enumerate(lp.bounds):
        r = lp.objective[j] - aty[j]
        if lo is None and hi is None and r != 0:
            problems.append(f"var {j}: free variable reduced cost nonzero")
        elif lo is not None and hi is not None and lo == hi:
            continue
        else:
            if lo is not None and x[j] == lo and hi != lo and r < 0 and (hi is None or x[j] != hi):
                problems.append(f"var {j}: reduced cost sign at lower bound")
            if hi is not None and x[j] == hi and r > 0 and (lo is None or x[j] != lo):
                problems.append(f"var {j}: reduced cost sign at upper bound")
            if (lo is None or x[j] > lo) and (hi is None or x[j] < hi) and r != 0:
                problems.append(f"var {j}: interior variable reduced cost nonzero")
    return problems


class _Simplex:
    """Equality-form tableau with explicit artificials."""

    def __init__(self, lp: LinearProgram):
        m, n = lp.lhs.shape
        self.lp = lp
        self.col_of_var: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # (col, sign)
        self.shift: list[Fraction] = [ZERO] * n
        eq_cols: list[dict[int, Fraction]] = []
        bound_rows: list[tuple[int, Fraction]] = []  # (eq column, upper value)

        def add_col(entries: dict[int, Fraction]) -> int:
            eq_cols.append(entries)
            return len(eq_cols) - 1

        rows_of_var: list[dict[int, Fraction]] = [dict(c) for c in lp.lhs.cols]
        for j, (lo, hi) in enumerate(lp.bounds):
            base = rows_of_var[j]
            if lo is None and hi is None:
                cp = add_col(dict(base))
                cm = add_col({i: -v for i, v in base.items()})
                self.col_of_var[j] = [(cp, 1), (cm, -1)]
            elif lo is not None:
                c = add_col(dict(base))
                self.col_of_var[j] = [(c, 1)]
                self.shift[j] = lo
                if hi is not None:
                    bound_rows.append((c, hi - lo))
            else:
                c = add_col({i: -v for i, v in base.items()})
                self.col_of_var[j] = [(c, -1)]
                self.shift[j] = hi

        self.n_struct = len(eq_cols)
        # assemble row data: original rows then bound rows
        shift_correction = lp.lhs.apply(tuple(self.shift))
        row_data: list[tuple[dict[int, Fraction], Fraction, str]] = []
        for i in range(m):
            row: dict[int, Fraction] = {}
            for c, coldict in enumerate(eq_cols):
                v = coldict.get(i)
                if v:
                    row[c] = v
            row_data.append((row, lp.rhs[i] - shift_correction[i], lp.senses[i]))
        for c, ub in bound_rows:
            row_data.append(({c: ONE}, ub, LE))

        nrows = len(row_data)
        total_struct = self.n_struct + sum(1 for _, _, s in row_data if s != EQ)
        # slack columns
        slack_at = {}
        next_col = self.n_struct
        for i, (_, _, s) in enumerate(row_data):
            if s != EQ:
                slack_at[i] = next_col
                next_col += 1
        self.n_nonart = next_col
        self.n_art = nrows
        ncols = self.n_nonart + self.n_art
        self.rowsign: list[int] = []
        self.tab: list[list[Fraction]] = []
        self.b: list[Fraction] = []
        self.eq_cols: list[dict[int, Fraction]] = [dict() for _ in range(ncols)]
        for i, (row, bval, s) in enumerate(row_data):
            dense = [ZERO] * ncols
            for c, v in row.items():
                dense[c] = v
            if s == LE:
                dense[slack_at[i]] = ONE
            elif s == GE:
                dense[slack_at[i]] = -ONE
            sign = 1
            if bval < 0:
                sign = -1
                bval = -bval
                dense = [-v for v in dense]
            dense[self.n_nonart + i] = ONE  # artificial
            self.rowsign.append(sign)
            self.tab.append(dense)
            self.b.append(bval)
            for c, v in enumerate(dense):
                if v != 0:
                    self.eq_cols[c][i] = v
        self.nrows = nrows
        self.ncols = ncols
        self.basis = [self.n_nonart + i for i in range(nrows)]
        self.n_main_rows = m
        self.b0 = list(self.b)  # untouched equality-form rhs

    # -- core loop ----------------------------------------------------

    def _reduced_costs(self, costs: list[Fraction]) -> tuple[list[Fraction], Fraction]:
        z = list(costs)
        obj = ZERO
        for i, bi in enumerate(self.basis):
            cb = costs[bi]
            if cb != 0:
                row = self.tab[i]
                for j in range(self.ncols):
                    if row[j] != 0:
                        z[j] -= cb * row[j]
                obj += cb * self.b[i]
        return z, obj

    def _pivot(self, r: int, e: int, z: list[Fraction]) -> Fraction:
        row = self.tab[r]
        piv = row[e]
        if piv != 1:
            inv = ONE / piv
            self.tab[r] = row = [v * inv for v in row]
            self.b[r] *= inv
        delta = ZERO
        for i in range(self.nrows):
            if i == r:
                continue
            f = self.tab[i][e]
            if f == 0:
                continue
            ri = self.tab[i]
            for j in range(self.ncols):
                if row[j] != 0:
                    ri[j] -= f * row[j]
            self.b[i] -= f * self.b[r]
        f = z[e]
        if f != 0:
            for j in range(self.ncols):
                if row[j] != 0:
                    z[j] -= f * row[j]
            delta = f * self.b[r]
        self.basis[r] = e
        return delta

    def run(self, costs: list[Fraction], banned_from: int, rule: str) -> tuple[str, Fraction]:
        z, obj = self._reduced_costs(costs)
        iterations = 0
        budget = 2000 + 20 * (self.nrows + self.ncols)
        while True:
            iterations += 1
            use_bland = rule == BLAND or iterations > budget
            enter = -1
            if use_bland:
                for j in range(banned_from):
                    if z[j] < 0:
                        enter = j
                        break
            else:
                best = ZERO
                for j in range(banned_from):
                    if z[j] < best:
                        best = z[j]
                        enter = j
            if enter < 0:
                return OPTIMAL, obj
            leave = -1
            best_ratio = None
            for i in range(self.nrows):
                a = self.tab[i][enter]
                if a > 0:
                    ratio = self.b[i] / a
                    if best_ratio is None or ratio < best_ratio or \
                            (ratio == best_ratio and self.basis[i] < self.basis[leave]):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED, obj
            obj += self._pivot(leave, enter, z)

    def drive_out_artificials(self):
        for r in range(self.nrows):
            if self.basis[r] < self.n_nonart:
                continue
            row = self.tab[r]
            enter = -1
            for j in range(self.n_nonart):
                if row[j] != 0:
                    enter = j
                    break
            if enter >= 0:
                self._pivot(r, enter, [ZERO] * self.ncols)


def solve(lp: LinearProgram, pivot_rule: str = BLAND) -> LpSolution:
    if pivot_rule not in (BLAND, DANTZIG):
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    problems = lp.validate()
    if problems:
        raise ValueError("invalid linear program: " + "; ".join(problems))
    sx = _Simplex(lp)
    phase1 = [ZERO] * sx.n_nonart + [ONE] * sx.n_art
    status, obj1 = sx.run(phase1, banned_from=sx.ncols, rule=pivot_rule)
    if status != OPTIMAL or obj1 > 0:
        if obj1 < 0:
            raise RuntimeError("internal simplex error: negative phase-1 objective")
        return LpSolution(INFEASIBLE, None, None, None, None)
    sx.drive_out_artificials()

    # phase-2 costs on structural columns come from the original objective
    costs = [ZERO] * sx.ncols
    for var, cols in enumerate(sx.col_of_var):
        for c, sign in cols:
            costs[c] = sign * lp.objective[var]
    status, _ = sx.run(costs, banned_from=sx.n_nonart, rule=pivot_rule)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None, None, None)

    # primal in equality form, then original variables
    xeq = [ZERO] * sx.ncols
    for i, bi in enumerate(sx.basis):
        if sx.b[i] < 0:
            raise RuntimeError("internal simplex error: infeasible basis")
        xeq[bi] = sx.b[i]
    x = []
    for var, cols in enumerate(sx.col_of_var):
        val = sx.shift[var]
        for c, sign in cols:
            val += sign * xeq[c]
        x.append(val)

    # exact dual: solve B^T y = c_B from the untouched equality columns
    basis_mat = Matrix(sx.nrows, sx.nrows, [dict(sx.eq_cols[j]) for j in sx.basis])
    y = lin_solve(basis_mat.transpose(), tuple(costs[j] for j in sx.basis))
    if y is None:
        raise RuntimeError("internal simplex error: singular basis")

    # certificate: reduced costs of all non-artificial columns are >= 0
    for j in range(sx.n_nonart):
        col = sx.eq_cols[j]
        rc = costs[j] - sum((y[i] * v for i, v in col.items()), ZERO)
        if rc < 0:
            raise RuntimeError("internal simplex error: negative reduced cost at optimum")
    # exact primal feasibility in equality form
    residual = [-sx.b0[i] for i in range(sx.nrows)]
    for j in range(sx.ncols):
        xv = xeq[j]
        if xv == 0:
            continue
        for i, v in sx.eq_cols[j].items():
            residual[i] += v * xv
    if any(r != 0 for r in residual):
        raise RuntimeError("internal simplex error: primal residual nonzero")

    objective_value = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    const_shift = sum((lp.objective[j] * sx.shift[j] for j in range(len(x))), ZERO)
    dual_objective = sum((y[i] * sx.b0[i] for i in range(sx.nrows)), ZERO) + const_shift
    if dual_objective != objective_value:
        raise RuntimeError("internal simplex error: duality gap")
    dual = tuple(sx.rowsign[i] * y[i] for i in range(sx.n_main_rows))
    return LpSolution(OPTIMAL, tuple(x), dual, objective_value, dual_objective)


# -- norm minimization fronts ------------------------------------------


@dataclass(frozen=True)
class MinNormResult:
    value: Fraction
    coefficients: tuple[Fraction, ...]
    witness: tuple[Fraction, ...]
    certificate: tuple[Fraction, ...] | None


def min_weighted_l1(target, span: Matrix, weights) -> MinNormResult:
    """Exactly minimize the weighted l1 norm of target + span @ x over x.

    The optimal dual multipliers form a functional y with span^T y = 0,
    |y_i| <= w_i, and y . target equal to the minimum; it is returned as
    the certificate.
    """
    target = tuple(rat(v) for v in target)
    weights = tuple(rat(w) for w in weights)
    m = len(target)
    if span.nrows != m or len(weights) != m:
        raise ValueError("dimension mismatch in min_weighted_l1")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    k = span.ncols
    ncols = k + 2 * m
    entries = []
    for j, col in enumerate(span.cols):
        for i, v in col.items():
            entries.append((i, j, -v))
    for i in range(m):
        entries.append((i, k + i, ONE))
        entries.append((i, k + m + i, -ONE))
    lhs = Matrix.from_entries(m, ncols, entries)
    objective = (ZERO,) * k + weights + weights
    bounds = ((None, None),) * k + ((ZERO, None),) * (2 * m)
    lp = linear_program(objective, lhs, target, (EQ,) * m, bounds)
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"l1 minimization must be solvable, got {sol.status}")
    x = sol.primal[:k]
    chain = tuple(t + s for t, s in zip(target, span.apply(x)))
    pq = tuple(p - q for p, q in zip(sol.primal[k:k + m], sol.primal[k + m:]))
    if chain != pq:
        raise RuntimeError("split-variable reconstruction mismatch")
    y = sol.dual
    if any(v != 0 for v in span.transpose().apply(y)):
        raise RuntimeError("certificate is not in the annihilator of the span")
    if any(abs(yi) > w for yi, w in zip(y, weights)):
        raise RuntimeError("certificate exceeds the dual unit ball")
    pairing = sum((yi * t for yi, t in zip(y, target)), ZERO)
    if pairing != sol.objective_value:
        raise RuntimeError("certificate pairing does not match the optimum")
    return MinNormResult(sol.objective_value, x, chain, y)


def min_weighted_linf(target, span: Matrix, weights) -> MinNormResult:
    """Exactly minimize the weighted linf norm of target + span @ x over x.

    weights follow the linf convention: the norm is max_i weights[i]*|v_i|,
    so the epigraph constraints are -t/w_i <= v_i <= t/w_i.
    """
    target = tuple(rat(v) for v in target)
    weights = tuple(rat(w) for w in weights)
    m = len(target)
    if span.nrows != m or len(weights) != m:
        raise ValueError("dimension mismatch in min_weighted_linf")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    k = span.ncols
    # variables: x (free), t (>= 0); rows: +/- w_i*(target+Sx)_i <= t
    entries = []
    rhs = []
    for sign in (1, -1):
        base = len(rhs)
        for j, col in enumerate(span.cols):
            for i, v in col.items():
                entries.append((base + i, j, sign * weights[i] * v))
        for i in range(m):
            entries.append((base + i, k, -ONE))
            rhs.append(-sign * weights[i] * target[i])
    lhs = Matrix.from_entries(2 * m, k + 1, entries)
    objective = (ZERO,) * k + (ONE,)
    bounds = ((None, None),) * k + ((ZERO, None),)
    lp = linear_program(objective, lhs, rhs, (LE,) * (2 * m), bounds)
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"linf minimization must be solvable, got {sol.status}")
    x = sol.primal[:k]
    witness = tuple(t + s for t, s in zip(target, span.apply(x)))
    value = sol.objective_value
    if m and max(w * abs(v) for w, v in zip(weights, witness)) != value:
        raise RuntimeError("linf witness does not attain the optimum")
    return MinNormResult(value, x, witness, None)
