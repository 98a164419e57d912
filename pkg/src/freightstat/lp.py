"""Two-phase revised simplex for small dense linear programs.

Problems are stated as ``minimize c @ x`` subject to rows ``a @ x (<=|>=|=) b``
and per-variable bounds ``lo <= x <= hi`` (either side may be infinite).
Internally every variable is shifted or split into non-negative parts, upper
bounds become extra rows, and rows are sign-normalised so ``b >= 0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

RELATIONS = ("<=", ">=", "=")

FEAS_TOL = 1e-7
OPT_TOL = 1e-9
PIVOT_TOL = 1e-11

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
FAILED = "failed"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[float, ...]
    relation: str
    rhs: float

    def __post_init__(self):
        rel = {"==": "=", "=<": "<=", "=>": ">="}.get(self.relation, self.relation)
        if rel not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.relation!r}")
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "coeffs", tuple(float(v) for v in self.coeffs))
        object.__setattr__(self, "rhs", float(self.rhs))

    def residual(self, x: Sequence[float]) -> float:
        """Amount by which ``x`` violates this row (0 when satisfied)."""
        lhs = math.fsum(a * v for a, v in zip(self.coeffs, x))
        if self.relation == "<=":
            return max(lhs - self.rhs, 0.0)
        if self.relation == ">=":
            return max(self.rhs - lhs, 0.0)
        return abs(lhs - self.rhs)


@dataclass(frozen=True)
class LpProblem:
    objective: tuple[float, ...]
    constraints: tuple[Constraint, ...] = ()
    bounds: Optional[tuple[tuple[float, float], ...]] = None
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        obj = tuple(float(v) for v in self.objective)
        nvar = len(obj)
        if nvar == 0:
            raise ValueError("an LP needs at least one variable")
        bounds = self.bounds if self.bounds is not None else ((0.0, math.inf),) * nvar
        bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
        if len(bounds) != nvar:
            raise ValueError("one (lower, upper) bound pair per variable is required")
        for j, (lo, hi) in enumerate(bounds):
            if math.isnan(lo) or math.isnan(hi) or lo == math.inf or hi == -math.inf or lo > hi:
                raise ValueError(f"invalid bounds for variable {j}: [{lo}, {hi}]")
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        for i, c in enumerate(cons):
            if len(c.coeffs) != nvar:
                raise ValueError(f"constraint {i} has {len(c.coeffs)} coefficients, expected {nvar}")
            if not all(math.isfinite(v) for v in c.coeffs + (c.rhs,)):
                raise ValueError(f"constraint {i} has non-finite entries")
        if not all(math.isfinite(v) for v in obj):
            raise ValueError("objective has non-finite entries")
        names = tuple(self.names) if self.names is not None else tuple(f"x{j + 1}" for j in range(nvar))
        if len(names) != nvar:
            raise ValueError("one name per variable is required")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "names", names)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def max_violation(self, x: Sequence[float]) -> tuple[float, float]:
        """(worst row violation, worst bound violation) at ``x``."""
        rows = max((c.residual(x) for c in self.constraints), default=0.0)
        bnd = max(max(lo - v, v - hi, 0.0) for v, (lo, hi) in zip(x, self.bounds))
        return rows, bnd


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective_value: float = math.nan
    variable_values: tuple[float, ...] = ()
    iterations: int = 0
    message: str = ""
    names: tuple[str, ...] = field(default=())

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "objective_value": self.objective_value,
            "variables": dict(zip(self.names, self.variable_values)),
            "iterations": self.iterations,
            "message": self.message,
        }


class _Breakdown(ArithmeticError):
    pass


class _Simplex:
    """Revised simplex over ``a @ y = b, y >= 0``.

    The basis matrix is refactorised from the original data at every
    iteration, so rounding does not accumulate across pivots.
    """

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int], max_iter: int):
        self.a = a
        self.b = b
        self.basis = basis
        self.iterations = 0
        self.max_iter = max_iter

    def _factor(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error", LinAlgWarning)
            try:
                return lu_factor(self.a[:, self.basis])
            except LinAlgWarning:
                raise _Breakdown(f"singular basis matrix after {self.iterations} pivots") from None

    @property
    def rhs(self) -> np.ndarray:
        return lu_solve(self._factor(), self.b)

    def row(self, i: int) -> np.ndarray:
        """Row ``i`` of ``B^-1 a``."""
        e = np.zeros(len(self.basis))
        e[i] = 1.0
        return lu_solve(self._factor(), e, trans=1) @ self.a

    def pivot(self, row: int, col: int) -> None:
        self.basis[row] = col
        self.iterations += 1

    def drop_rows(self, keep: list[int]) -> None:
        self.a = self.a[keep]
        self.b = self.b[keep]
        self.basis = [self.basis[i] for i in keep]

    def run(self, cost: np.ndarray, allowed: np.ndarray, bounded: bool = False) -> str:
        """Minimise ``cost`` from the current basis; Dantzig pricing, Bland's rule after degenerate pivots.

        With ``bounded`` the objective is known to be bounded below, so a
        column without a positive entry only reflects rounding in its reduced
        cost and is skipped instead of reported as unbounded.
        """
        bland = False
        allowed = allowed.copy()
        skipped = []
        while True:
            if self.iterations >= self.max_iter:
                return FAILED
            lu = self._factor()
            values = lu_solve(lu, self.b)
            duals = lu_solve(lu, cost[self.basis], trans=1)
            reduced = cost - duals @ self.a
            reduced[self.basis] = 0.0
            candidates = np.flatnonzero(allowed & (reduced < -OPT_TOL))
            if candidates.size == 0:
                return OPTIMAL
            if bland:
                col = int(candidates[0])
            else:
                col = int(candidates[np.argmin(reduced[candidates])])
            column = lu_solve(lu, self.a[:, col])
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                if not bounded:
                    return UNBOUNDED
                allowed[col] = False
                skipped.append(col)
                continue
            ratios = np.maximum(values[rows], 0.0) / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            # among tied rows skip pivots far smaller than the largest one, then Bland
            ties = ties[column[ties] >= 0.1 * column[ties].max()]
            row = int(min(ties, key=lambda r: self.basis[r]))
            bland = best <= 1e-12
            self.pivot(row, col)
            allowed[skipped] = True
            skipped.clear()


def _standardise(problem: LpProblem):
    """Map the problem onto ``A y = b, y >= 0`` (before slack/artificial columns).

    Returns the row data plus the recipe ``x_j = offset_j + sum(sign * y_col)``.
    """
    cols: list[list[tuple[int, float]]] = []
    offsets = []
    extra_rows = []  # (column, upper) for finite-width bounded variables
    ncol = 0
    for lo, hi in problem.bounds:
        if math.isfinite(lo):
            cols.append([(ncol, 1.0)])
            offsets.append(lo)
            if math.isfinite(hi):
                extra_rows.append((ncol, hi - lo))
            ncol += 1
        elif math.isfinite(hi):
            cols.append([(ncol, -1.0)])
            offsets.append(hi)
            ncol += 1
        else:
            cols.append([(ncol, 1.0), (ncol + 1, -1.0)])
            offsets.append(0.0)
            ncol += 2

    def expand(coeffs):
        row = np.zeros(ncol)
        for a, parts in zip(coeffs, cols):
            for c, s in parts:
                row[c] += a * s
        return row

    rows, rels, rhs = [], [], []
    for con in problem.constraints:
        rows.append(expand(con.coeffs))
        rels.append(con.relation)
        rhs.append(con.rhs - math.fsum(a * o for a, o in zip(con.coeffs, offsets)))
    for c, width in extra_rows:
        row = np.zeros(ncol)
        row[c] = 1.0
        rows.append(row)
        rels.append("<=")
        rhs.append(width)
    cost = expand(problem.objective)
    return cols, np.array(offsets), ncol, rows, rels, rhs, cost


def solve(problem: LpProblem, max_iter: Optional[int] = None) -> LpSolution:
    """Minimise ``problem`` with the two-phase simplex method."""
    try:
        return _solve(problem, max_iter)
    except _Breakdown as exc:
        return LpSolution(FAILED, message=f"numerical breakdown: {exc}", names=problem.names)


def _solve(problem: LpProblem, max_iter: Optional[int]) -> LpSolution:
    cols, offsets, ncol, rows, rels, rhs, cost = _standardise(problem)
    m = len(rows)
    names = problem.names

    def recover(y: np.ndarray) -> tuple[float, ...]:
        x = []
        for (lo, hi), off, parts in zip(problem.bounds, offsets, cols):
            v = off + sum(s * y[c] for c, s in parts)
            x.append(float(min(max(v, lo), hi)))
        return tuple(x)

    if m == 0:
        # only bounds: each variable sits at whichever finite bound its cost prefers
        x = []
        for c, (lo, hi) in zip(problem.objective, problem.bounds):
            target = lo if c > 0 else hi if c < 0 else min(max(0.0, lo), hi)
            if not math.isfinite(target):
                return LpSolution(UNBOUNDED, message="objective decreases along an unbounded variable", names=names)
            x.append(target)
        return LpSolution(OPTIMAL, math.fsum(c * v for c, v in zip(problem.objective, x)), tuple(x), 0, names=names)

    a = np.vstack(rows)
    b = np.array(rhs, dtype=float)
    rels = list(rels)
    for i in range(m):
        if b[i] < 0.0:
            a[i] = -a[i]
            b[i] = -b[i]
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rels[i]]

    # equilibrate rows then columns so tiny coefficients do not produce huge pivots
    # (clamped at 1e-9 so near-zero rows and columns do not blow up)
    row_scale = np.clip(np.max(np.abs(a), axis=1), 1e-9, None)
    a /= row_scale[:, None]
    b /= row_scale
    col_scale = np.clip(np.max(np.abs(a), axis=0), 1e-9, None)
    a /= col_scale[None, :]
    cost = cost / col_scale

    n_slack = sum(r != "=" for r in rels)
    n_art = sum(r != "<=" for r in rels)
    total = ncol + n_slack + n_art
    full = np.zeros((m, total))
    full[:, :ncol] = a
    basis = [-1] * m
    artificial = np.zeros(total, dtype=bool)
    s = ncol
    r_art = ncol + n_slack
    for i, rel in enumerate(rels):
        if rel == "<=":
            full[i, s] = 1.0
            basis[i] = s
            s += 1
        elif rel == ">=":
            full[i, s] = -1.0
            s += 1
        if rel != "<=":
            full[i, r_art] = 1.0
            basis[i] = r_art
            artificial[r_art] = True
            r_art += 1

    cap = max_iter if max_iter is not None else 50 * (total + m) + 100
    tab = _Simplex(full, b, basis, cap)
    allowed = np.ones(total, dtype=bool)

    if n_art:
        phase1 = artificial.astype(float)
        status = tab.run(phase1, allowed, bounded=True)
        if status == FAILED:
            return LpSolution(FAILED, iterations=tab.iterations, message="iteration limit reached in phase 1", names=names)
        infeas = float(phase1[tab.basis] @ tab.rhs)
        if infeas > FEAS_TOL * max(1.0, float(np.max(np.abs(b)))):
            return LpSolution(
                INFEASIBLE,
                iterations=tab.iterations,
                message=f"phase 1 ended with total infeasibility {infeas:.3g}",
                names=names,
            )
        # drive zero-level artificials out of the basis; drop rows that are redundant
        keep = []
        for i in range(len(tab.basis)):
            if artificial[tab.basis[i]]:
                r = np.abs(tab.row(i))
                r[artificial] = 0.0
                r[tab.basis] = 0.0
                if r.max() > 1e-9:
                    tab.pivot(i, int(np.argmax(r)))
                    keep.append(i)
            else:
                keep.append(i)
        if len(keep) < len(tab.basis):
            tab.drop_rows(keep)
        allowed = ~artificial

    phase2 = np.zeros(total)
    phase2[:ncol] = cost
    status = tab.run(phase2, allowed)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, iterations=tab.iterations, message="objective is unbounded below", names=names)
    if status == FAILED:
        return LpSolution(FAILED, iterations=tab.iterations, message="iteration limit reached in phase 2", names=names)

    y = np.zeros(total)
    y[tab.basis] = np.maximum(tab.rhs, 0.0)
    x = recover(y[:ncol] / col_scale)
    _, bound_viol = problem.max_violation(x)
    # rows are judged relative to the size of their terms; absolute for ordinary magnitudes
    row_viol = max(
        (c.residual(x) / max(1.0, abs(c.rhs), math.fsum(abs(a * v) for a, v in zip(c.coeffs, x)))
         for c in problem.constraints),
        default=0.0,
    )
    if row_viol > FEAS_TOL or bound_viol > 1e-9:
        return LpSolution(
            FAILED,
            iterations=tab.iterations,
            message=f"numerical breakdown: recovered point violates rows by {row_viol:.3g}",
            names=names,
        )
    value = math.fsum(c * v for c, v in zip(problem.objective, x))
    return LpSolution(OPTIMAL, value, x, tab.iterations, names=names)


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def format_lp(problem: LpProblem) -> str:
    """Plain-text dump: objective, one line per row, then bounds.

    ::

        vars a0 a1 c0
        min 0.0 0.0 5.0
        1.0 2.0 0.1 >= 2.0
        bounds -inf:inf -inf:inf 0.0:inf
    """
    lines = ["vars " + " ".join(problem.names), "min " + " ".join(_fmt(v) for v in problem.objective)]
    for con in problem.constraints:
        lines.append(" ".join(_fmt(v) for v in con.coeffs) + f" {con.relation} {_fmt(con.rhs)}")
    lines.append("bounds " + " ".join(f"{_fmt(lo)}:{_fmt(hi)}" for lo, hi in problem.bounds))
    return "\n".join(lines) + "\n"


def parse_lp(text: str) -> LpProblem:
    """Inverse of :func:`format_lp`."""
    names = None
    objective = None
    bounds = None
    cons = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "vars":
            names = tuple(rest.split())
        elif head == "min":
            objective = tuple(float(v) for v in rest.split())
        elif head == "bounds":
            bounds = tuple(tuple(float(v) for v in item.split(":")) for item in rest.split())
        else:
            toks = line.split()
            cons.append(Constraint(tuple(float(v) for v in toks[:-2]), toks[-2], float(toks[-1])))
    if objective is None:
        raise ValueError("LP text has no 'min' line")
    return LpProblem(objective, tuple(cons), bounds, names)
