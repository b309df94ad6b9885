"""Phase-1 primal simplex for equality-form feasibility problems.

Given A x = b, x >= 0, we solve

    min 1.w   s.t.   A x + I w = b,   x >= 0, w >= 0

starting from the all-artificial basis (rows with negative b are sign-flipped
first so the start is primal feasible). The original system is feasible
exactly when the optimal artificial mass is zero, and the structural part of
the solution is then a witness.

Pivoting uses Bland's rule: the entering column is the lowest-index column
with a negative reduced cost, and ratio-test ties are broken by the lowest
basic-variable index. That pair of rules makes the method immune to cycling,
so the iteration cap (50 * (rows + structural columns) by default) is a
safety net for numerical pathologies only.

The tableau is dense; every system in this package is small (at most a few
dozen rows) and dense numpy row operations beat sparse bookkeeping there.
"""
from __future__ import annotations

import numpy as np

from .errors import IterationLimitError
from .types import LPSolution, StandardFormLP

FEASIBILITY_TOL = 1e-9   # artificial mass below this counts as feasible
PIVOT_TOL = 1e-10        # reduced costs / pivot elements below this are noise
RATIO_TIE_TOL = 1e-12    # ratios this close count as tied


def _unpack(a, b):
    if isinstance(a, StandardFormLP):
        if b is not None:
            raise TypeError("pass either a StandardFormLP or (a, b), not both")
        return a.a, a.b
    return np.asarray(a, dtype=float), np.asarray(b, dtype=float)


def solve_phase1(a, b=None, *, max_iter: int | None = None) -> LPSolution:
    """Run phase 1 on A x = b, x >= 0.

    Parameters
    ----------
    a, b : array-likes, or a single StandardFormLP in place of ``a``.
    max_iter : pivot cap; defaults to 50 * (m + n).

    Returns
    -------
    LPSolution with status 'optimal' or 'iteration-limit'. The objective is
    the leftover artificial mass; compare it against FEASIBILITY_TOL to decide
    feasibility (or use :func:`is_feasible`).
    """
    a, b = _unpack(a, b)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.size:
        raise ValueError(f"inconsistent shapes: A {a.shape}, b {b.shape}")
    m, n = a.shape
    if max_iter is None:
        max_iter = 50 * (m + n)

    # Tableau rows 0..m-1 are the constraints, row m the reduced-cost row.
    # Columns: n structural, m artificial, then the rhs.
    t = np.zeros((m + 1, n + m + 1))
    sign = np.where(b < 0.0, -1.0, 1.0)
    t[:m, :n] = a * sign[:, None]
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b * sign
    # Phase-1 cost is 0 on structural, 1 on artificial columns. With the
    # all-artificial basis, reduced costs are c_j - sum of column j.
    t[m, :n] = -t[:m, :n].sum(axis=0)
    t[m, -1] = -t[:m, -1].sum()

    basis = np.arange(n, n + m)
    status = "iteration-limit"
    for _ in range(max_iter):
        reduced = t[m, :-1]
        entering = np.flatnonzero(reduced < -PIVOT_TOL)
        if entering.size == 0:
            status = "optimal"
            break
        col = int(entering[0])  # Bland: lowest eligible index

        pivot_col = t[:m, col]
        rows = np.flatnonzero(pivot_col > PIVOT_TOL)
        if rows.size == 0:
            # A negative-reduced-cost column with no positive entries would
            # mean the objective is unbounded below, impossible for a sum of
            # nonnegative artificials; only severe numerical trouble gets here.
            raise IterationLimitError("phase-1 ratio test failed on every row")
        ratios = t[rows, -1] / pivot_col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + RATIO_TIE_TOL]
        row = int(tied[np.argmin(basis[tied])])  # Bland: lowest basic variable

        piv = t[row, col]
        t[row] /= piv
        other = t[:, col].copy()
        other[row] = 0.0
        t -= np.outer(other, t[row])
        basis[row] = col

    x_full = np.zeros(n + m)
    x_full[basis] = t[:m, -1]
    objective = float(x_full[n:].sum())
    return LPSolution(status=status, x=x_full[:n].copy(), objective=objective,
                      basis=tuple(int(j) for j in basis))


def is_feasible(a, b=None, *, max_iter: int | None = None):
    """Decide feasibility of A x = b, x >= 0.

    Returns (feasible, witness): witness is a structural solution when
    feasible, else None. Raises IterationLimitError if the solver hits its
    pivot cap without converging.
    """
    sol = solve_phase1(a, b, max_iter=max_iter)
    if sol.status != "optimal":
        raise IterationLimitError(
            f"phase-1 simplex exceeded its iteration cap (objective {sol.objective!r})"
        )
    if sol.objective <= FEASIBILITY_TOL:
        return True, sol.x
    return False, None
