"""Cell enumeration and the marginal/agreement constraint system.

A d-way table with cats[i] categories in dimension i is handled as a flat
vector of prod(cats) cell probabilities. The enumeration puts variable 1
fastest: the cell index matrix has one row per flat cell holding its category
tuple, built by cycling column i with period prod(cats[:i]).

The linear system ties cell probabilities to the targets:

  * one row per (variable i, category j): the indicator of cells whose i-th
    coordinate is j; its dot with the cell vector is that marginal entry;
  * one row per variable pair (i, j), in lexicographic order: the indicator
    of cells where coordinates i and j agree; its dot is that pair's
    diagonal mass p0.

Any nonnegative cell vector solving A x = b is a joint distribution with the
requested marginals and pairwise agreements.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import SizeCapError, ValidationError
from .types import CellIndexMatrix

# Advisory dimension caps for uniform category counts (cells stay near 2^18).
MAX_DIMS_BY_K = {2: 18, 3: 11, 4: 9, 5: 8, 6: 8}
MAX_CELLS_DEFAULT = 2 ** 18


def _normalize_cats(cats, d=None) -> tuple:
    if np.isscalar(cats):
        if d is None:
            raise ValidationError("scalar category count needs an explicit d")
        cats = (int(cats),) * int(d)
    else:
        cats = tuple(int(c) for c in cats)
        if d is not None and len(cats) != d:
            raise ValidationError(f"cats has length {len(cats)}, expected d = {d}")
    if len(cats) < 1 or any(c < 2 for c in cats):
        raise ValidationError("every variable needs at least 2 categories")
    return cats


def check_size_cap(cats, d=None, *, max_cells: int | None = None) -> tuple:
    """Reject tables beyond the safety cap; returns the normalized cats.

    With uniform K in 2..6 the cap is the advisory dimension limit
    (18, 11, 9, 8, 8 cells-wise); otherwise the total cell count must stay
    at or below 2^18. Pass max_cells to override either cap explicitly.
    """
    cats = _normalize_cats(cats, d)
    n_cells = int(np.prod([float(c) for c in cats]))
    if max_cells is not None:
        if n_cells > max_cells:
            raise SizeCapError(f"{n_cells} cells exceed the override cap {max_cells}")
        return cats
    k = cats[0]
    if all(c == k for c in cats) and k in MAX_DIMS_BY_K:
        if len(cats) > MAX_DIMS_BY_K[k]:
            raise SizeCapError(
                f"d = {len(cats)} exceeds the cap {MAX_DIMS_BY_K[k]} for K = {k} "
                f"({n_cells} cells); pass max_cells to override"
            )
    elif n_cells > MAX_CELLS_DEFAULT:
        raise SizeCapError(
            f"{n_cells} cells exceed the default cap {MAX_CELLS_DEFAULT}; "
            f"pass max_cells to override"
        )
    return cats


def build_mat(cats, d=None) -> CellIndexMatrix:
    """Enumerate all category combinations, variable 1 fastest.

    build_mat(k, d) enumerates d variables with k categories each;
    build_mat([k1, ..., kd]) allows per-variable counts.
    """
    cats = _normalize_cats(cats, d)
    size = int(np.prod(cats))
    rows = np.empty((size, len(cats)), dtype=int)
    inner = 1
    for i, k in enumerate(cats):
        outer = size // (inner * k)
        rows[:, i] = np.tile(np.repeat(np.arange(1, k + 1), inner), outer)
        inner *= k
    return CellIndexMatrix(cats=cats, rows=rows)


def pair_order(d: int) -> list:
    """Lexicographic variable pairs (0-based): (0,1), (0,2), ..., (d-2,d-1)."""
    return list(combinations(range(d), 2))


def build_constraint_matrix(cats, d=None, mat: CellIndexMatrix | None = None) -> np.ndarray:
    """Build the 0/1 system matrix over the flat cell vector.

    Rows: first the marginal indicators, variable by variable and category by
    category (sum(cats) rows), then one agreement row per variable pair in
    lexicographic order (d choose 2 rows, none for d = 1).
    """
    if mat is None:
        mat = build_mat(cats, d)
    cats = mat.cats
    n_rows = int(sum(cats)) + len(cats) * (len(cats) - 1) // 2
    a = np.zeros((n_rows, mat.rows.shape[0]))
    r = 0
    for i, k in enumerate(cats):
        for j in range(1, k + 1):
            a[r] = mat.rows[:, i] == j
            r += 1
    for i, j in pair_order(len(cats)):
        a[r] = mat.rows[:, i] == mat.rows[:, j]
        r += 1
    return a


def build_rhs(marginals, pair_p0) -> np.ndarray:
    """Stack marginal entries and pairwise p0 targets in matrix row order."""
    parts = [np.asarray(p, dtype=float).ravel() for p in marginals]
    parts.append(np.asarray(pair_p0, dtype=float).ravel())
    return np.concatenate(parts)
