"""Core value types shared across the package.

Everything here is a thin, validated wrapper around numpy arrays. Wrapped
arrays are made read-only so the frozen dataclasses are actually immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError

# Strict tolerance used by the value types themselves. The looser user-facing
# rescue (renormalize when the sum is off by up to 1e-6) lives in validation.py.
PMF_SUM_TOL = 1e-9
SYMMETRY_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MarginalPMF:
    """Marginal distribution of one categorical variable.

    Entries must be strictly inside (0, 1) and sum to 1 within 1e-9; the
    stored vector is rescaled to sum to exactly 1.
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise ValidationError("a marginal needs at least 2 categories in a 1-d vector")
        if not np.all(np.isfinite(p)):
            raise ValidationError("marginal probabilities must be finite")
        if np.any(p <= 0.0) or np.any(p >= 1.0):
            bad = int(np.argmax((p <= 0.0) | (p >= 1.0)))
            raise ValidationError(
                f"marginal probabilities must lie strictly in (0, 1); "
                f"entry {bad + 1} is {p[bad]!r}"
            )
        s = float(p.sum())
        if abs(s - 1.0) > PMF_SUM_TOL:
            raise ValidationError(f"marginal probabilities sum to {s!r}, not 1")
        object.__setattr__(self, "probs", _readonly(p / s))

    @property
    def k(self) -> int:
        """Number of categories."""
        return self.probs.size

    def __len__(self) -> int:
        return self.k


def as_pmf(p) -> MarginalPMF:
    """Coerce an array-like (or pass through a MarginalPMF) to MarginalPMF."""
    return p if isinstance(p, MarginalPMF) else MarginalPMF(np.asarray(p, dtype=float))


@dataclass(frozen=True, eq=False)
class SquareTable:
    """K x K joint table of two raters over the same K categories.

    Cells may hold probabilities or counts; they must be nonnegative with a
    positive total. Rows index the first rater, columns the second.
    """

    cells: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.cells, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 2:
            raise ValidationError(f"square table expected, got shape {t.shape}")
        if not np.all(np.isfinite(t)):
            raise ValidationError("table cells must be finite")
        if np.any(t < 0):
            raise ValidationError("table cells must be nonnegative")
        if t.sum() <= 0:
            raise ValidationError("table total must be positive")
        object.__setattr__(self, "cells", _readonly(t))

    @classmethod
    def from_probabilities(cls, cells) -> "SquareTable":
        t = np.asarray(cells, dtype=float)
        if abs(t.sum() - 1.0) > PMF_SUM_TOL:
            raise ValidationError(f"probability table sums to {t.sum()!r}, not 1")
        return cls(t)

    @classmethod
    def from_counts(cls, cells) -> "SquareTable":
        t = np.asarray(cells, dtype=float)
        if np.any(np.abs(t - np.round(t)) > 0):
            raise ValidationError("count table cells must be integers")
        return cls(t)

    @classmethod
    def from_ratings(cls, x, y, k: int | None = None) -> "SquareTable":
        """Cross-tabulate two label vectors (labels 1..k)."""
        x = np.asarray(x, dtype=int)
        y = np.asarray(y, dtype=int)
        if x.shape != y.shape or x.ndim != 1 or x.size == 0:
            raise ValidationError("ratings must be two equal-length nonempty 1-d vectors")
        if k is None:
            k = int(max(x.max(), y.max()))
        if k < 2:
            raise ValidationError("need at least 2 categories")
        if x.min() < 1 or y.min() < 1 or x.max() > k or y.max() > k:
            raise ValidationError(f"labels must lie in 1..{k}")
        cells = np.zeros((k, k))
        np.add.at(cells, (x - 1, y - 1), 1.0)
        return cls(cells)

    @property
    def k(self) -> int:
        return self.cells.shape[0]

    @property
    def total(self) -> float:
        return float(self.cells.sum())

    def row_marginal(self) -> np.ndarray:
        """First rater's marginal, normalized to sum 1."""
        return self.cells.sum(axis=1) / self.total

    def col_marginal(self) -> np.ndarray:
        """Second rater's marginal, normalized to sum 1."""
        return self.cells.sum(axis=0) / self.total

    def diagonal_mass(self) -> float:
        """Observed agreement p0 (normalized trace)."""
        return float(np.trace(self.cells)) / self.total


@dataclass(frozen=True, eq=False)
class MultiwayTable:
    """d-way joint table stored as a flat cell vector.

    ``cats[i]`` is the category count of variable i. The flat order puts
    variable 1 fastest: flat index f maps to category
    ``1 + (f // prod(cats[:i])) % cats[i]`` in dimension i. This matches the
    row order of :class:`CellIndexMatrix`.
    """

    cats: tuple
    cells: np.ndarray

    def __post_init__(self):
        cats = tuple(int(c) for c in self.cats)
        if len(cats) < 1 or any(c < 2 for c in cats):
            raise ValidationError("each dimension needs at least 2 categories")
        t = np.asarray(self.cells, dtype=float).ravel()
        size = int(np.prod(cats))
        if t.size != size:
            raise ValidationError(f"expected {size} cells, got {t.size}")
        if np.any(t < 0) or not np.all(np.isfinite(t)):
            raise ValidationError("cells must be finite and nonnegative")
        object.__setattr__(self, "cats", cats)
        object.__setattr__(self, "cells", _readonly(t))

    @property
    def d(self) -> int:
        return len(self.cats)

    def to_array(self) -> np.ndarray:
        """Reshape to a d-dimensional array indexed [cat1-1, ..., catd-1]."""
        return self.cells.reshape(self.cats, order="F")

    @classmethod
    def from_array(cls, a) -> "MultiwayTable":
        a = np.asarray(a, dtype=float)
        return cls(a.shape, a.ravel(order="F"))

    def to_square(self) -> SquareTable:
        if self.d != 2:
            raise ValidationError("to_square needs a 2-way table")
        return SquareTable(self.to_array())


@dataclass(frozen=True, eq=False)
class KappaMatrix:
    """Symmetric matrix of pairwise kappa targets with unit diagonal."""

    values: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.values, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValidationError(f"kappa matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValidationError("kappa matrix entries must be finite")
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
            raise ValidationError("kappa matrix is not symmetric")
        if np.any(np.diag(m) != 1.0):
            raise ValidationError("kappa matrix diagonal must be exactly 1")
        if np.any(np.abs(m) > 1.0):
            raise ValidationError("kappa matrix entries must lie in [-1, 1]")
        object.__setattr__(self, "values", _readonly((m + m.T) / 2.0))

    @property
    def d(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class RatingsDataset:
    """n x d matrix of integer labels, column j in 1..cats[j]."""

    values: np.ndarray
    cats: tuple

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.size == 0:
            raise ValidationError("ratings dataset must be a nonempty 2-d array")
        if not np.issubdtype(v.dtype, np.integer):
            if np.any(v != np.round(v)):
                raise ValidationError("ratings labels must be integers")
            v = v.astype(int)
        cats = tuple(int(c) for c in self.cats)
        if len(cats) != v.shape[1]:
            raise ValidationError("cats length must match the number of columns")
        for j, k in enumerate(cats):
            col = v[:, j]
            if col.min() < 1 or col.max() > k:
                raise ValidationError(f"column {j + 1} labels must lie in 1..{k}")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "cats", cats)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def pair_table(self, i: int, j: int) -> SquareTable:
        """Cross-tabulate columns i and j (0-based) on their common label range."""
        k = max(self.cats[i], self.cats[j])
        return SquareTable.from_ratings(self.values[:, i], self.values[:, j], k)

    def empirical_marginals(self) -> list[np.ndarray]:
        out = []
        for j, k in enumerate(self.cats):
            counts = np.bincount(self.values[:, j], minlength=k + 1)[1:]
            out.append(counts / self.n)
        return out


@dataclass(frozen=True)
class AgreementSummary:
    """Observed agreement, chance agreement and the kappa they imply."""

    p0: float
    pc: float
    kappa: float


@dataclass(frozen=True)
class BinaryScale:
    """Slope C of the binary kappa = C * rho relationship."""

    c: float
    p1: float
    p2: float


@dataclass(frozen=True)
class KappaBounds:
    """A (lower, upper) kappa bound pair and the method that produced it.

    For ``method='sorting'`` the pair is an empirical estimate and may be
    inverted (lower > upper); every other method guarantees lower <= upper.
    """

    lower: float
    upper: float
    method: str

    _METHODS = ("exact", "sorting", "p0zero", "binary-formula")

    def __post_init__(self):
        if self.method not in self._METHODS:
            raise ValidationError(f"unknown bounds method {self.method!r}")
        if self.method != "sorting" and self.lower > self.upper:
            raise ValidationError(
                f"{self.method} bounds out of order: ({self.lower}, {self.upper})"
            )


@dataclass(frozen=True)
class BisectionTrace:
    """Per-iteration record of the feasibility bisection on p0."""

    lbs: tuple
    ubs: tuple
    mids: tuple
    iterations: int
    p0_min: float


@dataclass(frozen=True, eq=False)
class StandardFormLP:
    """min c.x subject to A x = b, x >= 0 (phase 1 supplies its own cost)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.size:
            raise ValidationError(f"inconsistent LP shapes: A {a.shape}, b {b.shape}")
        object.__setattr__(self, "a", _readonly(a))
        object.__setattr__(self, "b", _readonly(b))


@dataclass(frozen=True, eq=False)
class LPSolution:
    """Outcome of a phase-1 solve.

    status is one of 'optimal' or 'iteration-limit'. x is the structural part
    of the solution, objective the residual artificial mass (0 when the
    original system is feasible), basis the final basic column indices over
    the extended [A | I] system.
    """

    status: str
    x: np.ndarray
    objective: float
    basis: tuple


@dataclass(frozen=True, eq=False)
class CellIndexMatrix:
    """Enumeration of all category combinations, variable 1 fastest.

    Row f of ``rows`` holds the category tuple of flat cell f, so the matrix
    has prod(cats) rows and d columns with entries in 1..cats[j].
    """

    cats: tuple
    rows: np.ndarray

    def __post_init__(self):
        cats = tuple(int(c) for c in self.cats)
        r = np.asarray(self.rows)
        size = int(np.prod(cats))
        if r.shape != (size, len(cats)):
            raise ValidationError(f"expected shape {(size, len(cats))}, got {r.shape}")
        r = r.astype(int).copy()
        r.flags.writeable = False
        object.__setattr__(self, "cats", cats)
        object.__setattr__(self, "rows", r)


@dataclass(frozen=True, eq=False)
class GenerationSpec:
    """Target marginals plus kappa matrix for a d-variable generation run."""

    pmat: tuple
    kmat: KappaMatrix

    def __post_init__(self):
        pmat = tuple(as_pmf(p) for p in self.pmat)
        if len(pmat) != self.kmat.d:
            raise ValidationError(
                f"{len(pmat)} marginals but kappa matrix of order {self.kmat.d}"
            )
        object.__setattr__(self, "pmat", pmat)

    @property
    def d(self) -> int:
        return len(self.pmat)

    @property
    def cats(self) -> tuple:
        return tuple(p.k for p in self.pmat)
