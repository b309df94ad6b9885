"""Kappa-targeted generation of correlated nominal/ordinal samples.

The LP route (`generate_bivariate`, `generate_multivariate`):

  1. draw each variable's category counts from its multinomial marginal;
  2. convert every pairwise kappa target into a required diagonal mass
     p0 = (1 - pc) kappa + pc, clamp it into the feasible p0 range of the
     drawn marginals, and assemble the right-hand side from the drawn
     marginals plus the clamped agreements;
  3. find nonnegative cell probabilities with a phase-1 LP (redrawing the
     marginals a few times if the joint system happens to be infeasible);
  4. scale cells by n, round half away from zero, and repair the total back
     to n (deficit goes to the first zero cell, surplus comes off the
     largest cells);
  5. expand cells to label rows and shuffle them.

The sorting route (`sorting_generate_bivariate`) skips the LP: it sorts a
prefix of two independently drawn samples in the same (positive kappa) or
opposite (negative kappa) direction. It only reaches kappa values inside the
sorting-based bounds, which are narrower than the exact ones.
"""
from __future__ import annotations

import secrets
import warnings
from dataclasses import dataclass

import numpy as np

from .bounds import feasible_p0_range
from .constraints import build_constraint_matrix, build_mat, build_rhs, check_size_cap, pair_order
from .errors import InfeasibleTargetError, JointInfeasibleError, MethodFailureError, ValidationError
from .metrics import _as_prob_vector, _chance_agreement, kappa_from_ratings
from .simplex import is_feasible
from .types import GenerationSpec, KappaMatrix, RatingsDataset

CLAMP_WARN_TOL = 1e-6    # clamps larger than this are reported
DEFAULT_MAX_RETRIES = 10


@dataclass(frozen=True)
class ClampRecord:
    """One pairwise p0 target pushed back into its feasible range."""

    pair: tuple       # 1-based variable indices
    requested: float
    clamped: float


@dataclass(frozen=True, eq=False)
class GenerationResult:
    """A generated dataset plus everything needed to audit or replay it."""

    dataset: RatingsDataset
    seed: int
    method: str
    clamps: tuple
    retries: int


def _resolve_seed(seed) -> int:
    if seed is None:
        return secrets.randbits(64)
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


def generate_marginal_sample(pmf, n: int, rng=None, *, seed=None) -> np.ndarray:
    """Draw multinomial category counts for one variable."""
    p = _as_prob_vector(pmf, "pmf")
    if n < 1:
        raise ValidationError("need n >= 1")
    if rng is None:
        rng = np.random.default_rng(seed)
    return rng.multinomial(n, p)


def required_p0(kappa: float, pa, pb) -> float:
    """Diagonal mass a pair must carry to realize the kappa target.

    Inverts kappa = (p0 - pc) / (1 - pc) for the given marginals. Raises when
    the target falls outside the exact feasible kappa range.
    """
    a = _as_prob_vector(pa, "pa")
    b = _as_prob_vector(pb, "pb")
    pc = _chance_agreement(a, b)
    p0min, p0max = feasible_p0_range(a, b)
    lo = (p0min - pc) / (1.0 - pc)
    hi = (p0max - pc) / (1.0 - pc)
    kappa = float(kappa)
    if not lo - 1e-12 <= kappa <= hi + 1e-12:
        raise InfeasibleTargetError(
            f"kappa = {kappa!r} is infeasible for these marginals; the exact "
            f"range is [{lo:.6f}, {hi:.6f}]"
        )
    return (1.0 - pc) * kappa + pc


def _round_half_away(freq: np.ndarray) -> np.ndarray:
    # freq >= 0 here, so half away from zero is floor(x + 0.5). Unlike
    # np.round this never rounds half to even.
    return np.floor(freq + 0.5).astype(np.int64)


def _repair_total(counts: np.ndarray, n: int) -> np.ndarray:
    """Nudge rounded cell counts so they sum to exactly n."""
    counts = counts.copy()
    diff = int(n - counts.sum())
    if diff > 0:
        zeros = np.flatnonzero(counts == 0)
        # First zero cell by flat index; a table with no zero cell at all can
        # only happen for tiny systems, then the smallest cell takes it.
        idx = int(zeros[0]) if zeros.size else int(np.argmin(counts))
        counts[idx] += diff
    while diff < 0:
        idx = int(np.argmax(counts))  # first largest by flat index
        take = min(-diff, int(counts[idx]))
        counts[idx] -= take
        diff += take
    return counts


def _counts_to_rows(counts: np.ndarray, mat_rows: np.ndarray, rng) -> np.ndarray:
    rows = np.repeat(mat_rows, counts, axis=0)
    rng.shuffle(rows)
    return rows


def _generate_lp_core(pmat, kmat: np.ndarray, n: int, rng, *, pc_source: str,
                      max_retries: int, max_cells) -> tuple:
    """Shared LP generation path. pmat entries are validated prob vectors."""
    cats = tuple(p.size for p in pmat)
    check_size_cap(cats, max_cells=max_cells)
    d = len(cats)
    pairs = pair_order(d)
    mat = build_mat(cats)
    system = build_constraint_matrix(cats, mat=mat)

    pc_spec = {(i, j): _chance_agreement(pmat[i], pmat[j]) for i, j in pairs}

    witness = None
    clamps = []
    attempt = 0
    while attempt < max_retries:
        attempt += 1
        counts = [rng.multinomial(n, p) for p in pmat]
        pg = [c / n for c in counts]

        clamps = []
        pair_p0 = []
        for i, j in pairs:
            pc = pc_spec[(i, j)] if pc_source == "specified" \
                else _chance_agreement(pg[i], pg[j])
            p0req = (1.0 - pc) * kmat[i, j] + pc
            lo, hi = feasible_p0_range(pg[i], pg[j])
            p0 = min(max(p0req, lo), hi)
            if abs(p0 - p0req) > CLAMP_WARN_TOL:
                clamps.append(ClampRecord(pair=(i + 1, j + 1),
                                          requested=p0req, clamped=p0))
            pair_p0.append(p0)

        ok, x = is_feasible(system, build_rhs(pg, pair_p0))
        if ok:
            witness = x
            break
    if witness is None:
        raise JointInfeasibleError(
            f"no joint table satisfied the drawn marginals and agreement "
            f"targets in {max_retries} attempts"
        )

    for c in clamps:
        warnings.warn(
            f"pair {c.pair}: required p0 {c.requested:.6f} clamped to "
            f"{c.clamped:.6f} for the drawn marginals", stacklevel=3)

    cell_counts = _repair_total(_round_half_away(np.maximum(witness, 0.0) * n), n)
    values = _counts_to_rows(cell_counts, mat.rows, rng)
    dataset = RatingsDataset(values=values, cats=cats)
    return dataset, tuple(clamps), attempt - 1


def _check_pc_source(pc_source: str) -> str:
    if pc_source not in ("specified", "generated"):
        raise ValidationError(f"pc_source must be 'specified' or 'generated', got {pc_source!r}")
    return pc_source


def generate_bivariate(pa, pb, kappa: float, n: int, seed=None, *,
                       pc_source: str = "specified",
                       max_retries: int = DEFAULT_MAX_RETRIES,
                       max_cells=None) -> GenerationResult:
    """Generate n paired ratings with the given marginals and kappa target.

    kappa must lie inside the exact feasible range of the specified
    marginals. pc_source chooses whether the chance-agreement term in the
    p0 target comes from the specified or the drawn marginals; 'generated'
    tracks the target more tightly at small n.
    """
    from .validation import validate_marginals

    pmat = validate_marginals([pa, pb])
    _check_pc_source(pc_source)
    if n < 1:
        raise ValidationError("need n >= 1")
    required_p0(kappa, pmat[0], pmat[1])  # raises if the target is infeasible
    kmat = np.array([[1.0, kappa], [kappa, 1.0]])
    seed = _resolve_seed(seed)
    rng = np.random.default_rng(seed)
    dataset, clamps, retries = _generate_lp_core(
        [p.probs for p in pmat], kmat, n, rng, pc_source=pc_source,
        max_retries=max_retries, max_cells=max_cells)
    return GenerationResult(dataset=dataset, seed=seed, method="lp",
                            clamps=clamps, retries=retries)


def generate_multivariate(spec, n: int, seed=None, *,
                          pc_source: str = "specified",
                          max_retries: int = DEFAULT_MAX_RETRIES,
                          max_cells=None, validate: bool = True) -> GenerationResult:
    """Generate n rows of d correlated categorical variables.

    spec is a GenerationSpec (or a (pmat, kmat) pair): per-variable marginals
    plus the symmetric positive definite matrix of pairwise kappa targets.
    With d = 2 this reproduces generate_bivariate bit for bit for the same
    seed. Raises JointInfeasibleError when no contingency table supports the
    requested structure even after redrawing the marginals.
    """
    from .validation import validate_generation_spec

    if not isinstance(spec, GenerationSpec):
        pmat, kmat = spec
        spec = GenerationSpec(pmat=tuple(pmat), kmat=kmat if isinstance(kmat, KappaMatrix)
                              else KappaMatrix(np.asarray(kmat, dtype=float)))
    if validate:
        validate_generation_spec(spec)
    _check_pc_source(pc_source)
    if n < 1:
        raise ValidationError("need n >= 1")
    seed = _resolve_seed(seed)
    rng = np.random.default_rng(seed)
    dataset, clamps, retries = _generate_lp_core(
        [p.probs for p in spec.pmat], spec.kmat.values, n, rng,
        pc_source=pc_source, max_retries=max_retries, max_cells=max_cells)
    return GenerationResult(dataset=dataset, seed=seed, method="lp",
                            clamps=clamps, retries=retries)


def sorting_generate_bivariate(pa, pb, kappa: float, n: int, seed=None) -> GenerationResult:
    """Generate paired ratings by sorting a prefix of two independent samples.

    Draws both samples, estimates the sorting-based kappa bounds from them,
    then sorts the leading floor(n * kappa / bound) rows of both columns in
    the same direction (positive kappa) or opposite directions (negative).
    Raises MethodFailureError when kappa lies outside the sorting bounds;
    the LP method covers the full exact range.
    """
    from .validation import validate_marginals

    pmat = validate_marginals([pa, pb])
    a, b = pmat[0].probs, pmat[1].probs
    if a.size != b.size:
        raise ValidationError(f"marginal lengths differ: {a.size} vs {b.size}")
    if n < 2:
        raise ValidationError("need n >= 2")
    kappa = float(kappa)
    seed = _resolve_seed(seed)
    rng = np.random.default_rng(seed)

    labels = np.arange(1, a.size + 1)
    xs = np.repeat(labels, rng.multinomial(n, a))
    ys = np.repeat(labels, rng.multinomial(n, b))
    rng.shuffle(xs)
    rng.shuffle(ys)

    upper = kappa_from_ratings(np.sort(xs), np.sort(ys), a.size).kappa
    lower = kappa_from_ratings(np.sort(xs), np.sort(ys)[::-1], a.size).kappa

    if kappa == 0.0:
        m = 0
    elif kappa > 0:
        if upper <= 0 or kappa > upper:
            raise MethodFailureError(
                f"kappa = {kappa!r} is outside the sorting-based range "
                f"[{lower:.4f}, {upper:.4f}] for these marginals; use the LP method"
            )
        m = int(np.floor(n * kappa / upper))
    else:
        if lower >= 0 or kappa < lower:
            raise MethodFailureError(
                f"kappa = {kappa!r} is outside the sorting-based range "
                f"[{lower:.4f}, {upper:.4f}] for these marginals; use the LP method"
            )
        m = int(np.floor(n * kappa / lower))

    if m > 0:
        xs[:m] = np.sort(xs[:m])
        head = np.sort(ys[:m])
        ys[:m] = head if kappa > 0 else head[::-1]

    dataset = RatingsDataset(values=np.column_stack([xs, ys]),
                             cats=(a.size, b.size))
    return GenerationResult(dataset=dataset, seed=seed, method="sorting",
                            clamps=(), retries=0)


def empirical_kappa_matrix(dataset: RatingsDataset) -> np.ndarray:
    """Pairwise kappa matrix of a dataset's own columns."""
    d = dataset.d
    out = np.eye(d)
    for i, j in pair_order(d):
        k = kappa_from_ratings(dataset.values[:, i], dataset.values[:, j],
                               max(dataset.cats[i], dataset.cats[j])).kappa
        out[i, j] = out[j, i] = k
    return out
