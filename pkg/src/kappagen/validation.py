"""Input validation helpers for user-supplied marginals and kappa matrices."""
from __future__ import annotations

import numpy as np

from .bounds import cohen_upper_bound, exact_lower_bound
from .errors import ValidationError
from .types import GenerationSpec, KappaMatrix, MarginalPMF

MARGINAL_SUM_RESCUE = 1e-6   # sums this close to 1 are silently renormalized
CHOLESKY_PIVOT_TOL = 1e-10


def validate_marginals(pmat) -> list:
    """Check and normalize a list of per-variable marginals.

    Accepts a sequence of vectors (or a 2-d array whose columns are the
    variables). Entries must be strictly inside (0, 1); sums may be off from
    1 by at most 1e-6 and are rescaled to exactly 1. Returns MarginalPMFs.
    """
    if isinstance(pmat, np.ndarray) and pmat.ndim == 2:
        pmat = [pmat[:, j] for j in range(pmat.shape[1])]
    out = []
    for j, p in enumerate(pmat):
        if isinstance(p, MarginalPMF):
            out.append(p)
            continue
        v = np.asarray(p, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise ValidationError(f"variable {j + 1}: marginal must be a vector of length >= 2")
        if not np.all(np.isfinite(v)):
            raise ValidationError(f"variable {j + 1}: marginal entries must be finite")
        if np.any(v <= 0.0) or np.any(v >= 1.0):
            raise ValidationError(
                f"variable {j + 1}: marginal entries must lie strictly in (0, 1)")
        s = float(v.sum())
        if abs(s - 1.0) > MARGINAL_SUM_RESCUE:
            raise ValidationError(
                f"variable {j + 1}: marginal sums to {s!r}, more than 1e-6 from 1")
        out.append(MarginalPMF(v / s))
    if not out:
        raise ValidationError("need at least one marginal")
    return out


def _cholesky_pivots(m: np.ndarray):
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return None
    return np.diag(chol) ** 2


def validate_kappa_matrix(kmat, pmat, eps: float = 1e-5) -> KappaMatrix:
    """Check a kappa target matrix against its marginals.

    Requires symmetry, a unit diagonal, positive definiteness (smallest
    Cholesky pivot above 1e-10, so merely semidefinite matrices fail), and
    every off-diagonal entry inside the exact feasible kappa range of its
    marginal pair (bisection lower bound, Cohen upper bound). All violations
    are collected into one error.
    """
    if not isinstance(kmat, KappaMatrix):
        kmat = KappaMatrix(np.asarray(kmat, dtype=float))
    pmat = validate_marginals(pmat)
    if len(pmat) != kmat.d:
        raise ValidationError(
            f"kappa matrix of order {kmat.d} but {len(pmat)} marginals")

    problems = []
    pivots = _cholesky_pivots(kmat.values)
    if pivots is None:
        problems.append("kappa matrix is not positive definite")
    elif pivots.min() <= CHOLESKY_PIVOT_TOL:
        problems.append(
            f"kappa matrix is numerically singular (smallest Cholesky pivot "
            f"{pivots.min():.3e})")

    for i in range(kmat.d):
        for j in range(i + 1, kmat.d):
            lo = exact_lower_bound(pmat[i], pmat[j], eps)
            hi = cohen_upper_bound(pmat[i], pmat[j])
            k = kmat.values[i, j]
            if not lo <= k <= hi:
                problems.append(
                    f"kappa[{i + 1},{j + 1}] = {k} outside the feasible range "
                    f"[{lo:.6f}, {hi:.6f}]")
    if problems:
        raise ValidationError("; ".join(problems))
    return kmat


def validate_generation_spec(spec: GenerationSpec, eps: float = 1e-5) -> GenerationSpec:
    """Validate a full generation spec (marginals plus kappa matrix)."""
    validate_kappa_matrix(spec.kmat, list(spec.pmat), eps)
    return spec
