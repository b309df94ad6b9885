"""Cohen's kappa and the binary kappa/correlation relationship.

Kappa corrects raw agreement for chance: with observed agreement p0 (the
diagonal mass of the joint table) and chance agreement pc (the dot product of
the two marginals),

    kappa = (p0 - pc) / (1 - pc).

For two binary variables with success probabilities p1 and p2, kappa is a
linear function of the Pearson correlation rho of the underlying Bernoullis:
kappa = C * rho with a slope C in (0, 1] that depends only on the marginals.
"""
from __future__ import annotations

import numpy as np

from .errors import InfeasibleTargetError, UndefinedKappaError, ValidationError
from .types import AgreementSummary, BinaryScale, MarginalPMF, SquareTable

# Chance agreement within this of 1 makes kappa's denominator meaningless.
DEGENERATE_PC_TOL = 1e-12


def _as_prob_vector(p, name: str) -> np.ndarray:
    if isinstance(p, MarginalPMF):
        return p.probs
    v = np.asarray(p, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValidationError(f"{name} must be a 1-d vector of length >= 2")
    if not np.all(np.isfinite(v)) or np.any(v < 0):
        raise ValidationError(f"{name} must be finite and nonnegative")
    if abs(v.sum() - 1.0) > 1e-6:
        raise ValidationError(f"{name} sums to {v.sum()!r}, not 1")
    return v


def expected_agreement(pa, pb) -> float:
    """Chance agreement pc = sum_i pa_i * pb_i of two same-length marginals."""
    a = _as_prob_vector(pa, "pa")
    b = _as_prob_vector(pb, "pb")
    if a.size != b.size:
        raise ValidationError(f"marginal lengths differ: {a.size} vs {b.size}")
    return float(a @ b)


def _chance_agreement(a: np.ndarray, b: np.ndarray) -> float:
    # Internal variant for pairs whose category counts may differ: labels
    # beyond the shorter range can never agree, so they add nothing.
    k = min(a.size, b.size)
    return float(a[:k] @ b[:k])


def kappa_from_summary(p0: float, pc: float) -> AgreementSummary:
    """Assemble the (p0, pc, kappa) triple, guarding the pc -> 1 degeneracy."""
    if pc >= 1.0 - DEGENERATE_PC_TOL:
        raise UndefinedKappaError(f"kappa undefined: chance agreement pc = {pc!r}")
    return AgreementSummary(p0=float(p0), pc=float(pc), kappa=(p0 - pc) / (1.0 - pc))


def kappa_from_table(table) -> AgreementSummary:
    """Kappa of a joint K x K table (probabilities or counts)."""
    if not isinstance(table, SquareTable):
        table = SquareTable(np.asarray(table, dtype=float))
    p0 = table.diagonal_mass()
    pc = float(table.row_marginal() @ table.col_marginal())
    return kappa_from_summary(p0, pc)


def kappa_from_ratings(x, y, k: int | None = None) -> AgreementSummary:
    """Kappa of two label vectors (labels 1..k; k inferred when omitted)."""
    return kappa_from_table(SquareTable.from_ratings(x, y, k))


def _check_binary_p(p: float, name: str) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValidationError(f"{name} must lie strictly in (0, 1), got {p!r}")
    return p


def binary_scale_factor(p1: float, p2: float) -> BinaryScale:
    """Slope C of kappa = C * rho for Bernoulli(p1), Bernoulli(p2) raters.

    C = 2 sqrt(p1 p2 q1 q2) / (1 - p1 p2 - q1 q2) with q = 1 - p. By the
    AM-GM inequality on the denominator p1 q2 + p2 q1, C lies in (0, 1] and
    equals 1 exactly when p1 = p2.
    """
    p1 = _check_binary_p(p1, "p1")
    p2 = _check_binary_p(p2, "p2")
    q1, q2 = 1.0 - p1, 1.0 - p2
    c = 2.0 * np.sqrt(p1 * p2 * q1 * q2) / (1.0 - p1 * p2 - q1 * q2)
    return BinaryScale(c=float(c), p1=p1, p2=p2)


def _binary_rho_limits(p1: float, p2: float) -> tuple[float, float]:
    # Correlation range keeping all four joint cells nonnegative.
    q1, q2 = 1.0 - p1, 1.0 - p2
    lower = max(-np.sqrt(p1 * p2 / (q1 * q2)), -np.sqrt(q1 * q2 / (p1 * p2)))
    upper = min(np.sqrt(p1 * q2 / (q1 * p2)), np.sqrt(p2 * q1 / (p1 * q2)))
    return float(lower), float(upper)


def _binary_kappa_limits(p1: float, p2: float) -> tuple[float, float]:
    # The rho limits scaled by C, in closed form.
    q1, q2 = 1.0 - p1, 1.0 - p2
    den = 1.0 - p1 * p2 - q1 * q2
    lower = max(-2.0 * p1 * p2 / den, -2.0 * q1 * q2 / den)
    upper = min(2.0 * p1 * q2 / den, 2.0 * p2 * q1 / den)
    return float(lower), float(upper)


def binary_kappa_from_rho(rho: float, p1: float, p2: float) -> float:
    """Map a feasible Bernoulli correlation to the kappa it induces."""
    scale = binary_scale_factor(p1, p2)
    lo, hi = _binary_rho_limits(scale.p1, scale.p2)
    if not lo - 1e-12 <= rho <= hi + 1e-12:
        raise InfeasibleTargetError(
            f"rho = {rho!r} outside the feasible range [{lo:.6f}, {hi:.6f}] "
            f"for p1 = {scale.p1}, p2 = {scale.p2}"
        )
    return float(scale.c * rho)


def binary_rho_from_kappa(kappa: float, p1: float, p2: float) -> float:
    """Inverse map: the Bernoulli correlation behind a feasible binary kappa."""
    scale = binary_scale_factor(p1, p2)
    lo, hi = _binary_kappa_limits(scale.p1, scale.p2)
    if not lo - 1e-12 <= kappa <= hi + 1e-12:
        raise InfeasibleTargetError(
            f"kappa = {kappa!r} outside the feasible range [{lo:.6f}, {hi:.6f}] "
            f"for p1 = {scale.p1}, p2 = {scale.p2}"
        )
    return float(kappa / scale.c)
