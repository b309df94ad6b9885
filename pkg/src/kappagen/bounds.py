"""Feasible kappa ranges for a pair of marginals.

Four bound families, from cheapest to most informative:

  * binary closed forms (K = 2 only), for kappa and for the underlying
    Bernoulli correlation;
  * the p0 = 0 motivated lower bound -pc / (1 - pc), which ignores whether a
    zero-diagonal table actually exists and can fall below -1;
  * Cohen's upper bound from the best achievable agreement
    p0max = sum_i min(pa_i, pb_i);
  * the exact lower bound: a bisection on p0 whose feasibility oracle is a
    phase-1 LP over the cell probabilities, so it respects the marginals
    exactly.

`sorting_based_bounds` adds the empirical estimate obtained by co-sorting or
anti-sorting two independent samples; it is cheap but not trustworthy (the
estimated lower bound can exceed the estimated upper bound).
"""
from __future__ import annotations

import numpy as np

from .constraints import build_constraint_matrix, build_rhs
from .errors import IterationLimitError, ValidationError
from .metrics import (_as_prob_vector, _binary_kappa_limits, _binary_rho_limits,
                      _chance_agreement, binary_scale_factor, kappa_from_ratings)
from .simplex import is_feasible
from .types import BisectionTrace, KappaBounds

DEFAULT_EPS = 1e-5       # relative width at which the bisection stops
EPS_ABS_FLOOR = 1e-12    # stands in for lb in the relative test while lb = 0
MAX_BISECTIONS = 500


def binary_rho_bounds(p1: float, p2: float) -> tuple:
    """Feasible Bernoulli correlation range for marginals p1, p2 (K = 2)."""
    scale = binary_scale_factor(p1, p2)  # validates p1, p2
    return _binary_rho_limits(scale.p1, scale.p2)


def binary_kappa_bounds(p1: float, p2: float) -> KappaBounds:
    """Closed-form kappa range for two binary raters.

    Equals the rho range scaled by the slope C. kappa = -1 is attainable only
    at p1 = p2 = 1/2 and kappa = +1 only at p1 = p2.
    """
    scale = binary_scale_factor(p1, p2)
    lo, hi = _binary_kappa_limits(scale.p1, scale.p2)
    return KappaBounds(lower=lo, upper=hi, method="binary-formula")


def _pair_vectors(pa, pb):
    a = _as_prob_vector(pa, "pa")
    b = _as_prob_vector(pb, "pb")
    return a, b


def feasible_p0_range(pa, pb) -> tuple:
    """Exact range of achievable agreement p0 for the given marginals.

    p0max = sum_i min(pa_i, pb_i) (pair categories greedily). p0min comes
    from the transportation polytope: cell (i, i) can never hold less than
    the Frechet floor pa_i + pb_i - 1, at most one category can have a
    positive floor (the floors sum to at most 2 - 2 = 0 over the rest), and
    a max-flow cut argument shows that single floor is jointly attainable
    with zeros elsewhere on the diagonal. Hence
    p0min = max(0, max_i(pa_i + pb_i) - 1).
    """
    a, b = _pair_vectors(pa, pb)
    k = min(a.size, b.size)
    p0max = float(np.minimum(a[:k], b[:k]).sum())
    p0min = max(0.0, float((a[:k] + b[:k]).max()) - 1.0)
    return p0min, p0max


def cohen_upper_bound(pa, pb) -> float:
    """Largest kappa the marginals allow: (p0max - pc) / (1 - pc)."""
    a, b = _pair_vectors(pa, pb)
    pc = _chance_agreement(a, b)
    _, p0max = feasible_p0_range(a, b)
    return (p0max - pc) / (1.0 - pc)


def p0_zero_lower_bound(pa, pb) -> float:
    """Kappa at p0 = 0, i.e. -pc / (1 - pc). May fall below -1.

    This is only the true lower bound when a zero-diagonal table with the
    given marginals exists; `exact_lower_bound` settles that.
    """
    a, b = _pair_vectors(pa, pb)
    pc = _chance_agreement(a, b)
    return -pc / (1.0 - pc)


def exact_lower_bound(pa, pb, eps: float = DEFAULT_EPS, *, return_trace: bool = False):
    """Smallest kappa achievable with the given marginals.

    First tests p0 = 0 with a phase-1 LP; if a zero-diagonal table exists the
    p0 = 0 bound is exact and returned directly. Otherwise the smallest
    feasible p0 is bracketed by bisection (0 infeasible, p0max feasible),
    tightening until (ub - lb) / max(lb, 1e-12) < eps, and the final upper
    end is converted to kappa. With return_trace=True also returns the
    per-iteration BisectionTrace.

    eps is relative, so the returned kappa sits within roughly
    eps * p0min / (1 - pc) above the true lower bound.
    """
    if eps <= 0:
        raise ValidationError(f"eps must be positive, got {eps!r}")
    a, b = _pair_vectors(pa, pb)
    pc = _chance_agreement(a, b)
    system = build_constraint_matrix((a.size, b.size))

    def p0_feasible(p0):
        ok, _ = is_feasible(system, build_rhs([a, b], [p0]))
        return ok

    if p0_feasible(0.0):
        trace = BisectionTrace(lbs=(), ubs=(), mids=(), iterations=0, p0_min=0.0)
        kappa = -pc / (1.0 - pc)
        return (kappa, trace) if return_trace else kappa

    _, p0max = feasible_p0_range(a, b)
    lb, ub = 0.0, p0max
    lbs, ubs, mids = [lb], [ub], []
    iterations = 0
    while (ub - lb) / max(lb, EPS_ABS_FLOOR) >= eps:
        if iterations >= MAX_BISECTIONS:
            raise IterationLimitError(
                f"p0 bisection did not converge in {MAX_BISECTIONS} steps"
            )
        mb = (lb + ub) / 2.0
        if p0_feasible(mb):
            ub = mb
        else:
            lb = mb
        mids.append(mb)
        lbs.append(lb)
        ubs.append(ub)
        iterations += 1

    kappa = (ub - pc) / (1.0 - pc)
    if return_trace:
        return kappa, BisectionTrace(lbs=tuple(lbs), ubs=tuple(ubs),
                                     mids=tuple(mids), iterations=iterations,
                                     p0_min=ub)
    return kappa


def exact_bounds(pa, pb, eps: float = DEFAULT_EPS) -> KappaBounds:
    """Exact lower bound paired with Cohen's upper bound."""
    return KappaBounds(lower=exact_lower_bound(pa, pb, eps),
                       upper=cohen_upper_bound(pa, pb), method="exact")


def p0_zero_bounds(pa, pb) -> KappaBounds:
    """The p0 = 0 motivated lower bound paired with Cohen's upper bound."""
    return KappaBounds(lower=p0_zero_lower_bound(pa, pb),
                       upper=cohen_upper_bound(pa, pb), method="p0zero")


def sorting_based_bounds(pa, pb, n: int = 10000, seed=None,
                         rng: np.random.Generator | None = None) -> KappaBounds:
    """Empirical kappa range from sorting two independent samples of size n.

    The upper estimate aligns both samples in ascending order, the lower
    aligns one ascending against the other descending; each kappa uses the
    sample's own empirical table. The estimates need not bracket anything:
    for some marginal pairs the 'upper' comes out below the 'lower'.
    """
    a, b = _pair_vectors(pa, pb)
    if a.size != b.size:
        raise ValidationError(f"marginal lengths differ: {a.size} vs {b.size}")
    if n < 2:
        raise ValidationError("need n >= 2 samples")
    if rng is None:
        rng = np.random.default_rng(seed)
    counts_a = rng.multinomial(n, a)
    counts_b = rng.multinomial(n, b)
    labels = np.arange(1, a.size + 1)
    xs = np.repeat(labels, counts_a)   # ascending sample of rater 1
    ys = np.repeat(labels, counts_b)   # ascending sample of rater 2
    upper = kappa_from_ratings(xs, ys, a.size).kappa
    lower = kappa_from_ratings(xs, ys[::-1], a.size).kappa
    return KappaBounds(lower=lower, upper=upper, method="sorting")
