"""Derivative-free maximization of a unimodal function of power.

Used as an independent check on the closed-form optimal relay power, and as
a fallback optimizer for any capacity curve that vanishes at both ends of the
power axis. All searching happens in log-power, since optimal powers span many
decades.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import MaxIterationsError, NoPositiveValueError, ParameterError

__all__ = [
    "SearchResult",
    "bracket_maximum",
    "golden_section_max",
    "argmax_power",
    "count_sign_changes",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GROWTH = 1.0 + 1.0 / _INV_PHI  # step expansion factor, as in a standard downhill bracket
_MAX_ITER = 500
_MAX_BRACKET_STEPS = 200
_LOG_LIMIT = 600.0  # keep exp(x) finite


@dataclass(frozen=True)
class SearchResult:
    argmax_p_r: float
    max_value: float
    bracket: tuple
    iterations: int


def bracket_maximum(f, p_init, step=1.0):
    """Find ``(low, high)`` around a maximum of `f`, starting from `p_init`.

    Steps geometrically in ``log p`` (expanding by the golden ratio) uphill
    until the function turns down. The returned interval contains a point
    whose value beats both ends.

    Raises
    ------
    NoPositiveValueError
        If no probed value is positive, e.g. a capacity that is <= 0 for all
        powers.
    """
    if not p_init > 0:
        raise ParameterError("p_init", f"must be > 0, got {p_init!r}")
    g = lambda x: f(math.exp(x))
    a, b = math.log(p_init), math.log(p_init) + step
    fa, fb = g(a), g(b)
    if fb < fa:
        a, b, fa, fb = b, a, fb, fa
    c = b + _GROWTH * (b - a)
    fc = g(c)
    best = max(fa, fb, fc)
    steps = 0
    while fc >= fb:
        steps += 1
        a, b, fa, fb = b, c, fb, fc
        c = b + _GROWTH * (b - a)
        if steps > _MAX_BRACKET_STEPS or abs(c) > _LOG_LIMIT:
            if best <= 0:
                raise NoPositiveValueError(f"objective never positive over {steps} bracketing steps")
            raise NoPositiveValueError("objective kept increasing; no interior maximum found")
        fc = g(c)
        best = max(best, fc)
    if fb <= 0:
        raise NoPositiveValueError(f"objective peak {fb!r} is not positive")
    lo, hi = sorted((a, c))
    return math.exp(lo), math.exp(hi)


def golden_section_max(f, bracket, rel_tol=1e-8):
    """Golden-section search for the maximum of unimodal `f` on `bracket`.

    Stops once ``high/low - 1 <= rel_tol``; `argmax_p_r` is the best interior
    point of the final bracket.
    """
    if not 1e-12 < rel_tol < 1e-2:
        raise ParameterError("rel_tol", f"must lie in (1e-12, 1e-2), got {rel_tol!r}")
    lo, hi = bracket
    if not 0 < lo < hi:
        raise ParameterError("bracket", f"need 0 < low < high, got {bracket!r}")
    a, b = math.log(lo), math.log(hi)
    width_tol = math.log1p(rel_tol)
    g = lambda x: f(math.exp(x))

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    iterations = 0
    while b - a > width_tol:
        iterations += 1
        if iterations > _MAX_ITER:
            raise MaxIterationsError(f"golden-section search did not converge in {_MAX_ITER} iterations")
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = g(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    return SearchResult(argmax_p_r=math.exp(x), max_value=fx,
                        bracket=(math.exp(a), math.exp(b)), iterations=iterations)


def argmax_power(f, p_init=1.0, rel_tol=1e-8):
    """Bracket then refine: the numerical argmax of `f` over powers."""
    return golden_section_max(f, bracket_maximum(f, p_init), rel_tol)


def count_sign_changes(values):
    """Number of sign changes in the first differences of `values`, ignoring zero steps."""
    signs = np.sign(np.diff(np.asarray(values, dtype=float)))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
