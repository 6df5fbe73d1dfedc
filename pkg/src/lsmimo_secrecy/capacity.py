"""Closed-form secrecy outage capacity and optimal relay power.

Everything here is written in the shorthand of :class:`DerivedParams`:
``A = rho*alpha_rd*N_R``, ``B = P_S*alpha_sr*N_R`` and the relative path
loss ``r_l``. With ``c = B + 1`` the capacity at relay power ``P`` is::

    C(P) = W*log2(1 + P*A*B / (P*A + c)) - W*log2(1 + P*A*B*r_l / (P*A*r_l + c))

which is positive for every ``P > 0`` iff ``0 < r_l < 1``, vanishes at both
ends of the power axis and peaks at ``P* = sqrt(r_l*c) / (A*r_l)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSourceError, InfeasibleSecrecyError
from .system_model import antenna_threshold, derive_params

__all__ = [
    "AllocationResult",
    "closed_form_csoc",
    "csoc_terms",
    "csoc_derivative",
    "optimal_power",
    "optimal_power_from_params",
    "stationary_points",
    "max_csoc",
    "max_csoc_two_log",
    "saturation_ceiling",
    "positivity",
    "uncorrected_large_array_csoc",
]

_LN2 = math.log(2.0)
_P_STAR_FORMS_RTOL = 1e-12
_MAX_FORMS_RTOL = 1e-9


@dataclass(frozen=True)
class AllocationResult:
    p_r_star: float
    c_soc_max: float
    ceiling: float

    @property
    def snr_r_star_db(self):
        return 10.0 * math.log10(self.p_r_star)


def _as_real(p):
    # np.longdouble inputs are kept, giving an extended-precision evaluation
    p = np.asarray(p)
    return p if p.dtype == np.longdouble else p.astype(float)


def _scalar_or_array(x):
    if x.ndim:
        return x
    return x[()] if x.dtype == np.longdouble else float(x)


def closed_form_csoc(derived, w, p_r):
    """Secrecy outage capacity in bits/s at relay power `p_r` (scalar or array).

    Pass ``np.longdouble`` powers for an extended-precision evaluation.

    Evaluated as ``W*log2((1 + gamma_D) / (1 + gamma_E))`` with the ratio
    expanded exactly::

        (1 + gamma_D) / (1 + gamma_E) = 1 + P*A*B*(1 - r_l) / ((P*A + B + 1)*(P*A*r_l + 1))

    so the result keeps full relative precision as ``P -> 0``, ``P -> inf``
    and ``r_l -> 1``. It is exactly 0 at ``p_r = 0`` and at ``r_l = 1``, and
    negative (not clamped) for ``r_l > 1``.
    """
    p = _as_real(p_r)
    a, b, r = derived.a, derived.b, derived.r_l
    pa = p * a
    x = b * (1.0 - r) * (pa / (pa + b + 1.0)) / (pa * r + 1.0)
    return _scalar_or_array(w * np.log1p(x) / _LN2)


def csoc_terms(derived, w, p_r):
    """Return ``(C_D, C_E)``, the two rate terms of the capacity, evaluated literally.

    ``C_D - C_E`` equals :func:`closed_form_csoc` up to rounding; this form is
    kept as an independent cross-check of the rearranged expression.
    """
    p = np.asarray(p_r, dtype=float)
    a, b, r = derived.a, derived.b, derived.r_l
    c_d = w * np.log2(1.0 + p * a * b / (p * a + b + 1.0))
    c_e = w * np.log2(1.0 + p * a * b * r / (p * a * r + b + 1.0))
    return _scalar_or_array(c_d), _scalar_or_array(c_e)


def csoc_derivative(derived, w, p_r):
    """dC/dP at `p_r`, in bits/s per unit power.

    Positive below the optimal power, zero at it, negative above.
    """
    p = np.asarray(p_r, dtype=float)
    a, b, r = derived.a, derived.b, derived.r_l
    c = b + 1.0
    legit = a / ((p * a + c) ** 2 + p * a * b * (p * a + c))
    eaves = a * r / ((p * a * r + c) ** 2 + p * a * b * r * (p * a * r + c))
    return _scalar_or_array(w / _LN2 * b * c * (legit - eaves))


def stationary_points(derived):
    """Both roots of dC/dP = 0, ``(+sqrt(r_l(B+1))/(A r_l), -sqrt(r_l(B+1))/(A r_l))``.

    Only the first is a physical power. The second is returned for inspection.
    """
    root = math.sqrt(derived.r_l * (derived.b + 1.0)) / (derived.a * derived.r_l)
    return root, -root


def _check_optimizable(derived):
    if not (0.0 < derived.r_l < 1.0) or not derived.secrecy_feasible:
        raise InfeasibleSecrecyError(derived.r_l)
    if derived.b <= 0.0:
        raise DegenerateSourceError("source power is zero: capacity is identically zero, no optimum")


def optimal_power(derived):
    """Relay power maximizing the secrecy outage capacity.

    Computes ``sqrt(r_l*(B+1)) / (A*r_l)`` and, independently, the equivalent
    ``sqrt((B+1) / (A * (-alpha_re ln eps)))``; the two must agree to 1e-12.

    Raises
    ------
    InfeasibleSecrecyError
        If ``r_l >= 1``.
    DegenerateSourceError
        If ``B == 0``.
    """
    _check_optimizable(derived)
    p_star, _ = stationary_points(derived)
    alt = math.sqrt((derived.b + 1.0) / (derived.a * derived.a_r_l))
    if abs(p_star - alt) > _P_STAR_FORMS_RTOL * p_star:
        raise ArithmeticError(f"optimal power forms disagree: {p_star!r} vs {alt!r}")
    return p_star


def optimal_power_from_params(params):
    """Optimal relay power written directly in the physical parameters.

    ``sqrt((P_S alpha_sr N_R + 1) / (-alpha_re rho alpha_rd N_R ln eps))``.
    """
    num = params.p_s * params.alpha_sr * params.n_r + 1.0
    den = -params.alpha_re * params.rho * params.alpha_rd * params.n_r * math.log(params.epsilon)
    return math.sqrt(num / den)


def _two_log_terms(derived, w):
    b, r = derived.b, derived.r_l
    first = w * math.log1p(b / (1.0 + math.sqrt(r * (1.0 + b)))) / _LN2
    second = w * math.log1p(b / (1.0 + math.sqrt((1.0 + b) / r))) / _LN2
    return first, second


def max_csoc_two_log(derived, w):
    """Maximum capacity from its own two-log expression (no optimal power needed)::

        W log2(1 + B/(1 + sqrt(r_l (1+B)))) - W log2(1 + B/(1 + sqrt((1+B)/r_l)))
    """
    first, second = _two_log_terms(derived, w)
    return first - second


def max_csoc(params):
    """Optimal relay power, the capacity it achieves and the high-P_S ceiling.

    The capacity at the optimum is cross-checked against
    :func:`max_csoc_two_log`; a disagreement beyond 1e-9 relative raises.
    """
    derived = derive_params(params)
    try:
        p_star = optimal_power(derived)
    except InfeasibleSecrecyError as exc:
        raise InfeasibleSecrecyError(exc.r_l, antenna_threshold(params)) from None
    c_max = closed_form_csoc(derived, params.w, p_star)
    first, second = _two_log_terms(derived, params.w)
    c_check = first - second
    # The two-log form subtracts nearly equal terms; allow for that rounding.
    if abs(c_max - c_check) > _MAX_FORMS_RTOL * abs(c_max) + 1e-14 * first:
        raise ArithmeticError(f"maximum capacity forms disagree: {c_max!r} vs {c_check!r}")
    return AllocationResult(p_r_star=p_star, c_soc_max=c_max,
                            ceiling=saturation_ceiling(derived, params.w))


def saturation_ceiling(derived, w):
    """Limit of the maximum capacity as P_S grows: ``W log2(1/r_l)``."""
    if not 0.0 < derived.r_l < 1.0:
        raise InfeasibleSecrecyError(derived.r_l)
    return -w * math.log2(derived.r_l)


def positivity(derived):
    """True iff 0 < r_l < 1, i.e. the capacity is positive at every relay power."""
    return bool(0.0 < derived.r_l < 1.0)


def uncorrected_large_array_csoc(params, p_r):
    """Large-array capacity with the eavesdropper term in its uncorrected form.

    The second log here is ``log2(1 + P_S P_R a_sr a_re N_R ln(eps) / (P_R a_re ln(eps) - P_S a_sr N_R) - 1)``.
    It lacks the ``+1`` forwarded-noise term of the eavesdropper SNR and so
    does not reduce to :func:`closed_form_csoc`; the legitimate-link log does.
    Kept as a reference for that discrepancy, not used for any computation.
    """
    ps, pr, n = params.p_s, p_r, params.n_r
    ln_eps = math.log(params.epsilon)
    legit = (ps * pr * params.alpha_sr * params.alpha_rd * params.rho * n ** 2
             / (pr * params.alpha_rd * params.rho * n + ps * params.alpha_sr * n + 1.0))
    eaves = (ps * pr * params.alpha_sr * params.alpha_re * n * ln_eps
             / (pr * params.alpha_re * ln_eps - ps * params.alpha_sr * n) - 1.0)
    return params.w * (math.log2(1.0 + legit) - math.log2(1.0 + eaves))
