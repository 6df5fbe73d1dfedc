"""Scenario parameters for the two-hop LS-MIMO AF relay link.

All noise variances (relay, destination, eavesdropper) are normalized to 1,
so every power here is a dimensionless transmit SNR. ``w`` is the
half-bandwidth in Hz: a complete transmission spans two slots, so rates are
``w * log2(1 + snr)`` in bits/s.
"""

import math
import numbers
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import ParameterError

__all__ = [
    "SystemParams",
    "DerivedParams",
    "derive_params",
    "db_to_linear",
    "linear_to_db",
    "antenna_threshold",
    "min_antennas",
    "reference_params",
    "with_relative_path_loss",
]


def _check_positive(name, value):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise ParameterError(name, f"expected a real number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise ParameterError(name, f"must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of one scenario.

    Parameters
    ----------
    p_s : float
        Source transmit power (linear, noise-normalized).
    alpha_sr, alpha_rd, alpha_re : float
        Distance-dependent path losses of the source->relay, relay->destination
        and relay->eavesdropper hops (linear).
    rho : float
        Correlation between estimated and true relay->destination CSI, in (0, 1].
    epsilon : float
        Target outage probability, in (0, 1).
    n_r : int
        Number of relay antennas.
    w : float
        Half of the spectral bandwidth, Hz.
    p_r : float, optional
        Relay transmit power (linear). ``None`` when it is to be optimized.
    """

    p_s: float
    alpha_sr: float = 1.0
    alpha_rd: float = 1.0
    alpha_re: float = 1.0
    rho: float = 0.9
    epsilon: float = 0.01
    n_r: int = 100
    w: float = 1.0e4
    p_r: Optional[float] = None

    def __post_init__(self):
        for name in ("p_s", "alpha_sr", "alpha_rd", "alpha_re", "w"):
            _check_positive(name, getattr(self, name))
        _check_positive("rho", self.rho)
        if self.rho > 1:
            raise ParameterError("rho", f"must lie in (0, 1], got {self.rho!r}")
        _check_positive("epsilon", self.epsilon)
        if self.epsilon >= 1:
            raise ParameterError("epsilon", f"must lie in (0, 1), got {self.epsilon!r}")
        if isinstance(self.n_r, bool) or not isinstance(self.n_r, numbers.Integral):
            raise ParameterError("n_r", f"must be an integer, got {self.n_r!r}")
        if self.n_r < 1:
            raise ParameterError("n_r", f"must be >= 1, got {self.n_r!r}")
        if self.p_r is not None:
            if isinstance(self.p_r, bool) or not isinstance(self.p_r, numbers.Real):
                raise ParameterError("p_r", f"expected a real number, got {self.p_r!r}")
            if not math.isfinite(self.p_r) or self.p_r < 0:
                raise ParameterError("p_r", f"must be finite and >= 0, got {self.p_r!r}")

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def snr_s_db(self):
        return linear_to_db(self.p_s)

    @property
    def snr_r_db(self):
        return None if self.p_r is None else linear_to_db(self.p_r)


def reference_params(**overrides):
    """Baseline scenario: N_R=100, W=10 kHz, rho=0.9, eps=0.01, unit path losses, SNR_S=10 dB."""
    base = dict(p_s=10.0, alpha_sr=1.0, alpha_rd=1.0, alpha_re=1.0,
                rho=0.9, epsilon=0.01, n_r=100, w=1.0e4, p_r=None)
    base.update(overrides)
    return SystemParams(**base)


@dataclass(frozen=True)
class DerivedParams:
    """Shorthand quantities the capacity formulas are written in.

    ``a = rho*alpha_rd*n_r``, ``b = p_s*alpha_sr*n_r`` and
    ``r_l = -alpha_re*ln(eps)/a``. ``secrecy_feasible`` defaults to
    ``0 < r_l < 1`` when not given.
    """

    a: float
    b: float
    r_l: float
    secrecy_feasible: bool = field(default=None)

    def __post_init__(self):
        if self.secrecy_feasible is None:
            object.__setattr__(self, "secrecy_feasible", bool(0 < self.r_l < 1))

    @property
    def a_r_l(self):
        """``a * r_l``, i.e. ``-alpha_re * ln(eps)``."""
        return self.a * self.r_l


def antenna_threshold(params):
    """Antenna count the relay must strictly exceed: ``-alpha_re ln(eps) / (rho alpha_rd)``."""
    return -params.alpha_re * math.log(params.epsilon) / (params.rho * params.alpha_rd)


def derive_params(params):
    threshold = antenna_threshold(params)
    a = params.rho * params.alpha_rd * params.n_r
    b = params.p_s * params.alpha_sr * params.n_r
    r_l = threshold / params.n_r
    # Compare against the threshold itself so this flag and min_antennas can never disagree
    # through rounding of the division.
    return DerivedParams(a=a, b=b, r_l=r_l, secrecy_feasible=bool(params.n_r > threshold))


def min_antennas(params):
    """Smallest relay antenna count giving 0 < r_l < 1; ``params.n_r`` is ignored."""
    return math.floor(antenna_threshold(params)) + 1


def with_relative_path_loss(params, r_l):
    """`params` with ``alpha_re`` rescaled so that the derived r_l is `r_l`.

    Exact only up to rounding: near r_l = 1 the representable ``alpha_re``
    values step r_l by more than one ulp, so the result may sit an ulp off.
    """
    if not r_l > 0:
        raise ParameterError("r_l", f"must be > 0, got {r_l!r}")
    return params.replace(alpha_re=r_l * params.rho * params.alpha_rd * params.n_r / -math.log(params.epsilon))


def db_to_linear(x_db):
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    if not x > 0:
        raise ParameterError("x", f"decibel conversion needs a positive value, got {x!r}")
    return 10.0 * math.log10(x)
