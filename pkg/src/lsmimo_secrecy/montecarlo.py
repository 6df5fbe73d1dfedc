"""Empirical secrecy outage capacity.

The secrecy outage capacity is the epsilon-quantile of the instantaneous
rate difference ``C_D - C_E``. We estimate it with the lower empirical
quantile, i.e. the ``ceil(eps*n)``-th smallest of ``n`` samples, and bracket
it with distribution-free binomial order-statistic bounds.

Reproducibility contract: the result is a pure function of
``(params, p_r, n, seed, workers)``. Changing ``workers`` changes which
stream draws which sample and therefore the exact estimate.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .capacity import closed_form_csoc, optimal_power
from .channel import rate_difference, sample_channels, snr_pair
from .errors import InfeasibleSecrecyError, InsufficientSamplesError, ParameterError
from .streams import point_seed, worker_rngs
from .system_model import antenna_threshold, derive_params

__all__ = [
    "OutageEstimate",
    "ConvergencePoint",
    "min_samples",
    "outage_rank",
    "rate_difference_samples",
    "estimate_from_samples",
    "estimate_outage_capacity",
    "convergence_sweep",
]

CHUNK = 8192
DEFAULT_SAMPLES = 200_000
CI_LEVEL = 0.95


@dataclass(frozen=True)
class OutageEstimate:
    c_soc_hat: float
    n_samples: int
    ci_low: float
    ci_high: float
    epsilon: float

    @property
    def c_soc_clamped(self):
        """Estimate floored at zero, for plotting. ``c_soc_hat`` keeps the sign."""
        return max(self.c_soc_hat, 0.0)


def _ceil_product(x, n):
    # guards against eps*n landing one ulp above an integer
    return math.ceil(round(x * n, 9))


def min_samples(epsilon):
    """Fewest samples for which the epsilon-quantile is resolvable: ``ceil(10/eps)``."""
    return _ceil_product(10.0, 1.0 / epsilon)


def outage_rank(epsilon, n):
    """1-based rank of the order statistic used as the epsilon-quantile."""
    return max(1, _ceil_product(epsilon, n))


def _check_samples(epsilon, n):
    if n < min_samples(epsilon):
        raise InsufficientSamplesError(
            f"{n} samples cannot resolve the {epsilon:g}-quantile; need at least {min_samples(epsilon)}")


def estimate_from_samples(samples, epsilon):
    """Lower epsilon-quantile of `samples` with a 95% order-statistic interval."""
    d = np.sort(np.asarray(samples, dtype=float).ravel())
    n = d.size
    _check_samples(epsilon, n)
    k = outage_rank(epsilon, n)
    tail = (1.0 - CI_LEVEL) / 2.0
    lo = int(stats.binom.ppf(tail, n, epsilon))
    hi = int(stats.binom.ppf(1.0 - tail, n, epsilon)) + 1
    lo = min(max(lo, 1), k)
    hi = max(min(hi, n), k)
    return OutageEstimate(c_soc_hat=float(d[k - 1]), n_samples=n,
                          ci_low=float(d[lo - 1]), ci_high=float(d[hi - 1]), epsilon=epsilon)


def _block_sizes(n, workers):
    base, extra = divmod(n, workers)
    return [base + (1 if k < extra else 0) for k in range(workers)]


def _draw_block(params, p_r, count, rng):
    out = np.empty(count)
    for start in range(0, count, CHUNK):
        m = min(CHUNK, count - start)
        real = sample_channels(params, rng, size=m)
        out[start:start + m] = rate_difference(snr_pair(real, params, p_r), params.w)
    return out


def rate_difference_samples(params, p_r, n, seed, workers=1):
    """``n`` i.i.d. draws of ``C_D - C_E`` in bits/s, in a fixed order.

    Worker ``k`` owns stream ``(seed, k)`` and the ``k``-th contiguous block of
    the output.
    """
    if workers < 1:
        raise ParameterError("workers", f"must be >= 1, got {workers!r}")
    sizes = _block_sizes(int(n), workers)
    rngs = worker_rngs(seed, workers)
    if workers == 1:
        return _draw_block(params, p_r, sizes[0], rngs[0])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = list(pool.map(lambda job: _draw_block(params, p_r, *job), zip(sizes, rngs)))
    return np.concatenate(blocks)


def estimate_outage_capacity(params, p_r, n=DEFAULT_SAMPLES, seed=0, workers=1, channels=None):
    """Monte Carlo secrecy outage capacity at relay power `p_r`.

    Parameters
    ----------
    params : SystemParams
    p_r : float
        Relay power (linear), must be > 0.
    n : int
        Number of channel draws; at least ``ceil(10/epsilon)``.
    seed : int
    workers : int
        Number of independent streams/threads.
    channels : ChannelRealization, optional
        Batch of explicit realizations to use instead of sampling; `n`,
        `seed` and `workers` are then ignored.
    """
    if not p_r > 0:
        raise ParameterError("p_r", f"must be > 0 for a Monte Carlo estimate, got {p_r!r}")
    if channels is not None:
        d = rate_difference(snr_pair(channels, params, p_r), params.w)
        return estimate_from_samples(np.atleast_1d(d), params.epsilon)
    _check_samples(params.epsilon, n)
    d = rate_difference_samples(params, p_r, n, seed, workers)
    return estimate_from_samples(d, params.epsilon)


@dataclass(frozen=True)
class ConvergencePoint:
    n_r: int
    closed_form: float
    estimate: OutageEstimate

    @property
    def relative_error(self):
        return abs(self.estimate.c_soc_hat - self.closed_form) / self.closed_form


def convergence_sweep(params, p_r, n_r_list, n=DEFAULT_SAMPLES, seed=0, workers=1):
    """Closed form vs Monte Carlo as the relay array grows.

    `p_r` may be ``None`` to use the optimal power of each array size. Point
    ``i`` is simulated with a seed derived from ``(seed, i)``.
    """
    points = []
    checked = []
    for n_r in n_r_list:
        scenario = params.replace(n_r=int(n_r))
        derived = derive_params(scenario)
        if not derived.secrecy_feasible:
            raise InfeasibleSecrecyError(derived.r_l, antenna_threshold(scenario))
        checked.append((scenario, derived))
    for i, (scenario, derived) in enumerate(checked):
        power = optimal_power(derived) if p_r is None else p_r
        est = estimate_outage_capacity(scenario, power, n, point_seed(seed, i), workers)
        points.append(ConvergencePoint(n_r=scenario.n_r,
                                       closed_form=closed_form_csoc(derived, scenario.w, power),
                                       estimate=est))
    return points
