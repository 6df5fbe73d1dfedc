"""Small-scale fading draws and instantaneous SNRs of the relay link.

The relay combines with ``h_sr`` (MRC), normalizes the forwarded power and
transmits along the estimated destination channel ``h_rd_hat`` (MRT). The
processing matrix is never formed: the destination and eavesdropper SNRs
only depend on a handful of inner products, which is O(N_R) per draw.

Complex Gaussian entries come from the Box-Muller transform of two uniform
variates per entry::

    z = sqrt(-ln(1 - u1)) * exp(2j*pi*u2),   u1, u2 ~ U[0, 1)

which is exactly CN(0, 1): real and imaginary parts are i.i.d. N(0, 1/2).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

__all__ = [
    "complex_gaussian",
    "ChannelRealization",
    "SnrPair",
    "sample_channels",
    "snr_pair",
    "rate_difference",
]


def complex_gaussian(rng, shape):
    u1 = rng.random(shape)
    u2 = rng.random(shape)
    radius = np.sqrt(-np.log1p(-u1))
    phase = 2.0 * np.pi * u2
    out = np.empty(np.shape(u1), dtype=complex)
    out.real = radius * np.cos(phase)
    out.imag = radius * np.sin(phase)
    return out


@dataclass(frozen=True)
class ChannelRealization:
    """Fading vectors of one draw (or a batch of draws along leading axes).

    ``h_rd`` is the true relay->destination channel,
    ``sqrt(rho)*h_rd_hat + sqrt(1 - rho)*e``.
    """

    h_sr: np.ndarray
    h_rd_hat: np.ndarray
    e: np.ndarray
    h_rd: np.ndarray
    h_re: np.ndarray

    @classmethod
    def from_vectors(cls, h_sr, h_rd_hat, e, h_re, rho):
        """Build a realization from explicit vectors, bypassing the sampler."""
        h_sr, h_rd_hat, e, h_re = (np.asarray(v, dtype=complex) for v in (h_sr, h_rd_hat, e, h_re))
        h_rd = math.sqrt(rho) * h_rd_hat + math.sqrt(1.0 - rho) * e
        return cls(h_sr=h_sr, h_rd_hat=h_rd_hat, e=e, h_rd=h_rd, h_re=h_re)

    @property
    def n_r(self):
        return self.h_sr.shape[-1]

    @property
    def batch_shape(self):
        return self.h_sr.shape[:-1]


def sample_channels(params, rng, size=None):
    """Draw ``h_sr``, ``h_rd_hat``, ``e``, ``h_re`` i.i.d. CN(0, 1).

    With ``size`` given, every vector gets a leading batch axis of that length.
    """
    shape = (params.n_r,) if size is None else (int(size), params.n_r)
    h_sr = complex_gaussian(rng, shape)
    h_rd_hat = complex_gaussian(rng, shape)
    e = complex_gaussian(rng, shape)
    h_re = complex_gaussian(rng, shape)
    return ChannelRealization.from_vectors(h_sr, h_rd_hat, e, h_re, params.rho)


@dataclass(frozen=True)
class SnrPair:
    gamma_d: np.ndarray
    gamma_e: np.ndarray


def _inner_abs2(x, y):
    # |x^H y|^2 along the last axis
    return np.abs(np.einsum("...i,...i->...", x.conj(), y)) ** 2


def _norm2(x):
    return np.einsum("...i,...i->...", x.real, x.real) + np.einsum("...i,...i->...", x.imag, x.imag)


def snr_pair(real, params, p_r):
    """Instantaneous destination and eavesdropper SNRs at relay power `p_r`."""
    vectors = (real.h_sr, real.h_rd_hat, real.e, real.h_rd, real.h_re)
    shapes = {np.shape(v) for v in vectors}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"realization vectors have differing shapes {sorted(shapes)}")
    if real.n_r != params.n_r:
        raise DimensionMismatchError(f"realization has {real.n_r} antennas, params say {params.n_r}")

    ps, asr = params.p_s, params.alpha_sr
    gain_sr = _norm2(real.h_sr)
    gain_hat = _norm2(real.h_rd_hat)
    beam_d = _inner_abs2(real.h_rd, real.h_rd_hat)
    beam_e = _inner_abs2(real.h_re, real.h_rd_hat)
    forwarded_noise = gain_hat * (ps * asr * gain_sr + 1.0)

    sig_d = p_r * params.alpha_rd * beam_d
    sig_e = p_r * params.alpha_re * beam_e
    gamma_d = ps * asr * gain_sr * sig_d / (sig_d + forwarded_noise)
    gamma_e = ps * asr * gain_sr * sig_e / (sig_e + forwarded_noise)
    return SnrPair(gamma_d=gamma_d, gamma_e=gamma_e)


def rate_difference(snr, w):
    """``W*(log2(1 + gamma_D) - log2(1 + gamma_E))`` in bits/s; may be negative."""
    gd = np.asarray(snr.gamma_d, dtype=float)
    ge = np.asarray(snr.gamma_e, dtype=float)
    out = w * (np.log1p(gd) - np.log1p(ge)) / math.log(2.0)
    return float(out) if out.ndim == 0 else out
