"""Parameter sweeps behind the capacity/power figures, emitted as CSV rows.

A :class:`Scenario` sweeps one parameter (optionally once per value of a
second, "series" parameter) around a base :class:`SystemParams`. Each point
gets the closed-form capacity at the scenario's relay power, the optimal
relay power with its capacity and ceiling, and optionally a Monte Carlo
estimate.

Sweep axis names are ``SystemParams`` fields plus ``r_l``, which is reached
by scaling ``alpha_re``. With ``db=True`` the axis values are decibels.
"""

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .capacity import closed_form_csoc, max_csoc
from .errors import ParameterError
from .montecarlo import DEFAULT_SAMPLES, estimate_outage_capacity
from .streams import point_seed
from .system_model import (SystemParams, db_to_linear, derive_params, reference_params,
                           with_relative_path_loss)

__all__ = ["Axis", "Scenario", "SweepRow", "BUILTIN_SCENARIOS", "builtin_scenario",
           "run_scenario", "rows_to_csv", "apply_axis"]

MODES = ("analytic", "monte-carlo", "both")
AXIS_NAMES = ("p_s", "p_r", "alpha_sr", "alpha_rd", "alpha_re", "rho", "epsilon", "n_r", "w", "r_l")


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple
    db: bool = False

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ParameterError("axis", f"unknown sweep parameter {self.name!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ParameterError("axis", f"empty value list for {self.name!r}")

    @property
    def label(self):
        if self.db:
            return {"p_s": "snr_s_db", "p_r": "snr_r_db"}.get(self.name, self.name + "_db")
        return self.name


def apply_axis(params, axis, value):
    """`params` with the axis parameter set to `value` (given in axis units)."""
    lin = db_to_linear(value) if axis.db else value
    if axis.name == "r_l":
        return with_relative_path_loss(params, lin)
    if axis.name == "n_r":
        if abs(lin - round(lin)) > 1e-9:
            raise ParameterError("n_r", f"antenna counts must be integers, got {value!r}")
        lin = int(round(lin))
    return params.replace(**{axis.name: lin})


@dataclass(frozen=True)
class Scenario:
    name: str
    base: SystemParams
    sweep: Axis
    series: Optional[Axis] = None
    mode: str = "analytic"
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    report_gain: bool = False
    description: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError("mode", f"must be one of {MODES}, got {self.mode!r}")
        if self.samples < 1:
            raise ParameterError("samples", f"must be >= 1, got {self.samples!r}")
        # Builds every point once so bad sweep values fail before any work starts.
        self.points()

    def points(self):
        """``[(series_index, series_value, point_index, x, params), ...]`` in output order."""
        series_values = self.series.values if self.series else (None,)
        out = []
        for si, s in enumerate(series_values):
            base = self.base if s is None else apply_axis(self.base, self.series, s)
            for pi, x in enumerate(self.sweep.values):
                out.append((si, s, pi, x, apply_axis(base, self.sweep, x)))
        return out

    @property
    def has_fixed_power(self):
        return self.base.p_r is not None or "p_r" in (self.sweep.name, self.series and self.series.name)

    def columns(self):
        cols = []
        if self.series:
            cols.append(("series", self.series.label))
        cols.append(("x", self.sweep.label))
        if self.sweep.name != "r_l":
            cols.append(("r_l", "r_l"))
        cols.append(("feasible", "feasible"))
        if self.has_fixed_power:
            cols.append(("analytic_csoc", "analytic_csoc"))
        cols += [("p_r_star", "p_r_star"), ("c_soc_max", "c_soc_max"), ("ceiling", "ceiling")]
        if self.report_gain:
            cols.append(("gain", "gain"))
        if self.mode != "analytic":
            cols += [(k, k) for k in ("mc_p_r", "mc_csoc", "mc_ci_low", "mc_ci_high", "mc_csoc_clamped")]
        return cols


@dataclass(frozen=True)
class SweepRow:
    series: Optional[float]
    x: float
    r_l: float
    feasible: bool
    analytic_csoc: Optional[float] = None
    p_r_star: Optional[float] = None
    c_soc_max: Optional[float] = None
    ceiling: Optional[float] = None
    gain: Optional[float] = None
    mc_p_r: Optional[float] = None
    mc_csoc: Optional[float] = None
    mc_ci_low: Optional[float] = None
    mc_ci_high: Optional[float] = None
    mc_csoc_clamped: Optional[float] = None


def _evaluate(scenario, si, s, pi, x, params):
    derived = derive_params(params)
    row = dict(series=s, x=x, r_l=derived.r_l, feasible=derived.secrecy_feasible)
    if params.p_r is not None:
        row["analytic_csoc"] = closed_form_csoc(derived, params.w, params.p_r)
    if derived.secrecy_feasible:
        res = max_csoc(params)
        row.update(p_r_star=res.p_r_star, c_soc_max=res.c_soc_max, ceiling=res.ceiling)
        if scenario.report_gain and params.p_r is not None:
            row["gain"] = res.c_soc_max - row["analytic_csoc"]
    if scenario.mode != "analytic":
        mc_p_r = params.p_r if params.p_r is not None else row.get("p_r_star")
        if mc_p_r is not None and mc_p_r > 0:
            est = estimate_outage_capacity(params, mc_p_r, scenario.samples,
                                           point_seed(scenario.seed, si, pi))
            row.update(mc_p_r=mc_p_r, mc_csoc=est.c_soc_hat, mc_ci_low=est.ci_low,
                       mc_ci_high=est.ci_high, mc_csoc_clamped=est.c_soc_clamped)
    return SweepRow(**row)


def run_scenario(scenario, workers=1):
    """Evaluate every point of `scenario`; rows come back in sweep order.

    Infeasible points (r_l >= 1) are reported with ``feasible=False`` and no
    optimum. Each Monte Carlo point is seeded from ``(seed, series, point)``,
    so the output does not depend on `workers`.
    """
    jobs = scenario.points()
    if workers <= 1:
        return [_evaluate(scenario, *job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _evaluate(scenario, *job), jobs))


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return repr(float(value))


def rows_to_csv(scenario, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    cols = scenario.columns()
    writer.writerow([label for _, label in cols])
    for row in rows:
        writer.writerow([_fmt(getattr(row, key)) for key, _ in cols])
    return out.getvalue()


def rows_to_records(scenario, rows):
    return [{label: getattr(row, key) for key, label in scenario.columns()} for row in rows]


def _arange(start, stop, step):
    n = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(n))


def _fig2(**kw):
    return Scenario(
        name="fig2", base=reference_params(p_r=100.0),
        sweep=Axis("r_l", _arange(0.05, 1.4, 0.05)),
        series=Axis("p_s", (10.0, 20.0, 30.0), db=True),
        description="capacity vs relative path loss at SNR_R = 20 dB", **kw)


def _fig3(**kw):
    return Scenario(
        name="fig3", base=reference_params(),
        sweep=Axis("p_r", _arange(-20.0, 40.0, 2.5), db=True),
        series=Axis("p_s", (10.0, 20.0, 30.0), db=True),
        description="capacity vs SNR_R for several SNR_S", **kw)


def _fig3_snr_s(**kw):
    return Scenario(
        name="fig3-snr-s", base=reference_params(),
        sweep=Axis("p_s", _arange(-10.0, 40.0, 2.5), db=True),
        series=Axis("p_r", (0.0, 10.0, 20.0), db=True),
        description="capacity vs SNR_S for several SNR_R", **kw)


def _fig4(**kw):
    kw.setdefault("mode", "both")
    return Scenario(
        name="fig4", base=reference_params(),
        sweep=Axis("alpha_re", _arange(1.0, 4.0, 0.5)),
        series=Axis("epsilon", (0.01, 0.05)),
        description="maximum capacity vs alpha_re, closed form and Monte Carlo", **kw)


def _fig5(**kw):
    return Scenario(
        name="fig5", base=reference_params(p_r=100.0),
        sweep=Axis("alpha_re", _arange(1.0, 4.0, 0.25)),
        series=Axis("epsilon", (0.01, 0.05)),
        report_gain=True,
        description="optimal vs fixed SNR_R = 20 dB relay power", **kw)


def _fig6(**kw):
    return Scenario(
        name="fig6", base=reference_params(),
        sweep=Axis("p_s", _arange(-10.0, 60.0, 5.0), db=True),
        series=Axis("alpha_re", (1.0, 2.0, 4.0)),
        description="maximum capacity vs SNR_S", **kw)


BUILTIN_SCENARIOS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig3-snr-s": _fig3_snr_s,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
}


def builtin_scenario(name, base_overrides=None, **kw):
    """A built-in scenario, optionally with some base parameters replaced.

    `kw` may set ``mode``, ``samples`` and ``seed``.
    """
    try:
        factory = BUILTIN_SCENARIOS[name]
    except KeyError:
        raise ParameterError("scenario", f"unknown scenario {name!r}; "
                             f"choose from {', '.join(BUILTIN_SCENARIOS)}") from None
    scenario = factory(**{k: v for k, v in kw.items() if v is not None})
    if base_overrides:
        scenario = Scenario(**{f.name: getattr(scenario, f.name) for f in fields(Scenario)
                               if f.name != "base"},
                            base=scenario.base.replace(**base_overrides))
    return scenario
