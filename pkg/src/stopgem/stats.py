"""Descriptive statistics, one-way ANOVA with eta-squared, F-distribution CDF.

The F CDF goes through the regularized incomplete beta function, evaluated
with the standard continued-fraction expansion (modified Lentz), so the
p-value column of the reports does not depend on an external stats
library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyInputError,
    NonConvergenceError,
    TooFewGroupsError,
    ZeroWithinVarianceError,
)

NEGLIGIBLE = "negligible"
SMALL = "small"
MEDIUM = "medium"
LARGE = "large"

# Cohen (1988) eta-squared boundaries, resolved half-open [lo, hi)
ETA_SQ_SMALL = 0.0099
ETA_SQ_MEDIUM = 0.0588
ETA_SQ_LARGE = 0.1379


@dataclass(frozen=True)
class Descriptives:
    mean: float
    standard_error: float   # sample sd / sqrt(n); 0 by convention when n == 1
    n: int


@dataclass(frozen=True)
class GroupedSample:
    """Labeled groups of observations, the input of one_way_anova."""

    groups: tuple[tuple[str, tuple[float, ...]], ...]

    @classmethod
    def of(cls, **named_groups: Iterable[float]) -> "GroupedSample":
        return cls(tuple((k, tuple(float(x) for x in v)) for k, v in named_groups.items()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Iterable[float]]]) -> "GroupedSample":
        return cls(tuple((k, tuple(float(x) for x in v)) for k, v in pairs))

    @property
    def total_n(self) -> int:
        return sum(len(v) for _, v in self.groups)


@dataclass(frozen=True)
class AnovaResult:
    f_stat: float
    df_between: int
    df_within: int
    p_value: float
    eta_sq: float
    effect_label: str
    ss_between: float
    ss_within: float

    @property
    def ss_total(self) -> float:
        return self.ss_between + self.ss_within


def descriptive(values: Sequence[float]) -> Descriptives:
    values = [float(v) for v in values]
    n = len(values)
    if n == 0:
        raise EmptyInputError("descriptive() of an empty sample")
    mean = math.fsum(values) / n
    if n == 1:
        return Descriptives(mean, 0.0, 1)
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return Descriptives(mean, math.sqrt(var) / math.sqrt(n), n)


def one_way_anova(sample: GroupedSample) -> AnovaResult:
    """Fixed-factor one-way ANOVA.

    F = (SS_between/df_between) / (SS_within/df_within) with
    df_between = k-1, df_within = N-k; p = 1 - f_cdf(F);
    eta_sq = SS_between / SS_total.
    """
    groups = sample.groups
    if len(groups) < 2:
        raise TooFewGroupsError(f"ANOVA needs >= 2 groups, got {len(groups)}")
    for label, values in groups:
        if len(values) == 0:
            raise TooFewGroupsError(f"group {label!r} is empty")
    k = len(groups)
    n_total = sample.total_n
    if n_total < k + 1:
        raise TooFewGroupsError(f"need N >= k+1 observations, got N={n_total}, k={k}")
    if all(all(v == values[0] for v in values) for _, values in groups):
        raise ZeroWithinVarianceError("all groups are internally constant")

    grand_mean = math.fsum(v for _, values in groups for v in values) / n_total
    ss_between = 0.0
    ss_within = 0.0
    for _, values in groups:
        gmean = math.fsum(values) / len(values)
        ss_between += len(values) * (gmean - grand_mean) ** 2
        ss_within += math.fsum((v - gmean) ** 2 for v in values)

    df_between = k - 1
    df_within = n_total - k
    f_stat = (ss_between / df_between) / (ss_within / df_within)
    p_value = 1.0 - f_cdf(f_stat, df_between, df_within)
    eta_sq = ss_between / (ss_between + ss_within)
    return AnovaResult(
        f_stat=f_stat,
        df_between=df_between,
        df_within=df_within,
        p_value=p_value,
        eta_sq=eta_sq,
        effect_label=classify_effect_size(eta_sq),
        ss_between=ss_between,
        ss_within=ss_within,
    )


def classify_effect_size(eta_sq: float) -> str:
    """Cohen's criterion for eta squared, half-open boundaries [lo, hi)."""
    if not 0.0 <= eta_sq <= 1.0:
        raise ValueError(f"eta_sq must be in [0, 1], got {eta_sq}")
    if eta_sq < ETA_SQ_SMALL:
        return NEGLIGIBLE
    if eta_sq < ETA_SQ_MEDIUM:
        return SMALL
    if eta_sq < ETA_SQ_LARGE:
        return MEDIUM
    return LARGE


# ---------------------------------------------------------------------------
# F distribution via the regularized incomplete beta function
# ---------------------------------------------------------------------------

_MAX_ITER = 20000
_CF_EPS = 1e-16
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    # continued fraction for the incomplete beta (modified Lentz)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise NonConvergenceError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if x < 0.0 or x > 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_cdf(f: float, df1: int, df2: int) -> float:
    """Cumulative probability of the F distribution at f."""
    if f < 0:
        raise ValueError(f"f must be >= 0, got {f}")
    if df1 < 1 or df2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({df1}, {df2})")
    if f == 0.0:
        return 0.0
    x = df1 * f / (df1 * f + df2)
    return regularized_incomplete_beta(df1 / 2.0, df2 / 2.0, x)
