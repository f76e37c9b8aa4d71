"""Canonical-ensemble sums over the power-law spectrum.

All series are evaluated relative to the ground level: with x = c_red/t and
g the gap exponent, the engine accumulates

    S0 = sum_n exp(-x (n^g - 1)),    S1 = sum_n n^g exp(-x (n^g - 1))

in ascending n, so Z = exp(-x) S0 and U/C = S1/S0.  Occupations and the mean
energy therefore never underflow, and ``log_value`` of the partition function
stays finite however cold the bath.

Stop rule: the current term of each sum is below ``tol`` times its partial
sum for three consecutive n *and* the geometric tail majorant is below
``tol`` times the partial sum.  Because g >= 1 the exponent is convex, so
past the last index N

    exp(-x (n^g - N^g)) <= rho^(n-N),   rho = exp(-x g N^(g-1)),

and the n^g-weighted terms shrink at least by (1 + 1/N)^g rho per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, SeriesNotConverged
from .spectrum import gap_exponent

DEFAULT_TOL = 1e-13
DEFAULT_MAX_TERMS = 10_000_000


@dataclass(frozen=True)
class ThermalPair:
    """Hot and cold bath temperatures in Kelvin (either ordering allowed)."""

    t_hot: float
    t_cold: float

    def __post_init__(self) -> None:
        for name, t in (("t_hot", self.t_hot), ("t_cold", self.t_cold)):
            if not (t > 0) or math.isinf(t):
                raise DomainError(f"{name} must be positive and finite, got {t!r}")

    @property
    def ratio(self) -> float:
        return self.t_hot / self.t_cold


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_bound: float
    log_value: float | None = None


@dataclass(frozen=True)
class StirlingPartitions:
    z_a: float
    z_b: float
    z_c: float
    z_d: float
    log_z_a: float
    log_z_b: float
    log_z_c: float
    log_z_d: float


@dataclass(frozen=True)
class _Sums:
    s0: float
    s1: float
    terms: int
    tail0: float
    tail1: float


def _validate(q: float, c_red: float, t: float, tol: float) -> None:
    gap_exponent(q)
    if not (c_red > 0) or math.isinf(c_red):
        raise DomainError(f"c_red must be positive and finite, got {c_red!r}")
    if not (t > 0) or math.isinf(t):
        raise DomainError(f"temperature must be positive and finite, got {t!r}")
    if not (0.0 < tol < 1.0):
        raise DomainError(f"tol must lie in (0, 1), got {tol!r}")


@lru_cache(maxsize=65536)
def _boltzmann_sums(g: float, x: float, tol: float, max_terms: int) -> _Sums:
    s0 = s1 = 0.0
    below = 0
    n = 0
    while True:
        n += 1
        if n > max_terms:
            raise SeriesNotConverged(
                f"Boltzmann sum with g={g!r}, c_red/t={x!r} needs more than "
                f"{max_terms} terms at tol={tol!r}"
            )
        e = float(n) ** g
        w = math.exp(-x * (e - 1.0))
        t1 = e * w
        s0 += w
        s1 += t1
        if w < tol * s0 and t1 < tol * s1:
            below += 1
        else:
            below = 0
        if below < 3:
            continue
        decay = x * g * float(n) ** (g - 1.0)
        rho = math.exp(-decay)
        tail0 = w * rho / -math.expm1(-decay)
        log_ratio1 = g * math.log1p(1.0 / n) - decay
        if log_ratio1 >= 0.0:
            continue
        tail1 = t1 * math.exp(log_ratio1) / -math.expm1(log_ratio1)
        if tail0 <= tol * s0 and tail1 <= tol * s1:
            return _Sums(s0, s1, n, tail0, tail1)


def _sums(q: float, c_red: float, t: float, tol: float, max_terms: int) -> _Sums:
    _validate(q, c_red, t, tol)
    return _boltzmann_sums(gap_exponent(q), c_red / t, tol, max_terms)


def partition_function(
    q: float,
    c_red: float,
    t: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Z(q, T) = sum_{n>=1} exp(-c_red n^g / t)."""
    s = _sums(q, c_red, t, tol, max_terms)
    x = c_red / t
    scale = math.exp(-x)
    return SeriesResult(
        value=scale * s.s0,
        terms_used=s.terms,
        truncation_bound=scale * s.tail0,
        log_value=-x + math.log(s.s0),
    )


def occupation(
    n: int,
    q: float,
    c_red: float,
    t: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """Boltzmann probability of level n."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"quantum number must be a positive integer, got {n!r}")
    s = _sums(q, c_red, t, tol, max_terms)
    e = float(n) ** gap_exponent(q)
    return math.exp(-(c_red / t) * (e - 1.0)) / s.s0


def mean_energy(
    q: float,
    c_red: float,
    t: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Mean energy U in units of C_q, i.e. the thermal average of n^g.

    Multiply by ``c_red`` for U/k_B in Kelvin.
    """
    s = _sums(q, c_red, t, tol, max_terms)
    u = s.s1 / s.s0
    bound = s.tail1 / s.s0 + u * s.tail0 / s.s0
    return SeriesResult(value=u, terms_used=s.terms, truncation_bound=bound)


def barrier_shift(q: float) -> float:
    """The dimensionless 4q/(q+1) that appears throughout the Stirling strokes."""
    return 2.0 * gap_exponent(q)


def stirling_partitions(
    q: float, c_red: float, pair: ThermalPair, tol: float = DEFAULT_TOL
) -> StirlingPartitions:
    """Partition functions of the four Stirling corner states.

    Z_B = 2 Z(T_h), Z_C = 2 Z(T_c), Z_A = e^(-4q/(q+1)) Z(T_h),
    Z_D = e^(-4q/(q+1)) Z(T_c).  The constant shift carries no temperature
    dependence; it is kept exactly as the model defines it.
    """
    zh = partition_function(q, c_red, pair.t_hot, tol)
    zc = partition_function(q, c_red, pair.t_cold, tol)
    k = barrier_shift(q)
    shift = math.exp(-k)
    ln2 = math.log(2.0)
    return StirlingPartitions(
        z_a=shift * zh.value,
        z_b=2.0 * zh.value,
        z_c=2.0 * zc.value,
        z_d=shift * zc.value,
        log_z_a=zh.log_value - k,
        log_z_b=zh.log_value + ln2,
        log_z_c=zc.log_value + ln2,
        log_z_d=zc.log_value - k,
    )
