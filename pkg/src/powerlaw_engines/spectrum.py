"""Semiclassical spectrum of the confining potential V(x) = V0 (x/a)^(2q).

Levels follow E_n = C_q n^(2q/(q+1)).  Everything downstream works in
reduced units where an energy is stored as E/k_B in Kelvin, so the only
place SI quantities enter is :func:`c_q`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, ModeError

#: Reduced Planck constant, J s (CODATA 2018): 1.054571817e-34
HBAR = 1.054571817e-34
#: Boltzmann constant, J/K (exact since the 2019 SI redefinition): 1.380649000e-23
K_B = 1.380649e-23


def _check_q(q: float) -> None:
    if not (q >= 1.0) or math.isinf(q):
        raise DomainError(f"exponent parameter q must be a finite real >= 1, got {q!r}")


@dataclass(frozen=True)
class PotentialSpec:
    """Working medium.

    Either the SI triple ``(V0, a, m)`` is given, or ``c_red`` (the level
    scale C_q/k_B in Kelvin) is supplied directly.  Use :meth:`si` or
    :meth:`reduced` rather than filling the fields by hand.
    """

    q: float
    V0: float | None = None
    a: float | None = None
    m: float | None = None
    c_red: float | None = None

    def __post_init__(self) -> None:
        _check_q(self.q)
        si = (self.V0, self.a, self.m)
        have_si = any(v is not None for v in si)
        if have_si and self.c_red is not None:
            raise DomainError("give either (V0, a, m) or c_red, not both")
        if have_si:
            if any(v is None for v in si):
                raise DomainError("SI mode needs all of V0, a and m")
            for name, v in zip(("V0", "a", "m"), si):
                if not (v > 0) or math.isinf(v):
                    raise DomainError(f"{name} must be positive and finite, got {v!r}")
        elif self.c_red is None:
            raise DomainError("potential needs (V0, a, m) or c_red")
        elif not (self.c_red > 0) or math.isinf(self.c_red):
            raise DomainError(f"c_red must be positive and finite, got {self.c_red!r}")

    @classmethod
    def si(cls, q: float, V0: float, a: float, m: float) -> PotentialSpec:
        return cls(q=q, V0=V0, a=a, m=m)

    @classmethod
    def reduced(cls, q: float, c_red: float) -> PotentialSpec:
        return cls(q=q, c_red=c_red)

    @property
    def is_si(self) -> bool:
        return self.c_red is None

    def with_q(self, q: float) -> PotentialSpec:
        return replace(self, q=q)


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    value: float  # E_n / k_B in Kelvin


def gap_exponent(q: float) -> float:
    """Power of n in the spectrum, 2q/(q+1); lies in [1, 2)."""
    _check_q(q)
    return 2.0 * q / (q + 1.0)


def c_q(spec: PotentialSpec) -> float:
    """Level scale C_q/k_B in Kelvin.

    In reduced mode this is ``spec.c_red``.  In SI mode

        C_q = (hbar^2/(2 m a^2))^(q/(q+1)) * V0^(1/(q+1))
              * (sqrt(pi) Gamma(3/2 + 1/(2q)) / Gamma(1 + 1/(2q)))^(2q/(q+1))

    evaluated in log space.  Raises ``OverflowError`` if the result is not
    representable.
    """
    if not spec.is_si:
        return spec.c_red
    q = spec.q
    kinetic = HBAR * HBAR / (2.0 * spec.m * spec.a * spec.a)
    s = 1.0 / (2.0 * q)
    log_shape = 0.5 * math.log(math.pi) + math.lgamma(1.5 + s) - math.lgamma(1.0 + s)
    log_c = (
        (q / (q + 1.0)) * math.log(kinetic)
        + math.log(spec.V0) / (q + 1.0)
        + gap_exponent(q) * log_shape
        - math.log(K_B)
    )
    try:
        value = math.exp(log_c)
    except OverflowError as exc:
        raise OverflowError(f"C_q/k_B overflows for {spec}") from exc
    if value == 0.0:
        raise OverflowError(f"C_q/k_B underflows for {spec}")
    return value


def energy_level(n: int, spec: PotentialSpec) -> EnergyLevel:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"quantum number must be a positive integer, got {n!r}")
    n = int(n)
    return EnergyLevel(n, float(n) ** gap_exponent(spec.q) * c_q(spec))


def limit_spectra(n: int, spec: PotentialSpec) -> tuple[float, float]:
    """Closed-form harmonic (q = 1) and infinite-well (q -> inf) levels.

    Returns ``(n hbar omega / k_B, (pi^2 hbar^2 / (2 m a^2)) n^2/4 / k_B)``
    with omega = sqrt(2 V0 / (m a^2)).  Only meaningful for SI specs.
    """
    if not spec.is_si:
        raise ModeError("limit spectra need the SI parameters (V0, a, m)")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"quantum number must be a positive integer, got {n!r}")
    omega = math.sqrt(2.0 * spec.V0 / (spec.m * spec.a**2))
    harmonic = n * HBAR * omega / K_B
    box = (math.pi**2 * HBAR**2 / (2.0 * spec.m * spec.a**2)) * (n * n / 4.0) / K_B
    return harmonic, box
