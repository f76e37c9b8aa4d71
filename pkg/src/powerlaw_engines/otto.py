"""Quantum Otto cycle with normalised occupations.

The hot branch has levels ``c_red * n^g`` and the cold branch the same
levels compressed by r^-g (r = omega_h/omega_c), so E^h_n = r^g E^c_n.  With
p^h thermal at T_h on the hot branch and p^c thermal at T_c on the cold one,

    Q_in  =  sum_n E^h_n (p^h_n - p^c_n) / k_B T_c
    Q_out =  sum_n E^c_n (p^c_n - p^h_n) / k_B T_c  = -r^-g Q_in
    W     = (r^-g - 1) * (c_red / T_c) * sum_n n^g (p^c_n - p^h_n)

Every quantity shares the single bracket ``sum_n n^g (p^h_n - p^c_n)``, which
vanishes term by term when T_h = T_c r^g.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError
from .spectrum import gap_exponent
from .stirling import Mode, sign_triple
from .thermo import DEFAULT_TOL, ThermalPair, mean_energy

_OTTO_TABLE = {
    (1, -1, 1): Mode.ENGINE,
    (-1, 1, -1): Mode.REFRIGERATOR,
}


@dataclass(frozen=True)
class OttoResult:
    r: float
    q_in: float
    q_out: float
    w_net: float
    eta: float
    mode: Mode

    @property
    def closure_residual(self) -> float:
        """q_in + q_out - w_net, recorded rather than enforced."""
        return self.q_in + self.q_out - self.w_net

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        d["closure_residual"] = self.closure_residual
        return d


def _check_r(r: float) -> None:
    if not (r > 0) or math.isinf(r):
        raise DomainError(f"frequency ratio r must be positive and finite, got {r!r}")


def _bracket(q: float, c_red: float, pair: ThermalPair, r: float, tol: float) -> float:
    """sum_n n^g (p^h_n - p^c_n)."""
    _check_r(r)
    cold_scale = c_red * r ** -gap_exponent(q)
    u_hot = mean_energy(q, c_red, pair.t_hot, tol).value
    u_cold = mean_energy(q, cold_scale, pair.t_cold, tol).value
    return u_hot - u_cold


def otto_q_in(q: float, c_red: float, pair: ThermalPair, r: float, tol: float = DEFAULT_TOL) -> float:
    return (c_red / pair.t_cold) * _bracket(q, c_red, pair, r, tol)


def otto_q_out(q: float, c_red: float, pair: ThermalPair, r: float, tol: float = DEFAULT_TOL) -> float:
    b = _bracket(q, c_red, pair, r, tol)
    return (c_red / (pair.t_cold * r ** gap_exponent(q))) * -b


def otto_net_work(q: float, c_red: float, pair: ThermalPair, r: float, tol: float = DEFAULT_TOL) -> float:
    b = _bracket(q, c_red, pair, r, tol)
    return (r ** -gap_exponent(q) - 1.0) * (c_red / pair.t_cold) * -b


def otto_efficiency(q: float, r: float) -> float:
    """eta = (r^(q/(q+1)) - 1)(r^(q/(q+1)) + 1) / r^(2q/(q+1)) = 1 - r^(-2q/(q+1)).

    Depends on neither bath temperature.
    """
    _check_r(r)
    # the factored form loses the last ulp (e.g. 0.5000000000000001 at q=1, r=2)
    return 1.0 - r ** -gap_exponent(q)


def classify_mode_otto(q_in: float, q_out: float, w_net: float) -> Mode:
    """(+, -, +) engine, (-, +, -) refrigerator, anything else unclassified."""
    return _OTTO_TABLE.get(sign_triple(q_in, q_out, w_net), Mode.UNCLASSIFIED)


def run_otto_cycle(
    q: float, c_red: float, pair: ThermalPair, r: float, tol: float = DEFAULT_TOL
) -> OttoResult:
    g = gap_exponent(q)
    b = _bracket(q, c_red, pair, r, tol)
    scale = c_red / pair.t_cold
    q_in = scale * b
    q_out = (c_red / (pair.t_cold * r**g)) * -b
    w = (r**-g - 1.0) * scale * -b
    return OttoResult(
        r=r,
        q_in=q_in,
        q_out=q_out,
        w_net=w,
        eta=otto_efficiency(q, r),
        mode=classify_mode_otto(q_in, q_out, w),
    )
