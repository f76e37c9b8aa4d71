"""Quantum Stirling cycle A -> B -> C -> D -> A.

A->B  isothermal barrier insertion at T_h
B->C  isochoric thermalisation to T_c
C->D  isothermal barrier removal at T_c
D->A  isochoric thermalisation back to T_h

Two calculation modes are offered.

``AS_PRINTED`` evaluates the published closed forms term for term: the
isochoric heats are the Theta-weighted sum S (with Theta = 2Z), both
isochores get the *same* S, the hot-side flux carries a leading minus on the
isothermal term and the net work is (T_h/T_c + 1)(ln 2 + 4q/(q+1)).  These
forms violate the first law and cannot reach the Carnot limit; they exist so
that the published curves can be regenerated and compared.

``FIRST_PRINCIPLES`` rebuilds every heat from Z and U: isothermal heats are
T ln(Z'/Z) (the constant-factor change of Z leaves U untouched), isochoric
heats are internal-energy differences, and the work is
(T_h/T_c - 1)(ln 2 + 4q/(q+1)).  The cycle closes and the low-temperature
efficiency tends to 1 - T_c/T_h.

All heats and works are reduced, i.e. divided by k_B T_c.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from .errors import DegenerateCycleError
from .thermo import (
    DEFAULT_TOL,
    ThermalPair,
    barrier_shift,
    mean_energy,
    stirling_partitions,
)

ZERO_SIGN_TOL = 1e-12
DEGENERATE_TOL = 1e-14


class CalcMode(str, enum.Enum):
    AS_PRINTED = "as-printed"
    FIRST_PRINCIPLES = "first-principles"


class Mode(str, enum.Enum):
    REFRIGERATOR = "Refrigerator"
    HEATER = "Heater"
    ENGINE = "Engine"
    UNCLASSIFIED = "Unclassified"


_STIRLING_TABLE = {
    (-1, 1, -1): Mode.REFRIGERATOR,
    (-1, -1, -1): Mode.HEATER,
    (1, -1, 1): Mode.ENGINE,
}


def _sign(x: float, zero: float = ZERO_SIGN_TOL) -> int:
    if abs(x) < zero:
        return 0
    return 1 if x > 0 else -1


def sign_triple(q_in: float, q_out: float, w_net: float) -> tuple[int, int, int]:
    return (_sign(q_in), _sign(q_out), _sign(w_net))


def classify_mode(q_in: float, q_out: float, w_net: float) -> Mode:
    """Operation mode from the signs of (Q_in, Q_out, W).

    (-, +, -) refrigerator, (-, -, -) heater, (+, -, +) engine; any other
    pattern, including one with a component within 1e-12 of zero, is
    unclassified.
    """
    return _STIRLING_TABLE.get(sign_triple(q_in, q_out, w_net), Mode.UNCLASSIFIED)


@dataclass(frozen=True)
class StirlingResult:
    q_ab: float
    q_bc: float
    q_cd: float
    q_da: float
    q_in: float
    q_out: float
    w_net: float
    eta: float
    cop: float
    mode: Mode
    calc_mode: CalcMode

    @property
    def closure_residual(self) -> float:
        """sum of stroke heats minus the net work; ~0 only in FIRST_PRINCIPLES."""
        return self.q_ab + self.q_bc + self.q_cd + self.q_da - self.w_net

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        d["calc_mode"] = self.calc_mode.value
        d["closure_residual"] = self.closure_residual
        return d


@dataclass(frozen=True)
class _Strokes:
    q_ab: float
    q_bc: float
    q_cd: float
    q_da: float
    q_in: float
    q_out: float
    w_net: float


def _isotherm_constant(q: float) -> float:
    return math.log(2.0) + barrier_shift(q)


def net_work(q: float, pair: ThermalPair, calc_mode: CalcMode | str = CalcMode.AS_PRINTED) -> float:
    """Reduced net work per cycle (no series involved)."""
    calc_mode = CalcMode(calc_mode)
    lam = _isotherm_constant(q)
    if calc_mode is CalcMode.AS_PRINTED:
        return (pair.ratio + 1.0) * lam
    return (pair.ratio - 1.0) * lam


def _evaluate(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode,
    tol: float,
    appendix_sign: bool,
) -> _Strokes:
    ratio = pair.ratio
    k = barrier_shift(q)
    u_h = mean_energy(q, c_red, pair.t_hot, tol).value
    u_c = mean_energy(q, c_red, pair.t_cold, tol).value
    w = net_work(q, pair, calc_mode)

    if calc_mode is CalcMode.AS_PRINTED:
        lam = _isotherm_constant(q)
        # sum_n n^g e^{-beta E_n} / Theta with Theta = 2Z is u/2 on each side
        s = (c_red / (2.0 * pair.t_cold)) * (0.5 * u_c + 0.5 * u_h)
        q_ab = -ratio * lam
        q_cd = -k
        hot_isotherm = ratio * lam if appendix_sign else q_ab
        return _Strokes(q_ab, s, q_cd, s, hot_isotherm + s, s + q_cd, w)

    parts = stirling_partitions(q, c_red, pair, tol)
    q_ab = ratio * (parts.log_z_b - parts.log_z_a)
    q_cd = parts.log_z_d - parts.log_z_c
    q_bc = c_red * (u_c - u_h) / pair.t_cold
    q_da = c_red * (u_h - u_c) / pair.t_cold
    return _Strokes(q_ab, q_bc, q_cd, q_da, q_ab + q_da, q_bc + q_cd, w)


def stroke_heats(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode | str = CalcMode.AS_PRINTED,
    tol: float = DEFAULT_TOL,
) -> tuple[float, float, float, float]:
    """Reduced heats (q_ab, q_bc, q_cd, q_da)."""
    s = _evaluate(q, c_red, pair, CalcMode(calc_mode), tol, False)
    return s.q_ab, s.q_bc, s.q_cd, s.q_da


def heat_fluxes(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode | str = CalcMode.AS_PRINTED,
    tol: float = DEFAULT_TOL,
    appendix_sign: bool = False,
) -> tuple[float, float]:
    """Reduced (q_in, q_out).

    ``appendix_sign`` switches the AS_PRINTED hot-side isothermal term to
    the positive sign, +(T_h/T_c) L; it has no effect in FIRST_PRINCIPLES
    mode.
    """
    s = _evaluate(q, c_red, pair, CalcMode(calc_mode), tol, appendix_sign)
    return s.q_in, s.q_out


def _eta(q_in: float, w: float) -> float:
    if abs(q_in) < DEGENERATE_TOL:
        raise DegenerateCycleError(f"efficiency undefined: |q_in| = {abs(q_in):g}")
    return w / q_in


def _cop(q_in: float, w: float) -> float:
    if abs(w) < DEGENERATE_TOL:
        raise DegenerateCycleError(f"COP undefined: |w_net| = {abs(w):g}")
    return q_in / w


def efficiency(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode | str = CalcMode.AS_PRINTED,
    tol: float = DEFAULT_TOL,
    appendix_sign: bool = False,
) -> float:
    """eta = W / Q_in."""
    s = _evaluate(q, c_red, pair, CalcMode(calc_mode), tol, appendix_sign)
    return _eta(s.q_in, s.w_net)


def cop(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode | str = CalcMode.AS_PRINTED,
    tol: float = DEFAULT_TOL,
    appendix_sign: bool = False,
) -> float:
    """COP = Q_in / W, the reciprocal of :func:`efficiency`."""
    s = _evaluate(q, c_red, pair, CalcMode(calc_mode), tol, appendix_sign)
    return _cop(s.q_in, s.w_net)


def run_cycle(
    q: float,
    c_red: float,
    pair: ThermalPair,
    calc_mode: CalcMode | str = CalcMode.AS_PRINTED,
    tol: float = DEFAULT_TOL,
    appendix_sign: bool = False,
) -> StirlingResult:
    """Full cycle record from a single set of series evaluations.

    Unlike :func:`efficiency` and :func:`cop`, a vanishing denominator does
    not raise here; the affected ratio is reported as NaN.
    """
    calc_mode = CalcMode(calc_mode)
    s = _evaluate(q, c_red, pair, calc_mode, tol, appendix_sign)
    try:
        eta = _eta(s.q_in, s.w_net)
    except DegenerateCycleError:
        eta = math.nan
    try:
        cop_ = _cop(s.q_in, s.w_net)
    except DegenerateCycleError:
        cop_ = math.nan
    return StirlingResult(
        q_ab=s.q_ab,
        q_bc=s.q_bc,
        q_cd=s.q_cd,
        q_da=s.q_da,
        q_in=s.q_in,
        q_out=s.q_out,
        w_net=s.w_net,
        eta=eta,
        cop=cop_,
        mode=classify_mode(s.q_in, s.q_out, s.w_net),
        calc_mode=calc_mode,
    )
