"""Reference oracles for testing.

Nothing here reuses the series machinery of :mod:`thermo`, :mod:`stirling`
or :mod:`otto`.  Sums are plain ascending loops with a fixed upper index and
no early exit, and the index is chosen so that the last term sits below
1e-16 of the leading one.  The only import from the main path is
:func:`thermo.mean_energy`, and only as the *value under test* in
:func:`finite_difference_check`.

The brute-force sums work in absolute (not ground-scaled) Boltzmann factors
and so underflow once c_red/t exceeds roughly 700; stay below that.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

TERM_FLOOR = 1e-16


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    main: float
    oracle: float
    abs_dev: float
    rel_dev: float
    tolerance: float
    passed: bool


def _report(quantity: str, main: float, oracle: float, tolerance: float) -> OracleReport:
    abs_dev = abs(main - oracle)
    rel_dev = abs_dev / abs(oracle) if oracle != 0 else abs_dev
    return OracleReport(quantity, main, oracle, abs_dev, rel_dev, tolerance, rel_dev <= tolerance)


def _g(q: float) -> float:
    return 2.0 * q / (q + 1.0)


def geometric_oracle(c_red: float, t: float) -> tuple[float, float]:
    """Closed forms at q = 1: Z = y/(1-y), U/C = 1/(1-y), y = exp(-c_red/t)."""
    x = c_red / t
    one_minus_y = -math.expm1(-x)
    return math.exp(-x) / one_minus_y, 1.0 / one_minus_y


def oracle_n_max(q: float, x: float) -> int:
    """Smallest N with N^g exp(-x (N^g - 1)) below TERM_FLOOR, past the peak.

    Both the bare and the n^g-weighted Boltzmann terms at N are then under
    1e-16 of the ground term, hence of any partial sum.
    """
    g = _g(q)
    log_floor = math.log(TERM_FLOOR)
    n = 1
    while True:
        e = float(n) ** g
        if x * e > 1.0 and math.log(e) - x * (e - 1.0) < log_floor:
            return n
        n += 1 if n < 64 else n // 8


def _plain(f, n_max: int) -> float:
    total = 0.0
    for n in range(1, n_max + 1):
        total += f(n)
    return total


def _z(g: float, x: float, n_max: int) -> float:
    return _plain(lambda n: math.exp(-x * float(n) ** g), n_max)


def _moment(g: float, x: float, n_max: int) -> float:
    return _plain(lambda n: float(n) ** g * math.exp(-x * float(n) ** g), n_max)


def _otto_bracket(p: Mapping, n_max: int | None) -> float:
    q, c, th, tc, r = p["q"], p["c_red"], p["th"], p["tc"], p["r"]
    g = _g(q)
    xh = c / th
    xc = c * r**-g / tc
    nh = n_max or oracle_n_max(q, xh)
    nc = n_max or oracle_n_max(q, xc)
    zh, zc = _z(g, xh, nh), _z(g, xc, nc)
    n_all = max(nh, nc)
    return _plain(
        lambda n: float(n) ** g
        * (math.exp(-xh * float(n) ** g) / zh - math.exp(-xc * float(n) ** g) / zc),
        n_all,
    )


def brute_force_sum(selector: str, params: Mapping, n_max: int | None = None) -> float:
    """Direct evaluation of one of the model's series.

    Selectors and the keys they read from ``params``:

    ``partition``           q, x  -- sum exp(-x n^g)
    ``energy_moment``       q, x  -- sum n^g exp(-x n^g)
    ``mean_energy``         q, x  -- ratio of the two above
    ``stirling_isochoric``  q, c_red, th, tc -- Theta-weighted isochoric sum
                            (c/(2 T_c)) sum n^g (e_c/Theta_c + e_h/Theta_h),
                            Theta = 2Z
    ``otto_q_in``, ``otto_q_out``, ``otto_work``
                            q, c_red, th, tc, r -- normalised-occupation forms,
                            c_red the hot-branch scale

    ``n_max=None`` picks the index per sum with :func:`oracle_n_max`.
    """
    p = dict(params)
    if selector in ("partition", "energy_moment", "mean_energy"):
        g, x = _g(p["q"]), p["x"]
        n = n_max or oracle_n_max(p["q"], x)
        if selector == "partition":
            return _z(g, x, n)
        if selector == "energy_moment":
            return _moment(g, x, n)
        return _moment(g, x, n) / _z(g, x, n)
    if selector == "stirling_isochoric":
        q, c, th, tc = p["q"], p["c_red"], p["th"], p["tc"]
        g = _g(q)
        xh, xc = c / th, c / tc
        nh = n_max or oracle_n_max(q, xh)
        nc = n_max or oracle_n_max(q, xc)
        theta_h, theta_c = 2.0 * _z(g, xh, nh), 2.0 * _z(g, xc, nc)
        body = _plain(
            lambda n: float(n) ** g
            * (
                math.exp(-xc * float(n) ** g) / theta_c
                + math.exp(-xh * float(n) ** g) / theta_h
            ),
            max(nh, nc),
        )
        return c / (2.0 * tc) * body
    if selector in ("otto_q_in", "otto_q_out", "otto_work"):
        g = _g(p["q"])
        b = _otto_bracket(p, n_max)
        scale = p["c_red"] / p["tc"]
        if selector == "otto_q_in":
            return scale * b
        if selector == "otto_q_out":
            return -scale * p["r"] ** -g * b
        return (1.0 - p["r"] ** -g) * scale * b
    raise KeyError(f"unknown series selector {selector!r}")


def stirling_as_printed_oracle(q: float, c_red: float, th: float, tc: float) -> dict[str, float]:
    """Direct evaluation of the published Stirling record (main-text signs)."""
    k = 4.0 * q / (q + 1.0)
    lam = math.log(2.0) + k
    s = brute_force_sum("stirling_isochoric", {"q": q, "c_red": c_red, "th": th, "tc": tc})
    q_in = -(th / tc) * lam + s
    w = (th / tc + 1.0) * lam
    return {
        "q_ab": -(th / tc) * lam,
        "q_bc": s,
        "q_cd": -k,
        "q_da": s,
        "q_in": q_in,
        "q_out": s - k,
        "w_net": w,
        "eta": w / q_in,
        "cop": q_in / w,
    }


def finite_difference_check(
    q: float, c_red: float, t: float, tolerance: float = 1e-6, rel_step: float = 1e-6
) -> OracleReport:
    """Compare ``thermo.mean_energy`` with -d ln Z / d beta by central difference.

    Here beta is 1/t in 1/K and ln Z comes from a brute-force sum, so the
    derivative is c_red * <n^g>; dividing by c_red gives U in units of C_q.
    """
    from .thermo import mean_energy

    beta = 1.0 / t
    h = rel_step * beta
    g = _g(q)
    n = oracle_n_max(q, c_red * (beta - h))
    ln_z_plus = math.log(_z(g, c_red * (beta + h), n))
    ln_z_minus = math.log(_z(g, c_red * (beta - h), n))
    oracle = -(ln_z_plus - ln_z_minus) / (2.0 * h) / c_red
    main = mean_energy(q, c_red, t).value
    return _report("mean_energy", main, oracle, tolerance)
