"""Exit checks, one test each; every test also enforces its runtime budget.

Each test stores a one-line diagnostic under ``detail`` before asserting, so
the summary printed by ``conftest.py`` explains failures as well as passes.
"""

import math
import random
import time

import pytest

from powerlaw_engines.cli import main as cli_main
from powerlaw_engines.otto import otto_efficiency, run_otto_cycle
from powerlaw_engines.spectrum import PotentialSpec, energy_level, limit_spectra
from powerlaw_engines.stirling import CalcMode, Mode, heat_fluxes, net_work, run_cycle
from powerlaw_engines.sweep import Axis, GridSpec, run_map
from powerlaw_engines.thermo import DEFAULT_TOL, ThermalPair, mean_energy, partition_function
from powerlaw_engines.verify import brute_force_sum, geometric_oracle

pytestmark = pytest.mark.acceptance

AP, FP = CalcMode.AS_PRINTED, CalcMode.FIRST_PRINCIPLES
LN2 = math.log(2)

# electron in a 1 nm well, 1 meV strength
SI = PotentialSpec.si(1.0, 1.602176634e-22, 1e-9, 9.1093837015e-31)


def g(q):
    return 2 * q / (q + 1)


def sign_changes(values):
    signs = [v > 0 for v in values]
    return [i for i in range(len(signs) - 1) if signs[i] != signs[i + 1]]


def crossing(xs, ys):
    """Linear interpolation of the single zero of ys(xs)."""
    (i,) = sign_changes(ys)
    return xs[i] - ys[i] * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i])


def test_spectrum_limits(record_property):
    start = time.perf_counter()
    harmonic = max(
        abs(energy_level(n, SI).value / limit_spectra(n, SI)[0] - 1) for n in range(1, 21)
    )
    box_spec = SI.with_q(1e6)
    box = max(
        abs(energy_level(n, box_spec).value / limit_spectra(n, SI)[1] - 1) for n in range(1, 21)
    )
    elapsed = time.perf_counter() - start
    record_property("detail", f"harmonic rel {harmonic:.1e}, box rel {box:.1e}, {elapsed:.2f}s")
    assert harmonic < 1e-12
    assert box < 1e-4
    assert elapsed < 1


def test_thermo_oracle_equality(record_property):
    start = time.perf_counter()
    worst_geo = 0.0
    for x in (0.1, 0.5, 1, 5, 50):
        z, u = geometric_oracle(x, 1.0)
        worst_geo = max(
            worst_geo,
            abs(partition_function(1, x, 1.0).value / z - 1),
            abs(mean_energy(1, x, 1.0).value / u - 1),
        )
    worst_brute = 0.0
    for q in (2, 3, 100):
        for x in (0.1, 0.5, 1, 5, 50):
            p = {"q": q, "x": x}
            worst_brute = max(
                worst_brute,
                abs(partition_function(q, x, 1.0).value / brute_force_sum("partition", p) - 1),
                abs(mean_energy(q, x, 1.0).value / brute_force_sum("mean_energy", p) - 1),
            )
    elapsed = time.perf_counter() - start
    record_property("detail", f"geometric rel {worst_geo:.1e}, brute rel {worst_brute:.1e}, {elapsed:.2f}s")
    assert worst_geo < 1e-12
    assert worst_brute < 10 * DEFAULT_TOL
    assert elapsed < 1


def test_first_law_closure(record_property):
    start = time.perf_counter()
    rng = random.Random(20261016)
    worst = 0.0
    for _ in range(100):
        q, c = rng.uniform(1, 100), rng.uniform(0.1, 10)
        pair = ThermalPair(rng.uniform(1, 20), rng.uniform(1, 20))
        worst = max(worst, abs(run_cycle(q, c, pair, FP).closure_residual))
    elapsed = time.perf_counter() - start
    record_property("detail", f"max residual {worst:.1e} over 100 draws, {elapsed:.2f}s")
    assert worst < 1e-10
    assert elapsed < 5


def test_carnot_recovery(record_property):
    start = time.perf_counter()
    fp_dev, ap_dev, ap_eta = 0.0, 0.0, []
    for th, tc in [(2, 1), (4, 1), (10, 5)]:
        pair = ThermalPair(th, tc)
        c = 50 * th
        fp_dev = max(fp_dev, abs(run_cycle(1.0, c, pair, FP).eta - (1 - tc / th)))
        eta = run_cycle(1.0, c, pair, AP).eta
        ap_eta.append(eta)
        ap_dev = max(ap_dev, abs(eta - (-(1 + tc / th))))
    elapsed = time.perf_counter() - start
    record_property(
        "detail",
        f"first-principles dev {fp_dev:.1e}; as-printed eta {[round(e, 3) for e in ap_eta]} "
        f"vs -(1+Tc/Th), dev {ap_dev:.2f}; {elapsed:.2f}s",
    )
    assert fp_dev < 1e-3
    assert ap_dev < 1e-3
    assert elapsed < 1


def test_stirling_work_identity(record_property):
    start = time.perf_counter()
    rng = random.Random(5)
    mismatches = 0
    for _ in range(50):
        q = rng.uniform(1, 100)
        th, tc = rng.uniform(1, 20), rng.uniform(1, 20)
        w = run_cycle(q, rng.uniform(0.1, 10), ThermalPair(th, tc), AP).w_net
        mismatches += w != pytest.approx((th / tc + 1) * (LN2 + 4 * q / (q + 1)), rel=4e-16)
    slopes = [net_work(q, ThermalPair(11.0, 1.5), AP) - net_work(q, ThermalPair(10.0, 1.5), AP) for q in (1, 2, 3, 5)]
    increasing = all(a < b for a, b in zip(slopes, slopes[1:]))
    elapsed = time.perf_counter() - start
    record_property("detail", f"{mismatches}/50 mismatches, slopes {[round(s, 4) for s in slopes]}, {elapsed:.2f}s")
    assert mismatches == 0
    assert increasing
    assert elapsed < 1


def test_q_out_sign_structure(record_property):
    start = time.perf_counter()
    ths = Axis("th", 1, 20, 96).values()
    counts, ranges = {}, {}
    for tc in (1.5, 2.0, 2.5, 3.0):
        q_out = [heat_fluxes(3.0, 1.0, ThermalPair(th, tc), AP)[1] for th in ths]
        counts[tc] = len(sign_changes(q_out))
        ranges[tc] = (min(q_out), max(q_out))
    elapsed = time.perf_counter() - start
    lo, hi = ranges[1.5]
    record_property(
        "detail",
        f"sign changes per Tc {counts}; q_out at Tc=1.5 spans [{lo:.2f}, {hi:.2f}]; {elapsed:.2f}s",
    )
    assert counts[1.5] == 1
    cross = []
    for tc in (1.5, 2.0, 2.5, 3.0):
        q_out = [heat_fluxes(3.0, 1.0, ThermalPair(th, tc), AP)[1] for th in ths]
        cross.append(crossing(ths, q_out))
    assert all(a < b for a, b in zip(cross, cross[1:]))
    assert elapsed < 2


def _stirling_map(q, mode):
    grid = GridSpec(
        "stirling",
        Axis("th", 1, 20, 64),
        Axis("tc", 1, 20, 64),
        fixed={"q": q, "c_red": 1.0},
        calc_mode=mode,
    )
    return run_map(grid).mode_counts()


def test_stirling_mode_map(record_property):
    start = time.perf_counter()
    counts = {q: _stirling_map(q, AP) for q in (1, 3, 5, 100)}
    elapsed = time.perf_counter() - start
    heaters = {q: c.get(Mode.HEATER.value, 0) for q, c in counts.items()}
    fridges = {q: c.get(Mode.REFRIGERATOR.value, 0) for q, c in counts.items()}
    fp_heaters = {q: _stirling_map(q, FP).get(Mode.HEATER.value, 0) for q in (1, 100)}
    record_property(
        "detail",
        f"as-printed heater {heaters}, refrigerator {fridges}; "
        f"first-principles heater {fp_heaters}; {elapsed:.1f}s",
    )
    assert heaters[100] < heaters[1]
    assert all(n > 0 for n in fridges.values())
    assert elapsed < 30


def test_otto_null_point_and_bracket(record_property):
    start = time.perf_counter()
    worst_null = 0.0
    for q, r in [(1.0, 2.0), (3.0, 1.2), (7.0, 1.6)]:
        pair = ThermalPair(1.5 * r ** g(q), 1.5)
        res = run_otto_cycle(q, 1.0, pair, r)
        worst_null = max(worst_null, abs(res.q_in), abs(res.q_out), abs(res.w_net))
    rng = random.Random(8)
    worst_bracket = 0.0
    for _ in range(100):
        q, r = rng.uniform(1, 100), rng.uniform(0.2, 3)
        res = run_otto_cycle(q, rng.uniform(0.1, 10), ThermalPair(rng.uniform(1, 20), rng.uniform(1, 20)), r)
        worst_bracket = max(worst_bracket, abs(res.q_out + r ** -g(q) * res.q_in))
    ths = Axis("th", 1, 20, 96).values()
    runs = [run_otto_cycle(3.0, 1.0, ThermalPair(th, 1.5), 1.2) for th in ths]
    where = [sign_changes([getattr(x, k) for x in runs]) for k in ("q_in", "q_out", "w_net")]
    elapsed = time.perf_counter() - start
    record_property(
        "detail",
        f"null {worst_null:.1e}, bracket {worst_bracket:.1e}, sign changes at {where}, {elapsed:.2f}s",
    )
    assert worst_null < 1e-12
    assert worst_bracket < 1e-10
    assert len(where[0]) == 1 and where[0] == where[1] == where[2]
    assert elapsed < 2


def test_otto_efficiency_law(record_property):
    start = time.perf_counter()
    exact = otto_efficiency(1.0, 2.0) == 0.5
    q_values = [1 + 99 * i / 9 for i in range(10)]
    r_values = [1.05 + 2.95 * j / 9 for j in range(10)]
    law = max(abs(otto_efficiency(q, r) - (1 - r ** -g(q))) for q in q_values for r in r_values)
    rng = random.Random(30)
    pairs = [ThermalPair(rng.uniform(1, 20), rng.uniform(1, 20)) for _ in range(20)]
    worst, used = 0.0, 0
    for q in q_values[::3]:
        for r in r_values[::3]:
            for pair in pairs:
                res = run_otto_cycle(q, 1.0, pair, r)
                if abs(res.q_in) > 1e-6:
                    used += 1
                    worst = max(worst, abs(res.w_net / res.q_in - otto_efficiency(q, r)))
    elapsed = time.perf_counter() - start
    record_property("detail", f"law dev {law:.1e}, numeric ratio dev {worst:.1e} over {used} cells, {elapsed:.2f}s")
    assert exact
    assert law <= 2.3e-16
    assert worst < 1e-9
    assert elapsed < 2


def test_otto_mode_map(record_property):
    start = time.perf_counter()
    engines, hot_inverted = {}, 0
    for r in (1.2, 1.6, 2.0):
        grid = GridSpec("otto", Axis("th", 1, 20, 64), Axis("tc", 1, 20, 64), fixed={"q": 3.0, "c_red": 1.0, "r": r})
        m = run_map(grid)
        engines[r] = m.mode_counts().get(Mode.ENGINE.value, 0)
        hot_inverted += sum(
            c.mode == Mode.ENGINE.value and c.params["th"] < c.params["tc"] for c in m
        )
    elapsed = time.perf_counter() - start
    record_property("detail", f"engine cells per r {engines}, engines with Th<Tc {hot_inverted}, {elapsed:.1f}s")
    assert engines[1.2] <= engines[1.6] <= engines[2.0]
    assert hot_inverted == 0
    assert elapsed < 30


def test_q_saturation(record_property):
    start = time.perf_counter()
    pair = ThermalPair(10.0, 1.5)
    spread = {}
    for mode in (AP, FP):
        a, b = run_cycle(50.0, 1.0, pair, mode), run_cycle(100.0, 1.0, pair, mode)
        for k in ("q_in", "q_out", "w_net", "eta", "cop"):
            spread[f"{mode.value}:{k}"] = abs(getattr(a, k) / getattr(b, k) - 1)
    a, b = run_otto_cycle(50.0, 1.0, pair, 1.2), run_otto_cycle(100.0, 1.0, pair, 1.2)
    for k in ("q_in", "q_out", "w_net", "eta"):
        spread[f"otto:{k}"] = abs(getattr(a, k) / getattr(b, k) - 1)
    elapsed = time.perf_counter() - start
    over = {k: f"{v:.2%}" for k, v in spread.items() if v >= 0.01}
    record_property("detail", f"max spread {max(spread.values()):.2%}, above 1%: {over or 'none'}, {elapsed:.2f}s")
    assert not over
    assert elapsed < 1


def test_sweep_determinism(record_property, tmp_path, capsys):
    start = time.perf_counter()
    base = ["sweep", "stirling", "--q", "3", "--c-red", "1", "--axis", "th:1:20:48", "--axis2", "tc:1:20:48"]
    outputs = []
    for name, workers in (("a", "1"), ("b", "1"), ("c", "4")):
        path = tmp_path / f"{name}.csv"
        assert cli_main(base + ["--workers", workers, "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    same = outputs[0] == outputs[1] == outputs[2]
    record_property("detail", f"2 sequential + 1 parallel runs byte-identical: {same}, {elapsed:.1f}s")
    assert same
    assert elapsed < 60
