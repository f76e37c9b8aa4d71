"""Side-by-side as-printed vs first-principles Stirling numbers.

Run: python scripts/compare_modes.py

Prints the two records at a reference point, the high-scale efficiency of
each against Carnot, where the as-printed Q_out crosses zero for a few
cold-bath temperatures, and how much each output still moves between q=50
and q=100.
"""

import math

from powerlaw_engines.otto import run_otto_cycle
from powerlaw_engines.stirling import CalcMode, heat_fluxes, run_cycle
from powerlaw_engines.thermo import ThermalPair

AP, FP = CalcMode.AS_PRINTED, CalcMode.FIRST_PRINCIPLES
FIELDS = ("q_ab", "q_bc", "q_cd", "q_da", "q_in", "q_out", "w_net", "eta", "cop")


def first_zero(f, lo, hi, steps=400):
    prev = f(lo)
    for i in range(1, steps + 1):
        x = lo + (hi - lo) * i / steps
        cur = f(x)
        if (prev > 0) != (cur > 0):
            return x
        prev = cur
    return math.nan


def main() -> None:
    pair = ThermalPair(10.0, 1.5)
    ap, fp = run_cycle(3.0, 1.0, pair, AP), run_cycle(3.0, 1.0, pair, FP)
    print("q=3, c_red=1 K, T_h=10 K, T_c=1.5 K")
    print(f"{'':8}{'as-printed':>16}{'first-princ.':>16}")
    for k in FIELDS:
        print(f"{k:8}{getattr(ap, k):16.8g}{getattr(fp, k):16.8g}")
    print(f"{'mode':8}{ap.mode.value:>16}{fp.mode.value:>16}")

    print("\nefficiency at c_red/T_h = 50, q=1")
    for th, tc in [(2, 1), (4, 1), (10, 5)]:
        p = ThermalPair(th, tc)
        print(
            f"  T_h/T_c={th}/{tc}: carnot {1 - tc / th:.4f}  "
            f"first-princ. {run_cycle(1.0, 50 * th, p, FP).eta:.4f}  "
            f"as-printed {run_cycle(1.0, 50 * th, p, AP).eta:.4f}"
        )

    print("\nas-printed Q_out zero crossing in T_h (q=3, c_red=1 K), searched up to 60 K")
    for tc in (1.5, 2.0, 2.5, 3.0):
        x = first_zero(lambda th: heat_fluxes(3.0, 1.0, ThermalPair(th, tc), AP)[1], 1.0, 60.0)
        print(f"  T_c={tc}: {x:.2f} K")

    print("\nrelative change q=50 -> q=100 at T_h=10 K, T_c=1.5 K (otto r=1.2)")
    for label, a, b in [
        ("as-printed", run_cycle(50, 1.0, pair, AP), run_cycle(100, 1.0, pair, AP)),
        ("first-princ.", run_cycle(50, 1.0, pair, FP), run_cycle(100, 1.0, pair, FP)),
        ("otto", run_otto_cycle(50, 1.0, pair, 1.2), run_otto_cycle(100, 1.0, pair, 1.2)),
    ]:
        keys = ("q_in", "q_out", "w_net", "eta")
        print(f"  {label:13}" + "  ".join(f"{k} {abs(getattr(a, k) / getattr(b, k) - 1):.2%}" for k in keys))


if __name__ == "__main__":
    main()
