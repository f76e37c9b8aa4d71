"""Write the standard sweep tables (CSV) to an output directory.

Run: python scripts/sweep_tables.py [outdir] [--workers N]

Produces level tables, Stirling heat/work series versus T_h for several q
and T_c, Stirling and Otto mode maps, and Otto series versus T_h and r.
"""

import argparse
from pathlib import Path

from powerlaw_engines.spectrum import PotentialSpec
from powerlaw_engines.sweep import Axis, GridSpec, export, run_map, run_series, spectrum_series

Q_VALUES = (1.0, 3.0, 5.0, 100.0)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default="sweep_tables")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    th_axis = Axis("th", 1, 20, 96)

    export(spectrum_series(PotentialSpec.reduced(1.0, 1.0), Q_VALUES, 10), "csv", out / "levels.csv")

    for mode in ("as-printed", "first-principles"):
        for q in Q_VALUES:
            for tc in (1.5, 2.0, 2.5, 3.0):
                grid = GridSpec("stirling", th_axis, fixed={"q": q, "c_red": 1.0, "tc": tc}, calc_mode=mode)
                export(run_series(grid, args.workers), "csv", out / f"stirling_{mode}_q{q:g}_tc{tc:g}.csv")
            grid = GridSpec(
                "stirling", Axis("th", 1, 20, 64), Axis("tc", 1, 20, 64),
                fixed={"q": q, "c_red": 1.0}, calc_mode=mode,
            )
            m = run_map(grid, args.workers)
            export(m, "csv", out / f"stirling_map_{mode}_q{q:g}.csv")
            print(f"stirling {mode} q={q:g}: {m.mode_counts()}")

    for q in Q_VALUES:
        grid = GridSpec("otto", th_axis, fixed={"q": q, "c_red": 1.0, "tc": 1.5, "r": 1.2})
        export(run_series(grid, args.workers), "csv", out / f"otto_q{q:g}.csv")
        grid = GridSpec("otto", Axis("r", 1.0, 3.0, 81), fixed={"q": q, "c_red": 1.0, "th": 10.0, "tc": 1.5})
        export(run_series(grid, args.workers), "csv", out / f"otto_ratio_q{q:g}.csv")
    for r in (1.2, 1.6, 2.0):
        grid = GridSpec("otto", Axis("th", 1, 20, 64), Axis("tc", 1, 20, 64), fixed={"q": 3.0, "c_red": 1.0, "r": r})
        m = run_map(grid, args.workers)
        export(m, "csv", out / f"otto_map_r{r:g}.csv")
        print(f"otto r={r:g}: {m.mode_counts()}")
    print(f"tables written to {out}/")


if __name__ == "__main__":
    main()
