"""Primitive-zero sweep for the reference forms.

    python3 scripts/quadric_sweep.py            # print
    python3 scripts/quadric_sweep.py --freeze   # rewrite golden/quadric_bound_ratio.csv
"""
import argparse

from quadcong.experiments import SWEEP_COLUMNS, SWEEP_GOLDEN, sweep_forms, sweep_meta, sweep_rows
from quadcong.golden import write_golden
from quadcong.quadric import count_primitive_zeros


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--freeze", action="store_true")
    args = ap.parse_args()
    # the two zero-counting algorithms must agree before anything is frozen
    for name, F in sweep_forms().items():
        for B in (5, 50, 100):
            assert count_primitive_zeros(F, B, "triple") == count_primitive_zeros(F, B, "quadratic"), (name, B)
    rows = sweep_rows()
    for r in rows:
        print(f"{r['form']:>20} {r['B']:>4} {r['count']:>5} {r['bound']:>12.4f} {r['ratio']:.6f}")
    if args.freeze:
        print(write_golden(SWEEP_GOLDEN, SWEEP_COLUMNS, rows, sweep_meta()))


if __name__ == "__main__":
    main()
