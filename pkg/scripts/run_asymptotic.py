"""T / T0 experiment for Q = x^2 + y^2 + z^2, p = 3; extra arguments go to the CLI.

    python3 scripts/run_asymptotic.py                    # n = 5..12, theta = 0.6
    python3 scripts/run_asymptotic.py --theta 0.75 --n-range 5:10
    python3 scripts/run_asymptotic.py --freeze           # rewrite the golden table
"""
import sys

from quadcong.cli import main

if __name__ == "__main__":
    defaults = ["asymptotic", "--form", "1 0 1 0 0 1", "--p", "3", "--n-range", "5:12", "--theta", "0.6"]
    sys.exit(main(defaults + sys.argv[1:]))
