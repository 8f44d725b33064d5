"""Reference experiments whose outputs are frozen under golden/."""
from __future__ import annotations

import io

from . import MASTER_SEED, __version__
from .conic import TernaryForm
from .golden import GOLDEN_DIR
from .quadric import DualForm, bound_sweep, dual_form

# T / T0 trend
ASYMPTOTIC_FORM = TernaryForm(1, 0, 1, 0, 0, 1)
ASYMPTOTIC_P = 3
ASYMPTOTIC_THETA = 0.6
ASYMPTOTIC_N = range(5, 13)
ASYMPTOTIC_GOLDEN = GOLDEN_DIR / "asymptotic_1_0_1_0_0_1_p3_theta0.6.csv"

# primitive zeros
SWEEP_BS = range(5, 101, 5)
SWEEP_COLUMNS = ["form", "B", "count", "bound", "ratio"]
SWEEP_GOLDEN = GOLDEN_DIR / "quadric_bound_ratio.csv"

# stratum listings
LISTING_FORM = "1 0 1 0 0 1"
LISTINGS = [(5, 1), (5, 2), (3, 3)]


def sweep_forms() -> dict[str, DualForm]:
    cone = DualForm(1, 0, 1, 0, 0, -1)
    return {
        "x2+y2-z2": cone,
        "16*(x2+y2-z2)": cone.scaled(16),
        "dual(1 0 1 0 0 -1)": dual_form(TernaryForm(1, 0, 1, 0, 0, -1)),
        "dual(1 1 -1 1 0 1)": dual_form(TernaryForm(1, 1, -1, 1, 0, 1)),
        "dual(2 1 -2 3 1 1)": dual_form(TernaryForm(2, 1, -2, 3, 1, 1)),
    }


def sweep_rows(Bs=SWEEP_BS) -> list[dict]:
    rows = []
    for name, F in sweep_forms().items():
        for row in bound_sweep(F, Bs):
            rows.append({"form": name, **row.as_dict()})
    return rows


def sweep_meta() -> dict:
    return {"tool": f"quadcong {__version__}", "seed": MASTER_SEED, "B": "5:100:5"}


def listing_path(p: int, n: int):
    return GOLDEN_DIR / f"enumerate_{LISTING_FORM.replace(' ', '_')}_p{p}_n{n}.csv"


def render_listing(p: int, n: int) -> str:
    from .cli import main

    buf = io.StringIO()
    code = main(["enumerate", "--form", LISTING_FORM, "--p", str(p), "--n", str(n), "--format", "csv"], stdout=buf)
    if code != 0:
        raise RuntimeError(f"enumerate exited with {code}")
    return buf.getvalue()
