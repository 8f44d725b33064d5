"""Freeze the stratum listings for Q = x^2 + y^2 + z^2 after checking them against the exhaustive oracle."""
from quadcong.conic import TernaryForm, enumerate_all
from quadcong.experiments import LISTING_FORM, LISTINGS, listing_path, render_listing
from quadcong.modarith import PrimePowerModulus
from quadcong.oracles import exhaustive_solutions

if __name__ == "__main__":
    q = TernaryForm.parse(LISTING_FORM).dehomogenize()
    for p, n in LISTINGS:
        m = PrimePowerModulus(p, n)
        assert enumerate_all(q, m).points() == exhaustive_solutions(q, m)
        path = listing_path(p, n)
        path.write_text(render_listing(p, n))
        print(path)
