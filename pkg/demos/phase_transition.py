"""Narrative demo: the symmetry phase transition in the max-degree-3 family.

A uniform random graph whose degrees are all 3 is almost surely asymmetric.
Sprinkling in degree-1 vertices creates symmetry: once their number passes
the order of sqrt(n), two leaves sharing a neighbor (a "cherry") appear with
constant probability, and swapping them is a nontrivial automorphism.

This script sweeps the leaf count n1 = ceil(c * sqrt(n)) across c and prints
the estimated probability of symmetry with 95% Wilson intervals, alongside
the closed-form Paley-Zygmund lower bound from the cherry second moment.

Run:  python demos/phase_transition.py
"""
import math

from degsym.harness import Bounded, Regular, run_point


def main() -> None:
    trials = 100
    print(f"{'family':>24} {'n':>6} {'p_sym':>7} {'95% CI':>17} {'PZ bound':>9}")

    row = run_point(Regular(degree=3), 1000, trials, seed=7)
    print(
        f"{'3-regular':>24} {row.n:>6} {row.p_sym:>7.3f} "
        f"[{row.p_sym_lo:.3f}, {row.p_sym_hi:.3f}] {row.pz_lower:>9.3f}"
    )

    for c in (0.5, 1.0, 2.0, 4.0):
        fam = Bounded(c1=c, b1=0.5)
        for n in (1000, 4000):
            row = run_point(fam, n, trials, seed=7, point_id=int(10 * c) + n)
            label = f"n1=ceil({c:g}*sqrt(n))"
            print(
                f"{label:>24} {row.n:>6} {row.p_sym:>7.3f} "
                f"[{row.p_sym_lo:.3f}, {row.p_sym_hi:.3f}] {row.pz_lower:>9.3f}"
            )

    print(
        "\nReading: p_sym climbs with c and the Paley-Zygmund bound tracks it "
        "from below — the transition lives at n1 ~ sqrt(n)."
    )


if __name__ == "__main__":
    main()
