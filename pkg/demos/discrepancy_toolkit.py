"""Exact star discrepancy and the bound chain that controls it.

Everything here is Fraction arithmetic: the discrepancy of a finite point
set is an exact rational, and each bound either holds exactly or fails
exactly.
"""

from fractions import Fraction

from cantornormal import (
    build_C,
    concat_bound,
    e1l_bound,
    epsbar,
    boundf_hypotheses,
    f_bound,
    kn1_bound,
    PrefixWeights,
    scaled_digits,
    star_discrepancy,
    unit_sequence,
)


def exact_values():
    print("exact star discrepancy:")
    for label, pts in (
        ("single point at 0     ", (Fraction(0),)),
        ("single point at 1/2   ", (Fraction(1, 2),)),
        ("centered 4-point grid ", tuple(Fraction(2 * i - 1, 8) for i in range(1, 5))),
        ("clustered at one value", (Fraction(1, 3),) * 5),
    ):
        print(f"  {label} D* = {star_discrepancy(unit_sequence(pts))}")
    print()


def displacement_bound():
    pts = tuple(sorted(Fraction(k, 7) for k in range(7)))
    d = star_discrepancy(pts)
    bound = kn1_bound(pts)
    print(f"left-endpoint sevenths: D* = {d}, displacement bound = {bound}")
    print()


def concatenation():
    parts = [(2, 3, Fraction(1, 4)), (1, 4, Fraction(1, 2))]
    print("two part-families, copies x length with per-part tolerance:")
    print(f"  weighted-average bound = {concat_bound(parts)}")
    print()


def scaled_block_bound():
    text = build_C(3, 2)
    pts = scaled_digits(text, 3)
    d = star_discrepancy(pts)
    bound = e1l_bound(3, Fraction(0, 1) + Fraction(1, 100), len(text))
    print(f"C(3,2) scaled into [0,1): D* = {d}, single-block bound = {bound}")
    print()


def interpolated():
    pw = PrefixWeights(((4, 2, Fraction(1, 4)), (2, 3, Fraction(1, 4))), 5, Fraction(1, 10))
    assert boundf_hypotheses(pw)
    print("interpolated prefix bound f(copies_of_next, extra_digits):")
    for w in range(3):
        row = "  ".join(f"{float(f_bound(pw, w, z)):.4f}" for z in range(6))
        print(f"  w={w}:  {row}")
    print(f"  supremum (the running tolerance) = {epsbar(pw)}")


if __name__ == "__main__":
    exact_values()
    displacement_bound()
    concatenation()
    scaled_block_bound()
    interpolated()
