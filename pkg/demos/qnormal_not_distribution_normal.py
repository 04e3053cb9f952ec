"""A number whose block statistics look normal while its orbit is not.

The scaled construction concatenates P enumerations over doubling bases.
Because later segments use enormous bases but tiny digits, every shifted
value q_1...q_n * x mod 1 is trapped near zero: the orbit enclosures all
have upper endpoints below (j+1)/2^j for the segment index j in force.
The empirical distribution of those endpoints is then about as far from
uniform as possible.
"""

from fractions import Fraction

from cantornormal import (
    CantorExpansion,
    orbit_point,
    qnex_spec,
    star_discrepancy,
    unit_sequence,
    verify_notdn_scaled,
    verify_t0_scaled,
)


def orbit_sample():
    spec = qnex_spec()
    exp = CantorExpansion.from_spec(spec)
    print("orbit enclosures along the construction (tail 64):")
    total = spec.total_length
    for n in (0, 10**7, 10**8, 10**9, total // 2):
        iv = orbit_point(exp, n, tail=64)
        j = spec.t0_index(n)
        print(f"  n={n:>13}  segment j={j:>2}  upper <= {float(iv.hi):.3e}")
    print()


def certificates():
    cert = verify_t0_scaled(n_checkpoints=50)
    print(f"digit and enclosure bounds at 50 checkpoints: passed={cert.passed}")
    for j, hi in sorted(cert.details["max_hi_by_segment"].items(), key=lambda kv: int(kv[0])):
        print(f"  segment j={j}: max orbit upper {float(hi):.6f} vs (j+1)/2^j = {(int(j)+1)/2**int(j):.6f}")
    cert = verify_notdn_scaled(n_checkpoints=50)
    d = cert.details["discrepancy"]
    print(f"star discrepancy of the orbit endpoints: {float(d):.4f} (uniform would head to 0)")
    print()


def toy_contrast():
    # a genuinely equidistributed sample for scale
    pts = unit_sequence(tuple(Fraction(2 * i - 1, 200) for i in range(1, 101)))
    print(f"for contrast, a centered 100-point grid has D* = {star_discrepancy(pts)}")


if __name__ == "__main__":
    orbit_sample()
    certificates()
    toy_contrast()
