"""Digit weightings: uniform mass, skewed mass, and band normality.

A weighting assigns each block a probability; products of single-digit
masses extend it to longer blocks.  The skewed family puts almost all of
its mass on the top digit, and the P enumeration is engineered so its
empirical block frequencies sit inside the corresponding tolerance bands.
"""

from fractions import Fraction

from cantornormal import build_C, build_P, check_eps_k_normal, check_pb_uniform, nu, uniform


def mass_tables():
    print("single-digit masses:")
    for b in (2, 4, 6):
        mu = nu(b)
        row = ", ".join(f"{d}:{mu.weight((d,))}" for d in range(b + 1))
        print(f"  skewed base {b}:  {row}")
    print(f"  uniform base 4: every digit gets {uniform(4).weight((1,))}")
    print()


def partial_uniformity():
    # below the top digit the skewed weighting looks exactly uniform,
    # just against the wrong denominator
    for b in (2, 4, 6):
        verdict = check_pb_uniform(nu(b), b, 2**b, k_max=2)
        print(f"  nu_{b} agrees with the uniform({2**b}) masses on digits < {b}: {verdict}")
    print("  nu_2 against uniform(2) masses:", check_pb_uniform(nu(2), 2, 2, k_max=2))
    print()


def band_check():
    text = build_P(6, 2)
    verdict = check_eps_k_normal(text, Fraction(1, 100), 2, nu(6))
    print(f"P(6,2) against nu_6 bands, tolerance 1/100, lengths <= 2:"
          f" passed={verdict.passed}")
    # the complete uniform enumeration has no top digit at all, so the
    # skewed bands reject it immediately
    verdict = check_eps_k_normal(build_C(3, 2), Fraction(1, 2), 1, nu(3))
    print(f"C(3,2) against nu_3 bands: passed={verdict.passed}")
    w = verdict.witness
    print(f"  first violation: block {w.block}, observed {w.observed},"
          f" band [{w.lower}, {w.upper}]")


if __name__ == "__main__":
    mass_tables()
    partial_uniformity()
    band_check()
