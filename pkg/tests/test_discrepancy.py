"""Star discrepancy, its classical bounds, and the interpolation bound."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantornormal.blocks import Block
from cantornormal.constructions import build_C
from cantornormal.discrepancy import (
    DiscrepancyReport,
    PrefixWeights,
    boundf_hypotheses,
    concat_bound,
    e1l_bound,
    epsbar,
    f_bound,
    kn1_bound,
    scaled_digits,
    star_discrepancy,
    star_discrepancy_from_counts,
    unit_sequence,
)

from oracles import sweep_dstar

points = st.lists(
    st.integers(1, 60).flatmap(
        lambda den: st.integers(0, den - 1).map(lambda num: Fraction(num, den))
    ),
    min_size=1,
    max_size=40,
)


def test_unit_sequence_validation():
    assert unit_sequence([0, Fraction(1, 2)]) == (Fraction(0), Fraction(1, 2))
    with pytest.raises(ValueError):
        unit_sequence([Fraction(1)])
    with pytest.raises(ValueError):
        unit_sequence([Fraction(-1, 3)])


def test_star_discrepancy_frozen():
    assert star_discrepancy([Fraction(0)]) == 1
    assert star_discrepancy([Fraction(1, 2)]) == Fraction(1, 2)
    # centered two-point grid: best possible
    assert star_discrepancy([Fraction(1, 4), Fraction(3, 4)]) == Fraction(1, 4)
    with pytest.raises(ValueError):
        star_discrepancy([])


@pytest.mark.parametrize("n", [1, 2, 3, 7, 25])
def test_centered_grid_is_optimal(n):
    grid = [Fraction(2 * i - 1, 2 * n) for i in range(1, n + 1)]
    assert star_discrepancy(grid) == Fraction(1, 2 * n)
    assert kn1_bound(grid) == Fraction(1, 2 * n)


@given(points)
def test_star_discrepancy_matches_sweep(zs):
    assert star_discrepancy(zs) == sweep_dstar(zs)


@given(points)
def test_star_discrepancy_is_order_invariant(zs):
    assert star_discrepancy(list(reversed(zs))) == star_discrepancy(zs)


@given(points)
def test_star_discrepancy_range(zs):
    d = star_discrepancy(zs)
    assert Fraction(1, 2 * len(zs)) <= d <= 1


@given(points)
def test_counts_interface_agrees(zs):
    counts = {}
    for z in zs:
        counts[z] = counts.get(z, 0) + 1
    assert star_discrepancy_from_counts(counts, len(zs)) == star_discrepancy(zs)


def test_counts_interface_partial_mass():
    # missing mass shows up as a right-end gap
    assert star_discrepancy_from_counts({Fraction(0): 1}, 2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        star_discrepancy_from_counts({}, 0)


@given(points)
def test_kn1_bounds_discrepancy_on_sorted_input(zs):
    zs = sorted(zs)
    assert star_discrepancy(zs) <= kn1_bound(zs)


def test_kn1_frozen_and_validation():
    # displacement of (0, 1/2) from (1/4, 3/4): both off by 1/4
    assert kn1_bound([Fraction(0), Fraction(1, 2)]) == Fraction(1, 2)
    with pytest.raises(ValueError):
        kn1_bound([Fraction(1, 2), Fraction(1, 4)])
    with pytest.raises(ValueError):
        kn1_bound([])


def test_concat_bound_frozen():
    parts = [(2, 3, Fraction(1, 4)), (1, 4, Fraction(1, 2))]
    assert concat_bound(parts) == Fraction(7, 20)
    with pytest.raises(ValueError):
        concat_bound([(0, 0, Fraction(1, 2))])  # no points at all
    with pytest.raises(ValueError):
        concat_bound([(-1, 3, Fraction(1, 2))])


@given(
    st.lists(
        st.tuples(
            st.integers(1, 3),
            st.lists(
                st.integers(1, 24).flatmap(
                    lambda den: st.integers(0, den - 1).map(lambda p: Fraction(p, den))
                ),
                min_size=1,
                max_size=6,
            ),
        ),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=60)
def test_concat_bound_covers_actual_concatenation(families):
    # feed each family's exact discrepancy in as its eps; the weighted
    # average must then cover the concatenated sequence
    parts = []
    seq = []
    for copies, pts in families:
        parts.append((copies, len(pts), star_discrepancy(pts)))
        seq.extend(pts * copies)
    assert star_discrepancy(seq) <= concat_bound(parts)


def test_scaled_digits():
    assert scaled_digits(Block(4, (0, 3, 2)), 4) == (
        Fraction(0),
        Fraction(3, 4),
        Fraction(2, 4),
    )
    with pytest.raises(ValueError):
        scaled_digits((4,), 4)


def test_e1l_bound_frozen_and_validation():
    assert e1l_bound(3, Fraction(1, 100), 18) == Fraction(1, 3) + Fraction(1, 100) + Fraction(1, 18)
    with pytest.raises(ValueError):
        e1l_bound(1, Fraction(1, 2), 10)
    with pytest.raises(ValueError):
        e1l_bound(3, Fraction(0), 10)
    with pytest.raises(ValueError):
        e1l_bound(3, Fraction(1, 2), 0)


def test_e1l_bound_covers_enumeration_block():
    # every digit of this block has frequency exactly 1/3
    blk = build_C(3, 2)
    d = star_discrepancy(scaled_digits(blk, 3))
    assert d == Fraction(1, 3)
    assert d <= e1l_bound(3, Fraction(1, 100), len(blk))


# ---------------------------------------------------------------------------
# Interpolation bound.
# ---------------------------------------------------------------------------


def pw_example():
    return PrefixWeights(
        entries=((4, 2, Fraction(1, 4)), (2, 3, Fraction(1, 4))),
        next_length=5,
        next_eps=Fraction(1, 10),
    )


def test_prefix_weights_validation():
    with pytest.raises(ValueError):
        PrefixWeights(entries=(), next_length=5, next_eps=Fraction(1, 10))
    with pytest.raises(ValueError):
        PrefixWeights(entries=((1, 0, Fraction(1, 2)),), next_length=5, next_eps=Fraction(1, 10))
    with pytest.raises(ValueError):
        PrefixWeights(entries=((-1, 2, Fraction(1, 2)),), next_length=5, next_eps=Fraction(1, 10))
    with pytest.raises(ValueError):
        PrefixWeights(entries=((1, 2, Fraction(1, 2)),), next_length=0, next_eps=Fraction(1, 10))


def test_f_bound_hand_computed():
    pw = pw_example()
    assert pw.included_points == 14
    assert pw.included_mass == Fraction(7, 2)
    assert f_bound(pw, 0, 0) == Fraction(1, 4)
    assert f_bound(pw, 1, 0) == Fraction(4, 19)
    assert f_bound(pw, 0, 1) == Fraction(3, 10)
    assert epsbar(pw) == Fraction(17, 38)
    assert epsbar(pw) == f_bound(pw, 0, pw.next_length)


def test_f_bound_validation():
    pw = pw_example()
    with pytest.raises(ValueError):
        f_bound(pw, -1, 0)
    with pytest.raises(ValueError):
        f_bound(pw, 0, 6)  # z beyond next_length
    empty = PrefixWeights(entries=((0, 2, Fraction(1, 4)),), next_length=5, next_eps=Fraction(1, 10))
    with pytest.raises(ValueError):
        f_bound(empty, 0, 0)


def test_hypotheses_pass_on_example():
    rep = boundf_hypotheses(pw_example())
    assert rep.holds
    assert bool(rep)
    assert rep.failures == ()


def test_hypotheses_failure_names():
    # zero multiplicity on the last included family
    rep = boundf_hypotheses(
        PrefixWeights(((4, 2, Fraction(1, 4)), (0, 3, Fraction(1, 4))), 5, Fraction(1, 10))
    )
    assert "last-multiplicity-positive" in rep.failures

    # head families carry eps >= 1, so their mass swamps their count
    rep = boundf_hypotheses(
        PrefixWeights(((1, 2, Fraction(3, 2)), (2, 3, Fraction(1, 4))), 5, Fraction(1, 10))
    )
    assert rep.failures == ("earlier-mass-dominates-error",)

    # single included family has an empty head
    rep = boundf_hypotheses(PrefixWeights(((2, 3, Fraction(1, 4)),), 5, Fraction(1, 10)))
    assert "earlier-mass-dominates-error" in rep.failures

    # next family's tolerance not below 1
    rep = boundf_hypotheses(
        PrefixWeights(((4, 2, Fraction(1, 4)), (2, 3, Fraction(1, 4))), 5, Fraction(1))
    )
    assert "next-eps-below-one" in rep.failures

    # next block too long relative to the last included family
    rep = boundf_hypotheses(
        PrefixWeights(((4, 2, Fraction(1, 4)), (1, 1, Fraction(1, 2))), 10, Fraction(1, 2))
    )
    assert "next-block-small-enough" in rep.failures


def test_hypotheses_allow_perfect_next_family():
    # eps' = 0 on the next family trivially satisfies the length condition
    pw = PrefixWeights(((4, 2, Fraction(1, 4)), (2, 3, Fraction(1, 4))), 50, Fraction(0))
    assert boundf_hypotheses(pw).holds


def test_epsbar_is_grid_maximum():
    # under the hypotheses, f decreases in whole blocks and increases in
    # extras, so the corner (0, next_length) dominates the whole grid
    pw = pw_example()
    bar = epsbar(pw)
    for w in range(4):
        for z in range(pw.next_length + 1):
            val = f_bound(pw, w, z)
            if (w, z) == (0, pw.next_length):
                assert val == bar
            else:
                assert val < bar
            if w >= 1:
                assert val < f_bound(pw, w - 1, z)
            if z >= 1:
                assert val > f_bound(pw, w, z - 1)


def test_discrepancy_report():
    rep = DiscrepancyReport(10, Fraction(1, 5), Fraction(1, 4))
    assert rep.within is True
    assert rep.to_json() == {
        "n": 10,
        "discrepancy": "1/5",
        "bound": "1/4",
        "within": True,
    }
    assert DiscrepancyReport(10, Fraction(1, 2), Fraction(1, 4)).within is False
    bare = DiscrepancyReport(10, Fraction(1, 5))
    assert bare.within is None
    assert bare.to_json() == {"n": 10, "discrepancy": "1/5"}
