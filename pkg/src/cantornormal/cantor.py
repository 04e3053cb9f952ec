"""Series expansions of reals against a varying base sequence.

Positions are 1-based throughout.  A base sequence q assigns an integer
q_n >= 2 to each position; a digit sequence E with 0 <= E_n <= q_n - 1
represents the real

    x = sum_n E_n / (q_1 * q_2 * ... * q_n).

All arithmetic is exact (int and Fraction): a finite digit prefix pins x
into a closed rational interval of width 1/(q_1*...*q_n), and the orbit
of x under repeated multiply-by-q_n-mod-1 is enclosed the same way.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .blocks import DigitString, count_prefix_occurrences, digit_data, tally_blocks
from .constructions import ConstructionSpec
from .errors import InvalidSpecError, NeedsMoreDigitsError, SizeLimitError
from .limits import resolve_cap


def _validate_base(q: int, n: int) -> int:
    if not isinstance(q, int) or q < 2:
        raise InvalidSpecError(f"base entry at position {n} must be an integer >= 2, got {q}")
    return q


class BasicSequence:
    """A base sequence q_1, q_2, ... with entries >= 2.

    Backed by a constant, an explicit finite list, a construction spec, or
    an arbitrary rule.  Finite backings expose a ``horizon`` (the largest
    valid position); unbounded backings have ``horizon`` None.
    """

    def __init__(self, fn: Callable[[int], int], horizon: int | None = None,
                 const: int | None = None, spec: ConstructionSpec | None = None):
        self._fn = fn
        self.horizon = horizon
        self.const = const
        self.spec = spec

    @classmethod
    def constant(cls, q: int) -> "BasicSequence":
        _validate_base(q, 1)
        return cls(lambda n: q, horizon=None, const=q)

    @classmethod
    def explicit(cls, qs: Sequence[int]) -> "BasicSequence":
        qs = tuple(qs)
        if not qs:
            raise InvalidSpecError("explicit base sequence must be nonempty")
        for n, q in enumerate(qs, start=1):
            _validate_base(q, n)

        def fn(n: int, _qs=qs) -> int:
            return _qs[n - 1]

        return cls(fn, horizon=len(qs))

    @classmethod
    def from_spec(cls, spec: ConstructionSpec) -> "BasicSequence":
        return cls(spec.q_at, horizon=spec.total_length, spec=spec)

    @classmethod
    def from_rule(cls, fn: Callable[[int], int], horizon: int | None = None) -> "BasicSequence":
        return cls(fn, horizon=horizon)

    def q(self, n: int) -> int:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"positions are 1-based integers, got {n}")
        if self.horizon is not None and n > self.horizon:
            raise NeedsMoreDigitsError(n, self.horizon, what="base entries")
        return _validate_base(self._fn(n), n)

    def prefix(self, n: int) -> list[int]:
        return [self.q(m) for m in range(1, n + 1)]

    def product(self, n: int) -> int:
        """q_1 * q_2 * ... * q_n (empty product for n = 0)."""
        if self.const is not None:
            return self.const**n
        if self.spec is not None:
            return self.spec.q_product(1, n) if n >= 1 else 1
        out = 1
        for m in range(1, n + 1):
            out *= self.q(m)
        return out


class CantorExpansion:
    """A digit sequence paired with its base sequence."""

    def __init__(self, Q: BasicSequence, digit_fn: Callable[[int], int],
                 horizon: int | None = None, spec: ConstructionSpec | None = None):
        self.Q = Q
        self._digit_fn = digit_fn
        horizons = [h for h in (horizon, Q.horizon) if h is not None]
        self.horizon = min(horizons) if horizons else None
        self.spec = spec

    @classmethod
    def from_digits(cls, Q: BasicSequence, digits) -> "CantorExpansion":
        ds = digit_data(digits) if isinstance(digits, (DigitString,)) else tuple(digits)
        for n, d in enumerate(ds, start=1):
            q = Q.q(n)
            if not 0 <= d <= q - 1:
                raise InvalidSpecError(
                    f"digit {d} at position {n} outside allowed range 0..{q - 1}"
                )

        def fn(n: int, _ds=ds) -> int:
            return _ds[n - 1]

        return cls(Q, fn, horizon=len(ds))

    @classmethod
    def from_spec(cls, spec: ConstructionSpec) -> "CantorExpansion":
        return cls(BasicSequence.from_spec(spec), spec.digit_at,
                   horizon=spec.total_length, spec=spec)

    def digit(self, n: int) -> int:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"positions are 1-based integers, got {n}")
        if self.horizon is not None and n > self.horizon:
            raise NeedsMoreDigitsError(n, self.horizon)
        return self._digit_fn(n)

    def digits_prefix(self, n: int, cap: int | None = None) -> DigitString:
        limit = resolve_cap(cap)
        if n > limit:
            raise SizeLimitError(n, limit)
        if self.spec is not None:
            return self.spec.digits_prefix(n, cap=limit)
        ds = [self.digit(m) for m in range(1, n + 1)]
        if all(0 <= d <= 255 for d in ds):
            return DigitString(bytes(ds))
        return DigitString(tuple(ds))


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] inside [0, 1], exact endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


def digits_to_value(exp: CantorExpansion, n: int | None = None) -> RationalInterval:
    """Enclose the represented real using the first n digits.

    The partial sum is a lower bound; adding one full unit in the last
    place (the width 1/(q_1...q_n)) bounds every admissible tail from
    above, since the tail sum of maximal digits telescopes to exactly
    that width.
    """
    if n is None:
        if exp.horizon is None:
            raise ValueError("unbounded expansion: pass an explicit digit count n")
        n = exp.horizon
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be an integer >= 0, got {n}")
    num = 0
    den = 1
    for m in range(1, n + 1):
        q = exp.Q.q(m)
        num = num * q + exp.digit(m)
        den *= q
    return RationalInterval(Fraction(num, den), Fraction(num + 1, den))


def value_to_digits(x, Q: BasicSequence, n: int) -> DigitString:
    """First n digits of x in [0, 1) against base sequence Q (greedy).

    Each step peels off the integer part of r * q_m.  For rational x this
    is exact; the digit stream satisfies 0 <= E_m <= q_m - 1 automatically.
    """
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be an integer >= 0, got {n}")
    out = []
    r = x
    for m in range(1, n + 1):
        r *= Q.q(m)
        d = int(r)
        out.append(d)
        r -= d
    if all(d <= 255 for d in out):
        return DigitString(bytes(out))
    return DigitString(tuple(out))


def q_moment(Q: BasicSequence, n: int, k: int) -> Fraction:
    """Normalizer sum_{j=1..n} 1 / (q_j * q_{j+1} * ... * q_{j+k-1}).

    This is the expected count of any fixed length-k block in the first n
    positions under ideal behavior; block counts are compared against it.
    Needs base entries through position n + k - 1.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k}")
    if Q.const is not None:
        return Fraction(n, Q.const**k)
    if Q.spec is not None and k == 1:
        # segment-constant bases: sum runs of identical 1/q terms
        total = Fraction(0)
        for base, run in Q.spec.q_runs(n):
            total += Fraction(run, base)
        return total
    # rolling window of the product q_j ... q_{j+k-1}
    window = 1
    for m in range(1, k + 1):
        window *= Q.q(m)
    total = Fraction(1, window)
    for j in range(2, n + 1):
        window //= Q.q(j - 1)
        window *= Q.q(j + k - 1)
        total += Fraction(1, window)
    return total


def normality_ratio(exp: CantorExpansion, block, n: int) -> Fraction:
    """Observed-over-expected count of ``block`` in the first n digits.

    Ratio N(B, prefix) / q_moment(Q, n, k); tends to 1 along n exactly
    when the expansion treats B as often as the base sequence allows.
    """
    k = len(digit_data(block))
    prefix = exp.digits_prefix(n + k - 1)
    count = count_prefix_occurrences(block, prefix, n)
    return Fraction(count) / q_moment(exp.Q, n, k)


@dataclass(frozen=True)
class DivergenceRow:
    n: int
    moment: Fraction


def divergence_diagnostics(Q: BasicSequence, k: int, checkpoints: Iterable[int]) -> tuple[DivergenceRow, ...]:
    """Exact q_moment values at increasing checkpoints.

    Normality of order k is only meaningful when the normalizer diverges;
    the table shows the finite-horizon trajectory and asserts nothing
    about the limit.
    """
    rows = []
    for n in sorted(set(checkpoints)):
        rows.append(DivergenceRow(n, q_moment(Q, n, k)))
    return tuple(rows)


def orbit_point(exp: CantorExpansion, n: int, tail: int = 64) -> RationalInterval:
    """Enclose T_n(x) = (q_1 ... q_n) * x mod 1 from digits alone.

    The shifted value equals the tail series sum_{m>=1}
    E_{n+m} / (q_{n+1} ... q_{n+m}); truncating after ``tail`` terms gives
    a lower endpoint, and one unit in the last place covers the rest.
    Needs digits through position n + tail.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be an integer >= 0, got {n}")
    if not isinstance(tail, int) or tail < 1:
        raise ValueError(f"tail must be an integer >= 1, got {tail}")
    num = 0
    den = 1
    for m in range(n + 1, n + tail + 1):
        q = exp.Q.q(m)
        num = num * q + exp.digit(m)
        den *= q
    return RationalInterval(Fraction(num, den), Fraction(num + 1, den))


def orbit_points(exp: CantorExpansion, positions: Iterable[int], tail: int = 64) -> list[RationalInterval]:
    return [orbit_point(exp, n, tail=tail) for n in positions]


def salat_sequence(exp: CantorExpansion, n: int) -> tuple[Fraction, ...]:
    """Scaled digits E_m / q_m for m = 1..n, each in [0, 1)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be an integer >= 0, got {n}")
    return tuple(Fraction(exp.digit(m), exp.Q.q(m)) for m in range(1, n + 1))


def scaled_value_counts(spec: ConstructionSpec, n: int) -> dict[Fraction, int]:
    """Multiplicity table of the scaled digits E_m/q_m over positions m <= n.

    Works segment by segment in closed form (whole block copies tallied
    once, remainder digits individually), so n may be astronomically large
    as long as the construction itself reaches it.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    if n > spec.total_length:
        raise NeedsMoreDigitsError(n, spec.total_length)
    counts: dict[Fraction, int] = {}
    L = spec.boundaries
    for s, seg in enumerate(spec.segments, start=1):
        if L[s - 1] >= n:
            break
        if seg.length == 0:
            continue
        span = min(n, L[s]) - L[s - 1]
        full, rem = divmod(span, len(seg.block))
        raw = seg.block.digits
        if full:
            for (d,), c in tally_blocks(raw, 1, alphabet_size=seg.base).items():
                v = Fraction(d, seg.base)
                counts[v] = counts.get(v, 0) + full * c
        if rem:
            part = raw[:rem]
            if rem > 1024:
                for (d,), c in tally_blocks(part, 1, alphabet_size=seg.base).items():
                    v = Fraction(d, seg.base)
                    counts[v] = counts.get(v, 0) + c
            else:
                for d in part:
                    v = Fraction(d, seg.base)
                    counts[v] = counts.get(v, 0) + 1
    return counts


def salat_hypothesis(Q: BasicSequence, n: int) -> Fraction:
    """Mean reciprocal base (1/n) * sum_{m=1..n} 1/q_m, exact."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    if Q.const is not None:
        return Fraction(1, Q.const)
    if Q.spec is not None:
        total = Fraction(0)
        for base, run in Q.spec.q_runs(n):
            total += Fraction(run, base)
        return total / n
    return q_moment(Q, n, 1) / n
